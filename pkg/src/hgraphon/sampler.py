"""Sampling ``G_n ~ W`` and building the directed version of a sample.

Random numbers come from a counter-based stream: the ``k``-th uniform of
stream ``s`` under seed ``seed`` is the ``k``-th double produced by numpy's
``Philox`` generator with key ``(seed, s)``.  Node coordinates use stream 0;
the uniform deciding pair ``(i, j)``, ``i < j``, sits in stream 1 at the
pair's position in lexicographic order.  Any block of pairs can therefore be
drawn independently of the others, and the sample does not depend on how the
work is chunked.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import GraphFormatError, InvalidN
from .graphon import Graphon

__all__ = [
    "SampledGraph",
    "DirectedGraph",
    "uniform_stream",
    "sample_graph",
    "directify",
    "write_graph",
    "write_digraph",
    "write_coordinates",
    "read_graph_file",
]

COORD_STREAM = 0
PAIR_STREAM = 1
_MASK64 = (1 << 64) - 1
# pairs per block when drawing edge uniforms
_CHUNK = 1 << 20


def uniform_stream(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Uniforms ``start, ..., start + count - 1`` of a keyed Philox stream."""
    bg = np.random.Philox(key=[seed & _MASK64, stream & _MASK64])
    block, offset = divmod(start, 4)
    if block:
        bg.advance(block)
    return np.random.Generator(bg).random(count + offset)[offset:]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SampledGraph:
    """Undirected simple graph with node coordinates.

    ``edges`` is an ``(m, 2)`` integer array of pairs ``i < j`` in
    lexicographic order.
    """

    n: int
    coordinates: np.ndarray
    edges: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if np.any(edges[:, 0] >= edges[:, 1]):
                raise GraphFormatError("edges must be pairs i < j (no self-loops)")
            if edges.min() < 0 or edges.max() >= self.n:
                raise GraphFormatError("edge endpoint out of range")
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            edges = edges[order]
            if np.any(np.all(edges[1:] == edges[:-1], axis=1)):
                raise GraphFormatError("duplicate edge")
        object.__setattr__(self, "edges", _readonly(edges))
        coords = np.asarray(self.coordinates, dtype=float)
        object.__setattr__(self, "coordinates", _readonly(coords))

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class DirectedGraph:
    """Digraph on vertices ``0..n-1``; ``arcs`` is a sorted ``(m, 2)`` array."""

    n: int
    arcs: np.ndarray

    def __post_init__(self) -> None:
        arcs = np.asarray(self.arcs, dtype=np.int64).reshape(-1, 2)
        if arcs.size and (arcs.min() < 0 or arcs.max() >= self.n):
            raise GraphFormatError("arc endpoint out of range")
        if arcs.size:
            keys = np.unique(arcs[:, 0] * self.n + arcs[:, 1])
            arcs = np.stack(np.divmod(keys, self.n), axis=1)
        object.__setattr__(self, "arcs", _readonly(arcs))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "DirectedGraph":
        return cls(n, np.array(list(arcs), dtype=np.int64).reshape(-1, 2))

    def arc_set(self) -> set[tuple[int, int]]:
        return set(map(tuple, self.arcs.tolist()))

    def out_neighbors(self) -> list[list[int]]:
        """Sorted out-neighbour lists."""
        bounds = np.searchsorted(self.arcs[:, 0], np.arange(self.n + 1))
        heads = self.arcs[:, 1].tolist()
        return [heads[a:b] for a, b in zip(bounds[:-1].tolist(), bounds[1:].tolist())]

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 1], minlength=self.n) if self.arcs.size else np.zeros(self.n, int)

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.arcs[:, 0], minlength=self.n) if self.arcs.size else np.zeros(self.n, int)


def sample_graph(g: Graphon, n: int, seed: int) -> SampledGraph:
    """Draw ``G_n ~ W``.

    Coordinates ``x_1..x_n`` are i.i.d. uniform on ``[0, 1)``; each pair
    ``i < j`` becomes an edge when its uniform is below ``W(x_i, x_j)``.
    Labels follow sampling order (coordinates are not sorted).
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise InvalidN(f"n must be a positive integer, got {n!r}")
    n = int(n)
    x = uniform_stream(seed, COORD_STREAM, 0, n)
    chunks = []
    # row i owns pairs (i, i+1..n-1), starting at linear index i*n - i*(i+1)/2
    row = 0
    while row < n - 1:
        stop, count = row, 0
        while stop < n - 1 and (count == 0 or count + (n - 1 - stop) <= _CHUNK):
            count += n - 1 - stop
            stop += 1
        start = row * n - row * (row + 1) // 2
        u = uniform_stream(seed, PAIR_STREAM, start, count)
        ii = np.concatenate([np.full(n - 1 - r, r) for r in range(row, stop)])
        jj = np.concatenate([np.arange(r + 1, n) for r in range(row, stop)])
        keep = u < g.evaluate(x[ii], x[jj])
        chunks.append(np.stack([ii[keep], jj[keep]], axis=1))
        row = stop
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return SampledGraph(n, x, edges, seed)


def directify(g: SampledGraph) -> DirectedGraph:
    """Replace each undirected edge by the two opposite arcs."""
    e = g.edges
    return DirectedGraph(g.n, np.concatenate([e, e[:, ::-1]]))


def write_graph(g: SampledGraph, path: str | Path) -> None:
    """``n m`` header then one ``i j`` line per edge (0-indexed, ``i < j``)."""
    lines = [f"{g.n} {g.m}"] + [f"{i} {j}" for i, j in g.edges.tolist()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def write_digraph(d: DirectedGraph, path: str | Path) -> None:
    lines = [f"d {d.n} {len(d.arcs)}"] + [f"{i} {j}" for i, j in d.arcs.tolist()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def write_coordinates(g: SampledGraph, path: str | Path) -> None:
    lines = [f"{i} {x!r}" for i, x in enumerate(g.coordinates.tolist())]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="ascii")


def read_graph_file(path: str | Path) -> SampledGraph | DirectedGraph:
    """Read either graph format; undirected files give a :class:`SampledGraph`."""
    text = Path(path).read_text(encoding="ascii")
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise GraphFormatError(f"{path}: empty graph file")
    head, body = rows[0], rows[1:]
    directed = head[0] == "d"
    if directed:
        head = head[1:]
    try:
        n, m = (int(t) for t in head)
        pairs = [(int(a), int(b)) for a, b in body]
    except ValueError as exc:
        raise GraphFormatError(f"{path}: malformed line ({exc})") from exc
    if n < 1:
        raise GraphFormatError(f"{path}: node count must be positive")
    if len(pairs) != m:
        raise GraphFormatError(f"{path}: header promises {m} lines, found {len(pairs)}")
    if directed:
        return DirectedGraph.from_arcs(n, pairs)
    if any(i >= j for i, j in pairs):
        raise GraphFormatError(f"{path}: undirected edges must be written as i < j")
    return SampledGraph(n, np.full(n, np.nan), np.array(pairs, dtype=np.int64).reshape(-1, 2))
