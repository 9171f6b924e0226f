"""Skeleton graph of a step graphon and its edge-incidence matrix."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graphon import StepGraphon

__all__ = [
    "SkeletonGraph",
    "skeleton_graph",
    "incidence_matrix",
    "two_coloring",
    "bipartite_components",
    "has_odd_cycle",
    "all_components_nonbipartite",
    "exact_rank",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SkeletonGraph:
    """Undirected graph on nodes ``0..q-1`` with self-loops allowed.

    ``edges`` is the canonical column order of the incidence matrix: pairs
    ``(i, j)`` with ``i <= j`` sorted lexicographically, so the loop at ``i``
    comes first among the edges leaving ``i``.
    """

    q: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        canon = sorted({(min(i, j), max(i, j)) for i, j in self.edges})
        for i, j in canon:
            if not (0 <= i < self.q and 0 <= j < self.q):
                raise ValueError(f"edge {(i, j)} out of range for q={self.q}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def r(self) -> int:
        return len(self.edges)

    def loops(self) -> list[int]:
        return [i for i, j in self.edges if i == j]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.q)]
        for i, j in self.edges:
            if i != j:
                adj[i].append(j)
                adj[j].append(i)
        return adj

    @classmethod
    def from_support(cls, support: Sequence[Sequence[bool]]) -> "SkeletonGraph":
        q = len(support)
        return cls(q, tuple((i, j) for i in range(q) for j in range(i, q) if support[i][j]))


def skeleton_graph(g: StepGraphon) -> SkeletonGraph:
    """Edge ``(i, j)`` iff block ``(i, j)`` is nonzero; loops from diagonal blocks."""
    return SkeletonGraph.from_support([[v > 0 for v in row] for row in g.values])


def incidence_matrix(s: SkeletonGraph) -> list[list[Fraction]]:
    """``q x r`` matrix with probability-vector columns.

    A loop at ``i`` gives the column ``e_i``; an edge ``(i, j)`` gives
    ``(e_i + e_j) / 2``.
    """
    B = [[Fraction(0)] * s.r for _ in range(s.q)]
    for col, (i, j) in enumerate(s.edges):
        if i == j:
            B[i][col] = Fraction(1)
        else:
            B[i][col] = HALF
            B[j][col] = HALF
    return B


def two_coloring(s: SkeletonGraph) -> tuple[list[int], list[bool]]:
    """BFS 2-colouring of every component.

    Returns ``(component_id, component_is_bipartite)``; a component holding a
    self-loop is never bipartite.
    """
    adj = s.adjacency()
    has_loop = [False] * s.q
    for i in s.loops():
        has_loop[i] = True
    comp = [-1] * s.q
    color = [0] * s.q
    bipartite: list[bool] = []
    for root in range(s.q):
        if comp[root] != -1:
            continue
        cid = len(bipartite)
        ok = True
        comp[root] = cid
        queue = deque([root])
        while queue:
            u = queue.popleft()
            ok = ok and not has_loop[u]
            for v in adj[u]:
                if comp[v] == -1:
                    comp[v] = cid
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    ok = False
        bipartite.append(ok)
    return comp, bipartite


def bipartite_components(s: SkeletonGraph) -> int:
    return sum(two_coloring(s)[1])


def has_odd_cycle(s: SkeletonGraph) -> bool:
    """Condition A: some cycle of odd length, a self-loop counting as length 1."""
    if s.loops():
        return True
    return not all(two_coloring(s)[1])


def all_components_nonbipartite(s: SkeletonGraph) -> bool:
    """Every connected component carries an odd cycle.

    Equivalent to the incidence matrix having full row rank ``q``.
    """
    return not any(two_coloring(s)[1])


def exact_rank(rows: Iterable[Sequence]) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    M = [[Fraction(v) for v in row] for row in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][col]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank
