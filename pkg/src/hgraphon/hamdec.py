"""Hamiltonian decompositions of digraphs.

A digraph on ``n`` vertices splits into vertex-disjoint directed cycles
covering every vertex exactly when there is a permutation ``pi`` with every
``i -> pi(i)`` an arc, i.e. when the bipartite graph (out-copies on the left,
in-copies on the right) has a perfect matching.  Matching uses Hopcroft-Karp
with neighbours scanned in increasing index order, so the decomposition
returned for a given digraph is deterministic.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NTooLargeForOracle
from .sampler import DirectedGraph

__all__ = [
    "HamiltonianDecomposition",
    "hopcroft_karp",
    "max_bipartite_matching",
    "degree_deficient_vertex",
    "has_hamiltonian_decomposition",
    "verify_decomposition",
    "brute_force_hd",
    "BRUTE_FORCE_MAX_N",
]

BRUTE_FORCE_MAX_N = 9
_INF = float("inf")


@dataclass(frozen=True)
class HamiltonianDecomposition:
    cycles: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cycles)


def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Maximum matching; returns ``match[u]`` (right vertex or -1) per left vertex."""
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    for u in range(n_left):
        for v in adj[u]:
            if match_r[v] == -1:
                match_l[u] = v
                match_r[v] = u
                break

    while True:
        dist = [_INF] * n_left
        queue = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_l

        ptr = [0] * n_left
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            stack, via = [root], []
            while stack:
                u = stack[-1]
                nbrs = adj[u]
                pushed = False
                while ptr[u] < len(nbrs):
                    v = nbrs[ptr[u]]
                    ptr[u] += 1
                    w = match_r[v]
                    if w == -1:
                        via.append(v)
                        for a, b in zip(stack, via):
                            match_l[a] = b
                            match_r[b] = a
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(v)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[u] = _INF
                    stack.pop()
                    if via:
                        via.pop()


def max_bipartite_matching(n: int, arcs: Iterable[tuple[int, int]]) -> dict[int, int]:
    """Maximum matching between out-roles and in-roles of ``n`` vertices.

    Returns a partial map ``left -> right``; it is perfect iff it has ``n``
    entries.
    """
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in sorted(set((int(a), int(b)) for a, b in arcs)):
        adj[a].append(b)
    match = hopcroft_karp(adj, n)
    return {u: v for u, v in enumerate(match) if v != -1}


def degree_deficient_vertex(d: DirectedGraph) -> tuple[int, str] | None:
    """First vertex with in- or out-degree zero, with the deficient side."""
    indeg, outdeg = d.in_degrees(), d.out_degrees()
    bad = np.flatnonzero((indeg == 0) | (outdeg == 0))
    if bad.size == 0:
        return None
    v = int(bad[0])
    return v, ("in" if indeg[v] == 0 else "out")


def _cycles_of(perm: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        v = start
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = perm[v]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def has_hamiltonian_decomposition(d: DirectedGraph) -> HamiltonianDecomposition | None:
    """A decomposition of ``d`` into disjoint cycles covering all vertices, or None."""
    if d.n < 1 or degree_deficient_vertex(d) is not None:
        return None
    match = hopcroft_karp(d.out_neighbors(), d.n)
    if -1 in match:
        return None
    return HamiltonianDecomposition(_cycles_of(match))


def verify_decomposition(d: DirectedGraph, dec: HamiltonianDecomposition) -> bool:
    """Disjointness, coverage and arc membership of every cycle step."""
    arcs = d.arc_set()
    seen: set[int] = set()
    for cyc in dec.cycles:
        if not cyc:
            return False
        for k, v in enumerate(cyc):
            if v in seen or not 0 <= v < d.n:
                return False
            seen.add(v)
            if (v, cyc[(k + 1) % len(cyc)]) not in arcs:
                return False
    return len(seen) == d.n


def brute_force_hd(d: DirectedGraph) -> bool:
    """Exhaustive search over all permutations; only for ``n <= 9``."""
    if d.n > BRUTE_FORCE_MAX_N:
        raise NTooLargeForOracle(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {d.n}")
    arcs = d.arc_set()
    return any(
        all((i, p) in arcs for i, p in enumerate(perm))
        for perm in itertools.permutations(range(d.n))
    )
