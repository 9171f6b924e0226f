"""Discretised conditions for general graphons.

The support of the saturated graphon is sampled on a uniform ``N x N`` grid.
The resulting pattern is read as the skeleton of an ``N``-block step graphon
with uniform block masses ``1/N``:

* surjectivity of the integral operator ``c -> int Wbar(s, t) c(s, t) dt``
  becomes full row rank of that skeleton's incidence matrix, i.e. every
  component of the pattern graph carries an odd cycle;
* membership of the constant function 1 in the interior of the operator's
  normalised nonnegative image becomes membership of ``(1/N, ..., 1/N)`` in
  the relative interior of the pattern's edge polytope.

For a step graphon sampled at a resolution whose grid contains every
breakpoint, both reductions are exact; elsewhere they are approximations and
are labelled as such.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import AsymmetricC, DimensionMismatch, UnalignedPartition
from .graphon import FamilyGraphon, Graphon, GridGraphon, Partition, StepGraphon, aligned_resolution
from .polytope import MembershipVerdict, Status, polytope_membership
from .skeleton import SkeletonGraph, all_components_nonbipartite, incidence_matrix

__all__ = [
    "SupportPattern",
    "ExtVerdict",
    "DEFAULT_RESOLUTIONS",
    "EXACT_LP_MAX_N",
    "discretize_support",
    "pattern_skeleton",
    "phi_discrete",
    "phi_matrix",
    "mu_sigma",
    "check_A_ext",
    "check_B_ext",
    "analyze_extended",
    "as_step",
]

DEFAULT_RESOLUTIONS = (8, 16, 32, 64)
DEFAULT_SUBSAMPLES = 3
# beyond this many grid cells the membership LP runs in floating point
EXACT_LP_MAX_N = 24


@dataclass(frozen=True)
class SupportPattern:
    resolution: int
    support: np.ndarray

    def __post_init__(self) -> None:
        s = np.asarray(self.support, dtype=bool)
        if s.shape != (self.resolution, self.resolution) or self.resolution < 1:
            raise DimensionMismatch(f"support must be {self.resolution}x{self.resolution}")
        if not np.array_equal(s, s.T):
            raise AsymmetricC("support pattern must be symmetric")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "support", s)


@dataclass(frozen=True)
class ExtVerdict:
    resolution: int
    a_ext: bool
    b_ext_status: Status
    b_ext_margin: Fraction | float | None
    exact: bool
    membership: MembershipVerdict | None = None

    def to_dict(self) -> dict:
        margin = self.b_ext_margin
        return {
            "resolution": self.resolution,
            "a_ext": self.a_ext,
            "b_ext_status": self.b_ext_status.value,
            "b_ext_margin": str(margin) if isinstance(margin, Fraction) else margin,
            "exact": self.exact,
            "membership": None if self.membership is None else self.membership.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExtVerdict":
        margin = d["b_ext_margin"]
        if isinstance(margin, str):
            margin = Fraction(margin)
        m = d.get("membership")
        return cls(int(d["resolution"]), bool(d["a_ext"]), Status(d["b_ext_status"]), margin, bool(d["exact"]),
                   None if m is None else MembershipVerdict.from_dict(m))


def as_step(g: Graphon) -> StepGraphon | None:
    """Exact step form of ``g`` when it has one."""
    if isinstance(g, StepGraphon):
        return g
    if isinstance(g, (GridGraphon, FamilyGraphon)):
        return g.to_step()
    return None


def discretize_support(g: Graphon, N: int, k: int = DEFAULT_SUBSAMPLES) -> SupportPattern:
    """Mark cell ``(i, j)`` when ``W`` is positive at one of ``k x k`` subcell midpoints."""
    if N < 1 or k < 1:
        raise ValueError("N and k must be positive")
    offsets = (np.arange(k) + 0.5) / k
    pts = ((np.arange(N)[:, None] + offsets[None, :]) / N).ravel()
    vals = np.asarray(g.evaluate(pts[:, None], pts[None, :]))
    cells = vals.reshape(N, k, N, k).max(axis=(1, 3)) > 0
    return SupportPattern(N, cells | cells.T)


def pattern_skeleton(p: SupportPattern) -> SkeletonGraph:
    return SkeletonGraph.from_support(p.support.tolist())


def phi_discrete(p: SupportPattern, c) -> np.ndarray:
    """``x_i = (1/N) sum_j p_ij c_ij`` for a symmetric step kernel ``c``."""
    c = np.asarray(c, dtype=float)
    N = p.resolution
    if c.shape != (N, N):
        raise DimensionMismatch(f"c must be {N}x{N}, got {c.shape}")
    if not np.array_equal(c, c.T):
        raise AsymmetricC("c must be symmetric")
    return (p.support * c).sum(axis=1) / N


def phi_matrix(p: SupportPattern) -> list[list[Fraction]]:
    """Exact matrix of the discretised operator on symmetric kernels.

    Unknowns are the supported cells ``(i, j)``, ``i <= j``; the column of
    an off-diagonal cell has ``1/N`` in rows ``i`` and ``j``.
    """
    N = p.resolution
    cells = [(i, j) for i in range(N) for j in range(i, N) if p.support[i, j]]
    M = [[Fraction(0)] * len(cells) for _ in range(N)]
    w = Fraction(1, N)
    for col, (i, j) in enumerate(cells):
        M[i][col] = w
        M[j][col] = w
    return M


def mu_sigma(x: Sequence, sigma: Partition | Sequence) -> list:
    """Integrate a grid step function over each interval of ``sigma``.

    ``x`` has one entry per grid cell of width ``1/len(x)``; every breakpoint
    must be a multiple of that width.  Rational input yields rational output.
    """
    part = sigma if isinstance(sigma, Partition) else Partition(tuple(sigma))
    N = len(x)
    idx = []
    for b in part.breakpoints:
        pos = b * N
        if pos.denominator != 1:
            raise UnalignedPartition(f"breakpoint {b} is not a multiple of 1/{N}")
        idx.append(int(pos))
    vals = [Fraction(v) if isinstance(v, int) else v for v in x]
    return [sum(vals[a:b]) / N for a, b in zip(idx, idx[1:])]


def _aligned(g: Graphon, N: int) -> bool:
    step = as_step(g)
    return step is not None and N % aligned_resolution(step) == 0


def check_A_ext(g: Graphon, N: int, k: int = DEFAULT_SUBSAMPLES) -> bool:
    """Every component of the discretised support graph carries an odd cycle."""
    return all_components_nonbipartite(pattern_skeleton(discretize_support(g, N, k)))


def check_B_ext(g: Graphon, N: int, k: int = DEFAULT_SUBSAMPLES, exact: bool | None = None) -> MembershipVerdict:
    """Uniform vector ``1/N`` against the edge polytope of the discretised support."""
    if exact is None:
        exact = N <= EXACT_LP_MAX_N
    s = pattern_skeleton(discretize_support(g, N, k))
    if s.r == 0:
        return MembershipVerdict(Status.OUTSIDE, separating_certificate=(Fraction(1),) * N, exact=exact)
    return polytope_membership(incidence_matrix(s), [Fraction(1, N)] * N, exact=exact)


def _analyze_one(g: Graphon, N: int, k: int, exact: bool | None) -> ExtVerdict:
    b = check_B_ext(g, N, k, exact)
    return ExtVerdict(N, check_A_ext(g, N, k), b.status, b.margin, _aligned(g, N), b)


def analyze_extended(
    g: Graphon,
    resolutions: Sequence[int] = DEFAULT_RESOLUTIONS,
    k: int = DEFAULT_SUBSAMPLES,
    exact: bool | None = None,
    workers: int = 1,
) -> list[ExtVerdict]:
    """Extended-condition verdicts at each resolution, in the order given."""
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda N: _analyze_one(g, N, k, exact), resolutions))
    return [_analyze_one(g, N, k, exact) for N in resolutions]
