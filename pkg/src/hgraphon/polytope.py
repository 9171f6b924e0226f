"""Membership of a point in the edge polytope and in its relative interior.

The relative interior of the convex hull of finitely many points is the set of
their strictly positive convex combinations.  Maximising the smallest
coefficient of a convex combination therefore classifies a point as
``outside`` (infeasible), ``boundary`` (optimum 0) or ``interior``
(optimum > 0), in any affine dimension and without special cases.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch
from .graphon import StepGraphon, concentration_vector
from .lp import FLOAT_TOL, lp_max_min_coefficient, lp_max_min_coefficient_float
from .skeleton import incidence_matrix, skeleton_graph

__all__ = ["Status", "MembershipVerdict", "polytope_membership", "step_membership", "verify_verdict"]


class Status(str, Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MembershipVerdict:
    status: Status
    certificate: tuple | None = None
    margin: Fraction | float | None = None
    separating_certificate: tuple | None = None
    exact: bool = True

    def to_dict(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v

        d = asdict(self)
        d["status"] = self.status.value
        for key in ("certificate", "separating_certificate"):
            if d[key] is not None:
                d[key] = [enc(v) for v in d[key]]
        d["margin"] = enc(d["margin"])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MembershipVerdict":
        exact = d.get("exact", True)

        def dec(v):
            return Fraction(v) if exact else float(v)

        def vec(key):
            return None if d.get(key) is None else tuple(dec(v) for v in d[key])

        return cls(
            Status(d["status"]),
            certificate=vec("certificate"),
            margin=None if d.get("margin") is None else dec(d["margin"]),
            separating_certificate=vec("separating_certificate"),
            exact=exact,
        )


def polytope_membership(B: Sequence[Sequence], x: Sequence, exact: bool = True) -> MembershipVerdict:
    """Classify ``x`` against ``conv`` of the columns of ``B``.

    With ``exact=False`` the LP runs in floating point and a margin at or
    below ``1e-9`` counts as zero.
    """
    if len(B) != len(x):
        raise DimensionMismatch(f"B has {len(B)} rows but x has length {len(x)}")
    if len(B) == 0 or len(B[0]) == 0:
        raise DimensionMismatch("the polytope needs at least one generator")
    solve = lp_max_min_coefficient if exact else lp_max_min_coefficient_float
    res = solve(B, x)
    if not res.feasible:
        return MembershipVerdict(Status.OUTSIDE, separating_certificate=res.farkas, exact=exact)
    status = Status.INTERIOR if res.t > 0 else Status.BOUNDARY
    return MembershipVerdict(status, certificate=res.lam, margin=res.t, exact=exact)


def step_membership(g: StepGraphon, exact: bool = True) -> MembershipVerdict:
    """Concentration vector of ``g`` against the edge polytope of its skeleton."""
    s = skeleton_graph(g)
    x = concentration_vector(g)
    if s.r == 0:
        # empty skeleton: the polytope is empty; y = 1 separates trivially
        return MembershipVerdict(Status.OUTSIDE, separating_certificate=(Fraction(1),) * s.q, exact=exact)
    return polytope_membership(incidence_matrix(s), x, exact=exact)


def verify_verdict(B: Sequence[Sequence], x: Sequence, v: MembershipVerdict, tol: float = FLOAT_TOL) -> bool:
    """Independent check of a verdict's certificate.

    Exact verdicts are checked in rational arithmetic; float verdicts within
    ``tol``.
    """
    q = len(B)
    r = len(B[0]) if q else 0
    if v.exact:
        B = [[Fraction(e) for e in row] for row in B]
        x = [Fraction(e) for e in x]
        tol = 0
    if v.status is Status.OUTSIDE:
        y = v.separating_certificate
        if y is None or len(y) != q:
            return False
        yx = sum(y[i] * x[i] for i in range(q))
        best = max(sum(y[i] * B[i][j] for i in range(q)) for j in range(r)) if r else yx - 1
        return yx > best + tol
    lam = v.certificate
    if lam is None or len(lam) != r:
        return False
    if any(l < -tol for l in lam) or abs(sum(lam) - 1) > tol:
        return False
    if any(abs(sum(B[i][j] * lam[j] for j in range(r)) - x[i]) > tol for i in range(q)):
        return False
    if v.status is Status.INTERIOR:
        return min(lam) > tol and min(lam) == v.margin if v.exact else min(lam) > tol
    return True
