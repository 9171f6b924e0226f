"""Max-min-coefficient linear program.

Solves::

    maximise  t
    subject   A @ lam == b,   lam >= t >= 0

either exactly, with a dense two-phase simplex over :class:`fractions.Fraction`
and Bland's anti-cycling rule, or in floating point through
:func:`scipy.optimize.linprog`.  Infeasibility is a result, not an error: it
comes with a Farkas vector ``y`` such that ``y @ A <= 0`` and ``y @ b > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import DimensionMismatch, UnboundedObjective

__all__ = ["LPResult", "simplex", "lp_max_min_coefficient", "lp_max_min_coefficient_float", "FLOAT_TOL"]

FLOAT_TOL = 1e-9

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    t: Fraction | float | None = None
    lam: tuple | None = None
    farkas: tuple | None = None


def _pivot(T: list[list[Fraction]], obj: list[Fraction], row: int, col: int) -> None:
    prow = T[row]
    p = prow[col]
    if p != ONE:
        prow[:] = [v / p for v in prow]
    for r, trow in enumerate(T):
        f = trow[col]
        if r != row and f:
            trow[:] = [a - f * b if b else a for a, b in zip(trow, prow)]
    f = obj[col]
    if f:
        obj[:] = [a - f * b if b else a for a, b in zip(obj, prow)]


def _run(T, obj, basis, allowed: int) -> bool:
    """Bland's-rule simplex on an objective row of reduced costs.

    Only the first ``allowed`` columns may enter.  Returns False when the
    objective is unbounded below.
    """
    while True:
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for r, trow in enumerate(T):
            a = trow[col]
            if a > 0:
                ratio = trow[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            return False
        _pivot(T, obj, best[1], col)
        basis[best[1]] = col


def simplex(M: Sequence[Sequence], b: Sequence, c: Sequence):
    """Exact two-phase simplex for ``min c @ z`` s.t. ``M @ z == b``, ``z >= 0``.

    Returns ``("optimal", z)`` or ``("infeasible", y)`` with ``y`` a Farkas
    vector for the original rows.  Raises :class:`UnboundedObjective`.
    """
    m = len(M)
    n = len(c)
    if len(b) != m or any(len(row) != n for row in M):
        raise DimensionMismatch("inconsistent LP dimensions")
    c = [Fraction(v) for v in c]
    sign = [ONE if Fraction(bi) >= 0 else -ONE for bi in b]
    # columns: n structural, m artificial, then rhs
    T = []
    for i in range(m):
        s = sign[i]
        row = [s * Fraction(v) for v in M[i]]
        row += [ONE if k == i else ZERO for k in range(m)]
        row.append(s * Fraction(b[i]))
        T.append(row)
    basis = [n + i for i in range(m)]

    # phase 1: minimise the sum of artificials
    obj = [ZERO] * n + [ZERO] * m + [ZERO]
    for j in range(n):
        obj[j] = -sum((T[i][j] for i in range(m)), ZERO)
    obj[-1] = -sum((T[i][-1] for i in range(m)), ZERO)
    _run(T, obj, basis, n + m)
    if obj[-1] < 0:
        y = tuple(sign[k] * (ONE - obj[n + k]) for k in range(m))
        return "infeasible", y

    # drive zero-level artificials out of the basis; drop redundant rows
    r = 0
    while r < len(T):
        if basis[r] >= n:
            col = next((j for j in range(n) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, obj, r, col)
            basis[r] = col
        r += 1

    # phase 2
    obj = list(c) + [ZERO] * m + [ZERO]
    for r, bj in enumerate(basis):
        cb = c[bj]
        if cb:
            obj = [a - cb * v for a, v in zip(obj, T[r])]
    if not _run(T, obj, basis, n):
        raise UnboundedObjective("objective is unbounded")
    z = [ZERO] * n
    for r, bj in enumerate(basis):
        z[bj] = T[r][-1]
    return "optimal", tuple(z)


def lp_max_min_coefficient(A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Exact optimum of ``max t`` s.t. ``A lam = b``, ``lam >= t >= 0``.

    Substitutes ``lam = mu + t`` with ``mu >= 0`` so the problem is in
    standard form with the extra column ``A @ 1`` for ``t``.
    """
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    if len(A) != len(b):
        raise DimensionMismatch(f"A has {len(A)} rows but b has length {len(b)}")
    r = len(A[0]) if A else 0
    M = [row + [sum(row, ZERO)] for row in A]
    c = [ZERO] * r + [-ONE]
    status, z = simplex(M, b, c)
    if status == "infeasible":
        return LPResult(False, farkas=z)
    t = z[-1]
    lam = tuple(mu + t for mu in z[:-1])
    return LPResult(True, t=t, lam=lam)


def lp_max_min_coefficient_float(A, b, tol: float = FLOAT_TOL) -> LPResult:
    """Floating-point counterpart using HiGHS.

    The separating vector for infeasible instances comes from the auxiliary
    program ``max y @ b - s`` s.t. ``y @ A_j <= s``, ``-1 <= y <= 1``.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    q, r = A.shape
    if b.shape != (q,):
        raise DimensionMismatch(f"A has {q} rows but b has shape {b.shape}")
    # variables: lam (r), t
    cost = np.zeros(r + 1)
    cost[-1] = -1.0
    A_eq = np.hstack([A, np.zeros((q, 1))])
    A_ub = np.hstack([-np.eye(r), np.ones((r, 1))])
    res = linprog(cost, A_ub=A_ub, b_ub=np.zeros(r), A_eq=A_eq, b_eq=b,
                  bounds=[(0, None)] * (r + 1), method="highs")
    if res.status == 3:
        raise UnboundedObjective("objective is unbounded")
    if res.status == 0:
        lam = res.x[:r]
        if np.max(np.abs(A @ lam - b), initial=0.0) <= tol:
            t = float(res.x[-1])
            return LPResult(True, t=t if t > tol else 0.0, lam=tuple(lam.tolist()))
    # separating hyperplane: variables y (q), s
    cost = np.concatenate([-b, [1.0]])
    A_ub = np.hstack([A.T, -np.ones((r, 1))])
    sep = linprog(cost, A_ub=A_ub, b_ub=np.zeros(r),
                  bounds=[(-1, 1)] * q + [(None, None)], method="highs")
    y = sep.x[:q] if sep.status == 0 else np.zeros(q)
    return LPResult(False, farkas=tuple(y.tolist()))
