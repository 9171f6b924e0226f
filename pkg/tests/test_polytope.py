import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog, lsq_linear

from hgraphon import (
    MembershipVerdict,
    SkeletonGraph,
    Status,
    incidence_matrix,
    lp_max_min_coefficient,
    polytope_membership,
    refine_partition,
    skeleton_graph,
    step_membership,
    validate_step_graphon,
)
from hgraphon.errors import DimensionMismatch, UnboundedObjective
from hgraphon.lp import lp_max_min_coefficient_float, simplex
from hgraphon.polytope import verify_verdict

from conftest import FIXTURES, three_block, random_step_graphon, two_block

F = Fraction
H = F(1, 2)


def test_three_block_interior(tb):
    B = incidence_matrix(skeleton_graph(tb))
    v = polytope_membership(B, (F(3, 10), F(3, 10), F(2, 5)))
    assert v.status is Status.INTERIOR
    assert v.margin > 0 and min(v.certificate) == v.margin
    assert verify_verdict(B, (F(3, 10), F(3, 10), F(2, 5)), v)


def test_three_block_hand_certificate(tb):
    B = incidence_matrix(skeleton_graph(tb))
    lam = (F(15, 100), F(3, 10), F(3, 10), F(1, 4))
    hand = MembershipVerdict(Status.INTERIOR, certificate=lam, margin=min(lam))
    assert verify_verdict(B, (F(3, 10), F(3, 10), F(2, 5)), hand)


def test_single_point_polytope():
    v = polytope_membership([[1]], [1])
    assert v.status is Status.INTERIOR and v.margin == 1 and v.certificate == (1,)


def test_outside_with_farkas():
    B = [[1, H], [0, H]]
    x = (F(3, 10), F(7, 10))
    v = polytope_membership(B, x)
    assert v.status is Status.OUTSIDE
    assert v.certificate is None and v.margin is None
    y = v.separating_certificate
    assert y[0] * x[0] + y[1] * x[1] > max(y[0] * B[0][j] + y[1] * B[1][j] for j in range(2))
    assert verify_verdict(B, x, v)


def test_boundary():
    # x = (1/2, 1/2) is the vertex (e1+e2)/2 of conv{e1, (e1+e2)/2}
    v = polytope_membership([[1, H], [0, H]], (H, H))
    assert v.status is Status.BOUNDARY and v.margin == 0
    assert v.certificate == (0, 1)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        polytope_membership([[1, H], [0, H]], (1,))


def test_lp_examples():
    r = lp_max_min_coefficient([[1]], [1])
    assert r.feasible and r.t == 1 and r.lam == (1,)
    assert not lp_max_min_coefficient([[1, H], [0, H]], [F(3, 10), F(7, 10)]).feasible


def test_lp_unbounded_signalled():
    # columns summing to zero let t grow without bound
    with pytest.raises(UnboundedObjective):
        lp_max_min_coefficient([[1, -1]], [0])


def test_simplex_redundant_rows():
    # duplicated equality row must be dropped after phase 1
    status, z = simplex([[1, 1], [1, 1]], [1, 1], [1, 2])
    assert status == "optimal" and z == (1, 0)


def _random_instance(rng):
    q = rng.randint(2, 5)
    s = SkeletonGraph(q, tuple((i, j) for i in range(q) for j in range(i, q) if rng.random() < 0.4))
    if s.r == 0:
        s = SkeletonGraph(q, ((0, 0),))
    cuts = sorted(rng.sample(range(1, 20), q - 1))
    pts = [0] + cuts + [20]
    x = tuple(F(b - a, 20) for a, b in zip(pts, pts[1:]))
    return incidence_matrix(s), x


@pytest.mark.parametrize("seed", range(150))
def test_exact_lp_matches_highs(seed):
    B, x = _random_instance(random.Random(seed))
    A = np.array(B, dtype=float)
    q, r = A.shape
    # independent formulation: variables (lam, t), lam_j - t >= 0
    res = linprog(
        np.r_[np.zeros(r), -1.0],
        A_ub=np.hstack([-np.eye(r), np.ones((r, 1))]), b_ub=np.zeros(r),
        A_eq=np.hstack([A, np.zeros((q, 1))]), b_eq=np.array(x, dtype=float),
        bounds=[(0, None)] * (r + 1), method="highs",
    )
    ours = lp_max_min_coefficient(B, x)
    assert ours.feasible == (res.status == 0)
    if ours.feasible:
        assert float(ours.t) == pytest.approx(-res.fun, abs=1e-9)
        v = polytope_membership(B, x)
        assert verify_verdict(B, x, v)
    else:
        y = ours.farkas
        assert all(sum(y[i] * B[i][j] for i in range(q)) <= 0 for j in range(r))
        assert sum(y[i] * x[i] for i in range(q)) > 0


@pytest.mark.parametrize("seed", range(150))
def test_float_mode_agrees(seed):
    B, x = _random_instance(random.Random(seed))
    ve, vf = polytope_membership(B, x), polytope_membership(B, x, exact=False)
    assert ve.status is vf.status
    assert verify_verdict(B, x, vf)
    if ve.margin is not None:
        assert float(ve.margin) == pytest.approx(vf.margin, abs=1e-9)


@pytest.mark.parametrize("name", ["three_block", "bipartite", "outside", "boundary", "complete"])
def test_float_mode_agrees_on_fixtures(name):
    from hgraphon import load_graphon
    from hgraphon.extension import as_step

    g = as_step(load_graphon(FIXTURES / f"{name}.json"))
    assert step_membership(g).status is step_membership(g, exact=False).status


def _skeletons_up_to(q):
    slots = [(i, j) for i in range(q) for j in range(i, q)]
    for mask in range(1, 1 << len(slots)):
        yield SkeletonGraph(q, tuple(s for k, s in enumerate(slots) if mask >> k & 1))


def _oracle(V, x, delta=0.01, tol=1e-7):
    """'interior', 'outside' or None (within delta of the relative boundary).

    On the simplex plane the cone of the columns meets the plane exactly in
    their convex hull, and the cone distance bounds the hull distance below.  scipy's nnls is avoided: 1.15 returns wrong
    residuals on some of these instances.
    """
    def dist(p):
        w = lsq_linear(V, p, bounds=(0, np.inf), method="bvls", tol=1e-14).x
        return np.linalg.norm(V @ w - p)

    if dist(x) > delta:
        return "outside"
    D = V[:, 1:] - V[:, :1]
    if D.shape[1]:
        U, sv, _ = np.linalg.svd(D, full_matrices=False)
        U = U[:, sv > 1e-12]
    else:
        U = np.zeros((len(x), 0))
    probes = [x] + [x + sgn * delta * U[:, k] for k in range(U.shape[1]) for sgn in (1, -1)]
    if all(dist(p) < tol for p in probes):
        return "interior"
    return None


@pytest.mark.parametrize("q", [1, 2, 3])
def test_grid_oracle_agreement(q):
    rng = random.Random(q)
    grid = [c for c in itertools.product(range(201), repeat=q) if sum(c) == 200]
    checked = 0
    for s in _skeletons_up_to(q):
        B = incidence_matrix(s)
        V = np.array(B, dtype=float)
        pts = grid if len(grid) <= 201 else rng.sample(grid, 120)
        for c in pts:
            x = [F(v, 200) for v in c]
            expected = _oracle(V, np.array(c, dtype=float) / 200)
            if expected is None:
                continue
            status = polytope_membership(B, x).status
            assert status.value == expected, (s.edges, c)
            checked += 1
    assert checked >= {1: 1, 2: 50, 3: 500}[q]


@pytest.mark.parametrize("seed", range(100))
def test_refinement_invariance(seed):
    rng = random.Random(seed)
    g = random_step_graphon(rng)
    h = refine_partition(g, [F(rng.randint(1, 19), 20) for _ in range(rng.randint(1, 3))])
    assert step_membership(g).status is step_membership(h).status


@pytest.mark.parametrize("seed", range(30))
def test_scaling_invariance(seed):
    rng = random.Random(seed)
    g = random_step_graphon(rng)
    c = F(rng.randint(1, 9), 10)
    scaled = validate_step_graphon(g.sigma, [[v * c for v in row] for row in g.values])
    assert step_membership(g).status is step_membership(scaled).status


def test_named_regimes():
    assert step_membership(three_block()).status is Status.INTERIOR
    assert step_membership(two_block(0, 1, 0)).status is Status.OUTSIDE
    v = step_membership(two_block(1, 1, 0))
    assert v.status is Status.OUTSIDE
    assert step_membership(two_block(1, 1, 0, cut="0.5")).status is Status.BOUNDARY
    assert step_membership(validate_step_graphon([0, 1], [[0]])).status is Status.OUTSIDE


def test_verdict_dict_roundtrip(tb):
    for v in (step_membership(tb), step_membership(two_block(1, 1, 0)),
              step_membership(tb, exact=False)):
        assert MembershipVerdict.from_dict(v.to_dict()) == v
