import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgraphon import (
    FamilyGraphon,
    GridGraphon,
    concentration_vector,
    evaluate,
    graphon_from_dict,
    graphon_to_dict,
    load_graphon,
    refine_partition,
    saturate,
    validate_step_graphon,
)
from hgraphon.errors import (
    AsymmetricValues,
    CoordinateOutOfRange,
    DimensionMismatch,
    EndpointsNot01,
    HGraphonError,
    NonMonotonePartition,
    UnknownFamily,
    ValueOutOfRange,
)
from hgraphon.graphon import aligned_resolution

from conftest import FIXTURES, three_block, random_step_graphon


def test_three_block_is_valid(tb):
    assert tb.q == 3
    assert tb.sigma == (0, Fraction(3, 10), Fraction(3, 5), 1)


def test_constant_one_block():
    g = validate_step_graphon([0, 1], [[1]])
    assert g.q == 1
    assert evaluate(g, 0.2, 0.9) == 1.0


@pytest.mark.parametrize(
    "sigma, values, exc",
    [
        (["0", "0.5", "0.4", "1"], [[0] * 3] * 3, NonMonotonePartition),
        (["0", "0.5", "0.5", "1"], [[0] * 3] * 3, NonMonotonePartition),
        (["0.1", "1"], [[0]], EndpointsNot01),
        (["0", "0.9"], [[0]], EndpointsNot01),
        (["0", "0.5", "1"], [[0, 1], [0, 0]], AsymmetricValues),
        (["0", "0.5", "1"], [[0, 2], [2, 0]], ValueOutOfRange),
        (["0", "0.5", "1"], [[0, -0.1], [-0.1, 0]], ValueOutOfRange),
        (["0", "0.5", "1"], [[0, 1, 0], [1, 0, 0]], DimensionMismatch),
        (["0", "0.5", "1"], [[0]], DimensionMismatch),
    ],
)
def test_validation_errors(sigma, values, exc):
    with pytest.raises(exc):
        validate_step_graphon(sigma, values)


def test_decimal_strings_are_exact():
    g = validate_step_graphon(["0", "0.1", "0.3", "1"], [[0] * 3] * 3)
    assert sum(concentration_vector(g)) == 1
    # floats are read through their decimal repr
    h = validate_step_graphon([0, 0.1, 0.3, 1], [[0] * 3] * 3)
    assert h.sigma == g.sigma


@pytest.mark.parametrize(
    "sigma, expected",
    [
        (["0", "0.3", "0.6", "1"], (Fraction(3, 10), Fraction(3, 10), Fraction(2, 5))),
        (["0", "1"], (Fraction(1),)),
        (["0", "0.25", "0.5", "0.75", "1"], (Fraction(1, 4),) * 4),
    ],
)
def test_concentration_vector(sigma, expected):
    q = len(sigma) - 1
    g = validate_step_graphon(sigma, [[0] * q] * q)
    x = concentration_vector(g)
    assert x == expected
    assert sum(x) == 1 and all(v > 0 for v in x)


def test_evaluate_block_lookup(tb):
    # (0.1, 0.4) lies in block (1, 2)
    assert evaluate(tb, 0.1, 0.4) == 0.7
    assert evaluate(tb, 0.4, 0.1) == 0.7
    # half-open cells: 0.3 belongs to the second block, 1.0 to the last
    assert evaluate(tb, 0.3, 0.3) == 0.0
    assert evaluate(tb, 0.29999, 0.29999) == 1.0
    assert evaluate(tb, 1.0, 1.0) == 1.0
    assert evaluate(tb, 0.0, 0.0) == 1.0


def test_family_values():
    assert FamilyGraphon("product").evaluate(0.5, 0.5) == 0.25
    assert FamilyGraphon("mean").evaluate(0.2, 0.6) == pytest.approx(0.4)
    assert FamilyGraphon("constant p", (("p", "0.3"),)).evaluate(0.1, 0.9) == 0.3
    with pytest.raises(UnknownFamily):
        FamilyGraphon("sine")
    with pytest.raises(HGraphonError):
        FamilyGraphon("constant")


@pytest.mark.parametrize("x, y", [(-0.1, 0.5), (0.5, 1.01), (float("nan"), 0.2)])
def test_coordinate_out_of_range(tb, x, y):
    with pytest.raises(CoordinateOutOfRange):
        evaluate(tb, x, y)


def _graphons():
    rng = random.Random(3)
    return [
        three_block(),
        random_step_graphon(rng),
        GridGraphon(((0, "0.5", 1), ("0.5", "0.2", 0), (1, 0, "0.9"))),
        FamilyGraphon("product"),
        FamilyGraphon("mean"),
        FamilyGraphon("constant", (("p", "0.4"),)),
    ]


@pytest.mark.parametrize("g", _graphons(), ids=lambda g: g.kind)
def test_evaluate_symmetry_and_range(g):
    rng = np.random.default_rng(0)
    x, y = rng.random(10_000), rng.random(10_000)
    a, b = g.evaluate(x, y), g.evaluate(y, x)
    assert np.array_equal(a, b)
    assert np.all((a >= 0) & (a <= 1))


def test_saturate(tb):
    s = saturate(tb)
    assert s.partition == tb.partition
    assert [[int(v) for v in row] for row in s.values] == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    half = FamilyGraphon("constant", (("p", "0.5"),))
    assert saturate(half).evaluate(0.3, 0.7) == 1.0
    assert saturate(s) == s
    prod = saturate(FamilyGraphon("product"))
    assert prod.evaluate(0.0, 0.5) == 0.0 and prod.evaluate(0.01, 0.5) == 1.0


@pytest.mark.parametrize("g", _graphons(), ids=lambda g: g.kind)
def test_saturate_idempotent(g):
    once = saturate(g)
    twice = saturate(once)
    rng = np.random.default_rng(1)
    x, y = rng.random(2000), rng.random(2000)
    assert np.array_equal(once.evaluate(x, y), twice.evaluate(x, y))
    assert set(np.unique(once.evaluate(x, y))) <= {0.0, 1.0}


@settings(max_examples=60, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    extra=st.lists(st.integers(1, 39), min_size=1, max_size=4),
    pts=st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=1, max_size=50),
)
def test_refinement_preserves_values(seed, extra, pts):
    g = random_step_graphon(random.Random(seed))
    h = refine_partition(g, [Fraction(k, 40) for k in extra])
    assert h.partition.refines(g.partition)
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    assert np.array_equal(g.evaluate(x, y), h.evaluate(x, y))


def test_refine_partition_duplicates_blocks(tb):
    h = refine_partition(tb, ["0.1", "0.8"])
    assert h.sigma == (0, Fraction(1, 10), Fraction(3, 10), Fraction(3, 5), Fraction(4, 5), 1)
    assert h.values[0][1] == 1 and h.values[1][2] == Fraction(7, 10) and h.values[3][4] == 1


def test_aligned_resolution(tb):
    assert aligned_resolution(tb) == 10
    assert aligned_resolution(validate_step_graphon(["0", "1/3", "0.5", "1"], [[0] * 3] * 3)) == 6


def test_grid_graphon():
    g = GridGraphon(((1, 0), (0, "0.5")))
    assert g.resolution == 2
    assert g.evaluate(0.75, 0.9) == 0.5
    assert g.to_step().sigma == (0, Fraction(1, 2), 1)


def test_json_roundtrip(tb):
    for g in [tb, GridGraphon(((1, 0), (0, "0.5"))), FamilyGraphon("mean")]:
        d = graphon_to_dict(g)
        assert graphon_from_dict(json.loads(json.dumps(d))) == g


def test_load_fixture_files():
    g = load_graphon(FIXTURES / "three_block.json")
    assert g == three_block()
    with pytest.raises(HGraphonError):
        load_graphon(FIXTURES / "malformed.json")


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"type": "blob"},
        {"type": "step", "sigma": ["0", "1"]},
        {"type": "grid", "resolution": 3, "values": [[0, 1], [1, 0]]},
        {"type": "family", "name": "product", "params": {"p": 1}},
    ],
)
def test_bad_dicts(data):
    with pytest.raises(HGraphonError):
        graphon_from_dict(data)
