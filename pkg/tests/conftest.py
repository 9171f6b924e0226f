import random
from fractions import Fraction
from pathlib import Path

import pytest

from hgraphon import validate_step_graphon

FIXTURES = Path(__file__).parent / "fixtures"

_criteria: list[tuple[str, bool, str]] = []


def three_block():
    """Support pattern of the three-block example: loops at blocks 1 and 3,
    edges 1-2 and 2-3.  Grey levels are read off the picture as 0.7 and 0.4."""
    return validate_step_graphon(
        ["0", "0.3", "0.6", "1"],
        [["1", "0.7", "0"], ["0.7", "0", "0.4"], ["0", "0.4", "1"]],
    )


def two_block(w11, w12, w22, cut="0.3"):
    return validate_step_graphon(["0", cut, "1"], [[w11, w12], [w12, w22]])


def random_step_graphon(rng: random.Random, max_q=5, denom=10, zero_prob=0.5):
    q = rng.randint(1, max_q)
    inner = sorted(rng.sample(range(1, denom), q - 1))
    sigma = [Fraction(0)] + [Fraction(k, denom) for k in inner] + [Fraction(1)]
    vals = [[Fraction(0)] * q for _ in range(q)]
    for i in range(q):
        for j in range(i, q):
            v = Fraction(0) if rng.random() < zero_prob else rng.choice([Fraction(1, 2), Fraction(1)])
            vals[i][j] = vals[j][i] = v
    return validate_step_graphon(sigma, vals)


@pytest.fixture
def tb():
    return three_block()


class Criterion:
    def __init__(self):
        self.label = None
        self.detail = ""
        self.passed = False

    def __call__(self, label, detail=""):
        self.label = label
        self.detail = detail


@pytest.fixture
def criterion():
    """Record one acceptance criterion; the outcome is printed in the summary."""
    rec = Criterion()
    yield rec
    if rec.label:
        _criteria.append((rec.label, rec.passed, rec.detail))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rec = getattr(item, "funcargs", {}).get("criterion")
    if rep.when == "call" and isinstance(rec, Criterion):
        rec.passed = rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(_criteria, key=lambda c: int(c[0].split(".")[0])):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {label}" + (f"  ({detail})" if detail else ""))
