"""Graphon representations.

Three concrete kinds are supported:

* :class:`StepGraphon`: constant on the rectangles of a finite partition.
  Breakpoints and block values are stored as exact :class:`fractions.Fraction`
  so that all downstream geometry can run in exact arithmetic.
* :class:`GridGraphon`: an ``N x N`` symmetric matrix on the uniform grid,
  i.e. a step graphon whose partition is ``(0, 1/N, ..., 1)``.
* :class:`FamilyGraphon`: a closed-form graphon from a short list of named
  families (``constant``, ``product``, ``mean``).

Cells are half-open, ``[s_{i-1}, s_i)``, with the last cell closed at 1.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (
    AsymmetricValues,
    CoordinateOutOfRange,
    DimensionMismatch,
    EndpointsNot01,
    HGraphonError,
    NonMonotonePartition,
    UnknownFamily,
    ValueOutOfRange,
)

__all__ = [
    "Partition",
    "Graphon",
    "StepGraphon",
    "GridGraphon",
    "FamilyGraphon",
    "SaturatedGraphon",
    "to_fraction",
    "validate_step_graphon",
    "concentration_vector",
    "evaluate",
    "saturate",
    "refine_partition",
    "aligned_resolution",
    "graphon_from_dict",
    "graphon_to_dict",
    "load_graphon",
    "FAMILIES",
]


def to_fraction(value: Any) -> Fraction:
    """Convert a decimal string, int, float or Fraction to an exact rational.

    Floats go through their shortest ``repr`` so that ``0.3`` becomes
    ``3/10`` rather than the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise HGraphonError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueOutOfRange(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise HGraphonError(f"cannot parse number {value!r}") from exc
    if isinstance(value, (np.integer, np.floating)):
        return to_fraction(value.item())
    raise HGraphonError(f"not a number: {value!r}")


def _check_unit(x: np.ndarray, name: str) -> None:
    if np.any(~np.isfinite(x)) or np.any(x < 0) or np.any(x > 1):
        raise CoordinateOutOfRange(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class Partition:
    """Breakpoints ``0 = s_0 < s_1 < ... < s_q = 1``."""

    breakpoints: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        bp = tuple(to_fraction(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        if len(bp) < 2:
            raise NonMonotonePartition("a partition needs at least two breakpoints")
        if bp[0] != 0 or bp[-1] != 1:
            raise EndpointsNot01(f"partition must start at 0 and end at 1, got {bp[0]} .. {bp[-1]}")
        if any(b <= a for a, b in zip(bp, bp[1:])):
            raise NonMonotonePartition("breakpoints must be strictly increasing")

    @property
    def q(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def lengths(self) -> tuple[Fraction, ...]:
        bp = self.breakpoints
        return tuple(b - a for a, b in zip(bp, bp[1:]))

    def cell_index(self, x: np.ndarray) -> np.ndarray:
        """Index of the half-open cell containing each ``x`` (last cell closed)."""
        inner = np.array([float(b) for b in self.breakpoints[1:-1]])
        return np.searchsorted(inner, np.asarray(x, dtype=float), side="right")

    def refines(self, other: "Partition") -> bool:
        return set(other.breakpoints) <= set(self.breakpoints)


class Graphon:
    """Symmetric measurable ``W: [0,1]^2 -> [0,1]``.

    Subclasses implement :meth:`_values`, which receives broadcast-compatible
    float arrays already checked to lie in ``[0, 1]``.
    """

    kind: str = "abstract"

    def _values(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def evaluate(self, x, y):
        """Vectorised evaluation; returns a float for scalar input."""
        xa = np.asarray(x, dtype=float)
        ya = np.asarray(y, dtype=float)
        _check_unit(xa, "x")
        _check_unit(ya, "y")
        out = self._values(xa, ya)
        if out.ndim == 0:
            return float(out)
        return out

    __call__ = evaluate


@dataclass(frozen=True, eq=True)
class StepGraphon(Graphon):
    partition: Partition
    values: tuple[tuple[Fraction, ...], ...]
    _dense: np.ndarray = field(init=False, repr=False, compare=False)

    kind = "step"

    def __post_init__(self) -> None:
        q = self.partition.q
        rows = tuple(tuple(to_fraction(v) for v in row) for row in self.values)
        if len(rows) != q or any(len(r) != q for r in rows):
            raise DimensionMismatch(f"value matrix must be {q}x{q} for a partition with {q} cells")
        for i in range(q):
            for j in range(q):
                v = rows[i][j]
                if v < 0 or v > 1:
                    raise ValueOutOfRange(f"values[{i}][{j}] = {v} is outside [0, 1]")
                if rows[j][i] != v:
                    raise AsymmetricValues(f"values[{i}][{j}] != values[{j}][{i}]")
        object.__setattr__(self, "values", rows)
        dense = np.array([[float(v) for v in r] for r in rows], dtype=float)
        dense.setflags(write=False)
        object.__setattr__(self, "_dense", dense)

    @property
    def q(self) -> int:
        return self.partition.q

    @property
    def sigma(self) -> tuple[Fraction, ...]:
        return self.partition.breakpoints

    def dense(self) -> np.ndarray:
        """Block values as a read-only float array."""
        return self._dense

    def _values(self, x, y):
        return self._dense[self.partition.cell_index(x), self.partition.cell_index(y)]


def _uniform_partition(n: int) -> Partition:
    return Partition(tuple(Fraction(i, n) for i in range(n + 1)))


@dataclass(frozen=True)
class GridGraphon(Graphon):
    """Step graphon on the uniform ``N``-cell grid."""

    values: tuple[tuple[Fraction, ...], ...]
    _step: StepGraphon = field(init=False, repr=False, compare=False)

    kind = "grid"

    def __post_init__(self) -> None:
        n = len(self.values)
        if n < 1:
            raise DimensionMismatch("grid resolution must be at least 1")
        step = StepGraphon(_uniform_partition(n), self.values)
        object.__setattr__(self, "values", step.values)
        object.__setattr__(self, "_step", step)

    @property
    def resolution(self) -> int:
        return len(self.values)

    def to_step(self) -> StepGraphon:
        return self._step

    def _values(self, x, y):
        return self._step._values(x, y)


def _constant(x, y, p):
    return np.broadcast_to(np.float64(p), np.broadcast(x, y).shape).copy()


FAMILIES = {
    "constant": (("p",), _constant),
    "product": ((), lambda x, y: x * y),
    "mean": ((), lambda x, y: (x + y) / 2),
}


@dataclass(frozen=True)
class FamilyGraphon(Graphon):
    """Named closed-form graphon.

    ``constant`` takes a parameter ``p`` in ``[0, 1]``; ``product`` is
    ``W(x, y) = x y`` and ``mean`` is ``W(x, y) = (x + y) / 2``.
    """

    name: str
    params: tuple[tuple[str, Fraction], ...] = ()

    kind = "family"

    def __post_init__(self) -> None:
        name = self.name.strip().lower()
        if name == "constant p":
            name = "constant"
        if name not in FAMILIES:
            raise UnknownFamily(f"unknown graphon family {self.name!r}; known: {sorted(FAMILIES)}")
        wanted, _ = FAMILIES[name]
        params = dict(self.params)
        if set(params) != set(wanted):
            raise HGraphonError(f"family {name!r} takes parameters {wanted}, got {tuple(params)}")
        params = {k: to_fraction(v) for k, v in params.items()}
        for k, v in params.items():
            if not 0 <= v <= 1:
                raise ValueOutOfRange(f"parameter {k}={v} is outside [0, 1]")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "params", tuple(sorted(params.items())))

    def to_step(self) -> StepGraphon | None:
        """Exact step form when the family is piecewise constant, else ``None``."""
        if self.name == "constant":
            return StepGraphon(Partition((0, 1)), ((dict(self.params)["p"],),))
        return None

    def _values(self, x, y):
        _, fn = FAMILIES[self.name]
        kwargs = {k: float(v) for k, v in self.params}
        return np.asarray(fn(x, y, **kwargs), dtype=float)


@dataclass(frozen=True)
class SaturatedGraphon(Graphon):
    """Indicator of ``base > 0``; used for families without a closed step form."""

    base: Graphon

    kind = "saturated"

    def _values(self, x, y):
        return (self.base._values(x, y) > 0).astype(float)


def validate_step_graphon(sigma: Sequence[Any], values: Sequence[Sequence[Any]]) -> StepGraphon:
    """Build a :class:`StepGraphon` from raw breakpoints and a block matrix.

    Raises the matching :mod:`hgraphon.errors` subclass on invalid input.
    """
    return StepGraphon(Partition(tuple(sigma)), tuple(tuple(r) for r in values))


def concentration_vector(g: StepGraphon) -> tuple[Fraction, ...]:
    """Interval lengths of the partition, i.e. expected block proportions."""
    return g.partition.lengths


def evaluate(g: Graphon, x, y):
    return g.evaluate(x, y)


def saturate(g: Graphon) -> Graphon:
    """The {0,1}-valued graphon equal to 1 exactly where ``g`` is positive."""
    one, zero = Fraction(1), Fraction(0)

    def sat(row):
        return tuple(one if v > 0 else zero for v in row)

    if isinstance(g, StepGraphon):
        return StepGraphon(g.partition, tuple(sat(r) for r in g.values))
    if isinstance(g, GridGraphon):
        return GridGraphon(tuple(sat(r) for r in g.values))
    if isinstance(g, FamilyGraphon) and g.name == "constant":
        return FamilyGraphon("constant", (("p", one if dict(g.params)["p"] > 0 else zero),))
    if isinstance(g, SaturatedGraphon):
        return g
    return SaturatedGraphon(g)


def refine_partition(g: StepGraphon, extra: Iterable[Any]) -> StepGraphon:
    """Insert breakpoints, duplicating block values into the new cells.

    The refined graphon evaluates identically everywhere.
    """
    new_points = {to_fraction(b) for b in extra}
    for b in new_points:
        if not 0 <= b <= 1:
            raise EndpointsNot01(f"extra breakpoint {b} outside [0, 1]")
    bp = tuple(sorted(set(g.sigma) | new_points))
    # parent cell of each new cell, looked up by its left endpoint
    parent = [_parent_cell(g.sigma, a) for a in bp[:-1]]
    vals = tuple(tuple(g.values[pi][pj] for pj in parent) for pi in parent)
    return StepGraphon(Partition(bp), vals)


def _parent_cell(sigma: Sequence[Fraction], left: Fraction) -> int:
    for i in range(len(sigma) - 1):
        if sigma[i] <= left < sigma[i + 1]:
            return i
    raise AssertionError("left endpoint outside partition")  # pragma: no cover


def aligned_resolution(g: StepGraphon) -> int:
    """Smallest ``N`` such that every breakpoint is a multiple of ``1/N``."""
    return reduce(math.lcm, (b.denominator for b in g.sigma), 1)


def graphon_from_dict(data: dict) -> Graphon:
    """Parse the JSON graphon schema (``step``, ``grid`` or ``family``)."""
    if not isinstance(data, dict) or "type" not in data:
        raise HGraphonError("graphon object must have a 'type' field")
    kind = data["type"]
    try:
        if kind == "step":
            return validate_step_graphon(data["sigma"], data["values"])
        if kind == "grid":
            g = GridGraphon(tuple(tuple(r) for r in data["values"]))
            if "resolution" in data and int(data["resolution"]) != g.resolution:
                raise DimensionMismatch(
                    f"resolution {data['resolution']} does not match a {g.resolution}x{g.resolution} matrix"
                )
            return g
        if kind == "family":
            return FamilyGraphon(data["name"], tuple((data.get("params") or {}).items()))
    except KeyError as exc:
        raise HGraphonError(f"missing field {exc.args[0]!r} for graphon type {kind!r}") from exc
    except TypeError as exc:
        raise HGraphonError(f"malformed graphon: {exc}") from exc
    raise HGraphonError(f"unknown graphon type {kind!r}")


def _frac_str(v: Fraction) -> str:
    return str(v)


def graphon_to_dict(g: Graphon) -> dict:
    if isinstance(g, StepGraphon):
        return {
            "type": "step",
            "sigma": [_frac_str(b) for b in g.sigma],
            "values": [[_frac_str(v) for v in row] for row in g.values],
        }
    if isinstance(g, GridGraphon):
        return {
            "type": "grid",
            "resolution": g.resolution,
            "values": [[_frac_str(v) for v in row] for row in g.values],
        }
    if isinstance(g, FamilyGraphon):
        return {"type": "family", "name": g.name, "params": {k: _frac_str(v) for k, v in g.params}}
    raise HGraphonError(f"{type(g).__name__} has no JSON form")


def load_graphon(path: str | Path) -> Graphon:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise HGraphonError(f"{path}: invalid JSON ({exc})") from exc
    return graphon_from_dict(data)
