"""Seeded Monte Carlo estimates of P(directed sample has a Hamiltonian decomposition).

Trial ``t`` at size ``n`` samples with seed
``trial_seed(master, n, t)``, the first 8 bytes (little endian) of
``blake2b(pack('<QQQ', master, n, t))``.  Any single trial can be replayed in
isolation with :func:`run_trial`.  Success counts are integers, so the report
does not depend on how trials are scheduled across workers.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import struct
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from scipy.stats import norm

from .errors import InvalidN, InvalidTrials
from .extension import DEFAULT_RESOLUTIONS, DEFAULT_SUBSAMPLES, ExtVerdict, analyze_extended, as_step
from .graphon import Graphon, graphon_to_dict
from .hamdec import has_hamiltonian_decomposition
from .polytope import MembershipVerdict, Status, step_membership
from .sampler import directify, sample_graph
from .skeleton import all_components_nonbipartite, has_odd_cycle, skeleton_graph

__all__ = [
    "ExperimentRow",
    "ExperimentReport",
    "Classification",
    "TheoremVerdict",
    "CSV_HEADER",
    "trial_seed",
    "wilson_interval",
    "run_trial",
    "run_experiment",
    "classify_graphon",
    "graphon_id",
]

CSV_HEADER = ("n", "trials", "successes", "frequency", "ci_low", "ci_high", "seconds")
_Z95 = float(norm.ppf(0.975))
_MASK64 = (1 << 64) - 1


def trial_seed(master: int, n: int, trial: int) -> int:
    data = struct.pack("<QQQ", master & _MASK64, n & _MASK64, trial & _MASK64)
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise InvalidTrials("trials must be positive")
    p = successes / trials
    z2 = z * z
    centre = (p + z2 / (2 * trials)) / (1 + z2 / trials)
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / (1 + z2 / trials)
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


def graphon_id(g: Graphon) -> str:
    try:
        payload = json.dumps(graphon_to_dict(g), sort_keys=True)
    except ValueError:
        payload = repr(g)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    trials: int
    successes: int
    seconds: float = 0.0

    @property
    def frequency(self) -> float:
        return self.successes / self.trials

    @property
    def interval(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)


@dataclass(frozen=True)
class ExperimentReport:
    graphon: str
    seed: int
    rows: tuple[ExperimentRow, ...]

    def to_csv(self, timing: bool = False) -> str:
        """CSV text; the ``seconds`` column is left empty unless ``timing``.

        Leaving it empty keeps reports byte-identical across runs.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            lo, hi = r.interval
            w.writerow([r.n, r.trials, r.successes, repr(r.frequency), repr(lo), repr(hi),
                        f"{r.seconds:.6f}" if timing else ""])
        return buf.getvalue()


def run_trial(g: Graphon, n: int, seed: int) -> bool:
    return has_hamiltonian_decomposition(directify(sample_graph(g, n, seed))) is not None


def run_experiment(
    g: Graphon,
    n_list: Sequence[int],
    trials: int,
    seed: int = 0,
    workers: int = 1,
) -> ExperimentReport:
    """Estimate the decomposition probability at each ``n`` from ``trials`` samples."""
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise InvalidTrials(f"trials must be a positive integer, got {trials!r}")
    if not n_list:
        raise InvalidN("n_list must not be empty")
    for n in n_list:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InvalidN(f"n must be a positive integer, got {n!r}")
    rows = []
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for n in n_list:
            seeds = [trial_seed(seed, n, t) for t in range(trials)]
            start = time.perf_counter()
            if pool is None:
                hits = sum(run_trial(g, n, s) for s in seeds)
            else:
                hits = sum(pool.map(lambda s: run_trial(g, n, s), seeds))
            rows.append(ExperimentRow(n, trials, int(hits), time.perf_counter() - start))
    finally:
        if pool is not None:
            pool.shutdown()
    return ExperimentReport(graphon_id(g), seed, tuple(rows))


class Classification(str, Enum):
    H_PROPERTY = "H-property"
    NO_H_PROPERTY = "no-H-property"
    UNDETERMINED = "undetermined"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TheoremVerdict:
    condition_a: bool
    condition_b_status: Status
    classification: Classification
    basis: str
    # rank reading of condition A (every skeleton component non-bipartite)
    condition_a_rank: bool | None = None
    membership: MembershipVerdict | None = None
    extended: tuple[ExtVerdict, ...] = field(default=())

    @property
    def a_readings_disagree(self) -> bool:
        return self.condition_a_rank is not None and self.condition_a_rank != self.condition_a

    def to_dict(self) -> dict:
        return {
            "condition_a": self.condition_a,
            "condition_a_rank": self.condition_a_rank,
            "condition_b_status": self.condition_b_status.value,
            "classification": self.classification.value,
            "basis": self.basis,
            "membership": None if self.membership is None else self.membership.to_dict(),
            "extended": [e.to_dict() for e in self.extended],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TheoremVerdict":
        m = d.get("membership")
        return cls(
            bool(d["condition_a"]),
            Status(d["condition_b_status"]),
            Classification(d["classification"]),
            d["basis"],
            condition_a_rank=d.get("condition_a_rank"),
            membership=None if m is None else MembershipVerdict.from_dict(m),
            extended=tuple(ExtVerdict.from_dict(e) for e in d.get("extended", ())),
        )


def _classify(a: bool, status: Status) -> Classification:
    if not a or status is Status.OUTSIDE:
        return Classification.NO_H_PROPERTY
    if status is Status.INTERIOR:
        return Classification.H_PROPERTY
    return Classification.UNDETERMINED


def classify_graphon(
    g: Graphon,
    resolutions: Sequence[int] = DEFAULT_RESOLUTIONS,
    k: int = DEFAULT_SUBSAMPLES,
    exact: bool = True,
) -> TheoremVerdict:
    """Combine the conditions into an H-property verdict.

    Graphons with an exact step form (step, grid, constant) are decided from
    the skeleton and edge polytope.  Others use the discretised extended
    conditions at the finest requested resolution and are labelled
    ``general-approximate``.
    """
    step = as_step(g)
    if step is not None:
        s = skeleton_graph(step)
        m = step_membership(step, exact=exact)
        a = has_odd_cycle(s)
        return TheoremVerdict(a, m.status, _classify(a, m.status), "step-exact",
                              condition_a_rank=all_components_nonbipartite(s), membership=m)
    ext = tuple(analyze_extended(g, sorted(resolutions), k, None if exact else False))
    finest = ext[-1]
    return TheoremVerdict(finest.a_ext, finest.b_ext_status, _classify(finest.a_ext, finest.b_ext_status),
                          "general-approximate", membership=finest.membership, extended=ext)
