"""Exhaustive build-and-verify sweeps over construction parameters.

Each parameter tuple is instantiated with random chain orderings and random
coefficients, built, and checked by :func:`gcas.verify.check_gcas`.  The
Theorem 2 sweep runs every offset strategy on the same random draw so that
strategies are compared on identical functions.
"""

from __future__ import annotations

import csv
import io
import itertools
import time
import warnings
from dataclasses import asdict, dataclass, field
from math import lcm
from typing import Iterator

import numpy as np

from .construct import (
    DuplicateMembersWarning,
    OffsetStrategy,
    Theorem1Params,
    Theorem2Params,
    build_t1_set,
    build_t2_set,
    validate_t1,
    validate_t2,
)
from .core import units
from .egbf import Theorem1Function, Theorem2Function
from .verify import check_gcas


@dataclass
class T1Bounds:
    bases: tuple[int, ...] = (2, 3)
    moduli: tuple[int, ...] = (2, 3, 4, 6, 12)
    max_vars: int = 5
    max_cells: int = 256
    max_set_size: int = 256
    draws: int = 50
    seed: int = 2024


@dataclass
class T2Bounds:
    bases: tuple[int, ...] = (2, 3)
    moduli: tuple[int, ...] = (4, 6, 12)
    max_m: int = 3
    max_n: int = 3
    max_set_size: int = 512
    draws: int = 2
    seed: int = 2025


@dataclass
class SweepBounds:
    t1: T1Bounds | None = field(default_factory=T1Bounds)
    t2: T2Bounds | None = field(default_factory=T2Bounds)

    @classmethod
    def from_dict(cls, doc: dict) -> SweepBounds:
        def section(key, kind):
            if key not in doc:
                return kind()
            if doc[key] is None:
                return None
            raw = dict(doc[key])
            for name in ("bases", "moduli"):
                if name in raw:
                    raw[name] = tuple(int(v) for v in raw[name])
            return kind(**raw)

        unknown = set(doc) - {"t1", "t2"}
        if unknown:
            raise ValueError(f"unknown sweep bound sections: {sorted(unknown)}")
        return cls(section("t1", T1Bounds), section("t2", T2Bounds))

    def to_dict(self) -> dict:
        return {"t1": asdict(self.t1) if self.t1 else None,
                "t2": asdict(self.t2) if self.t2 else None}


# Small enough to finish in seconds; the acceptance suite uses the full bounds.
DESK_BOUNDS = SweepBounds(
    T1Bounds(max_vars=4, max_cells=64, max_set_size=64, draws=3),
    T2Bounds(max_m=2, max_n=2, max_set_size=128, draws=1),
)
ACCEPTANCE_BOUNDS = SweepBounds(T1Bounds(), T2Bounds())


@dataclass
class SweepRecord:
    theorem: str
    params: str
    strategy: str
    draw: int
    verdict: str
    elapsed: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _divisors(q: int) -> list[int]:
    return [d for d in range(1, q + 1) if q % d == 0]


def t1_tuples(bounds: T1Bounds) -> Iterator[tuple[int, int, int, int, int, int]]:
    """Valid ``(b, q, N, m, n, k)`` combinations within the bounds."""
    for b in bounds.bases:
        for q in bounds.moduli:
            if q % b:
                continue
            for N in _divisors(q):
                if N < b:
                    continue
                for total in range(1, bounds.max_vars + 1):
                    if b**total > bounds.max_cells:
                        continue
                    for m in range(1, total + 1):
                        for k in range(1, total + 1):
                            if N ** (k + 1) <= bounds.max_set_size:
                                yield b, q, N, m, total - m, k


def t2_tuples(bounds: T2Bounds) -> Iterator[tuple[int, ...]]:
    """Valid ``(b1, b2, q, N1, N2, m, n, k1, k2)`` combinations within the bounds."""
    for b1, b2 in itertools.product(bounds.bases, repeat=2):
        for q in bounds.moduli:
            for N1, N2 in itertools.product(_divisors(q), repeat=2):
                if N1 < b1 or N2 < b2 or q % lcm(N1, N2, b1, b2):
                    continue
                for m in range(1, bounds.max_m + 1):
                    for n in range(1, bounds.max_n + 1):
                        for k1 in range(1, m + 1):
                            for k2 in range(1, n + 1):
                                if N1 ** (k1 + 1) * N2**k2 <= bounds.max_set_size:
                                    yield b1, b2, q, N1, N2, m, n, k1, k2


def random_chains(rng: np.random.Generator, size: int, k: int) -> list[list[int]]:
    """A random ordered partition of ``1..size`` into ``k`` nonempty chains."""
    perm = (rng.permutation(size) + 1).tolist()
    cuts = sorted(rng.choice(np.arange(1, size), size=k - 1, replace=False).tolist()) if k > 1 else []
    bounds = [0] + cuts + [size]
    return [perm[a:b] for a, b in zip(bounds, bounds[1:])]


def _random_d(rng, chains, b: int) -> list[list[int]]:
    allowed = units(b)
    return [[int(rng.choice(allowed)) for _ in range(len(c) - 1)] for c in chains]


def _random_table(rng, q: int, width: int) -> list[list[int]]:
    return rng.integers(0, q, size=(q - 1, width)).tolist()


def random_t1_function(rng, b: int, m: int, n: int, q: int, k: int) -> Theorem1Function:
    chains = random_chains(rng, m + n, k)
    return Theorem1Function(b=b, m=m, n=n, q=q, partitions=chains, d=_random_d(rng, chains, b),
                            lam=_random_table(rng, q, m + n), lambda0=int(rng.integers(q)))


def random_t2_function(rng, b1, b2, m, n, q, k1, k2) -> Theorem2Function:
    xc, yc = random_chains(rng, m, k1), random_chains(rng, n, k2)
    return Theorem2Function(b1=b1, b2=b2, m=m, n=n, q=q, x_partitions=xc, y_partitions=yc,
                            d=_random_d(rng, xc, b1), d_prime=_random_d(rng, yc, b2),
                            lam=_random_table(rng, q, m), nu=_random_table(rng, q, n),
                            lambda0=int(rng.integers(q)))


def _timed_check(build, params) -> tuple[str, float]:
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DuplicateMembersWarning)
        report = check_gcas(build(params))
    return ("pass" if report.is_gcas else "fail"), time.perf_counter() - start


def run_t1_sweep(bounds: T1Bounds) -> list[SweepRecord]:
    rng = np.random.default_rng(bounds.seed)
    records = []
    for b, q, N, m, n, k in t1_tuples(bounds):
        label = f"b={b} q={q} N={N} m={m} n={n} k={k}"
        for draw in range(bounds.draws):
            params = Theorem1Params(random_t1_function(rng, b, m, n, q, k), N)
            if validate_t1(params):
                verdict, elapsed = "invalid", 0.0
            else:
                verdict, elapsed = _timed_check(build_t1_set, params)
            records.append(SweepRecord("t1", label, "", draw, verdict, elapsed))
    return records


def run_t2_sweep(bounds: T2Bounds, strategies=tuple(OffsetStrategy)) -> list[SweepRecord]:
    rng = np.random.default_rng(bounds.seed)
    records = []
    for b1, b2, q, N1, N2, m, n, k1, k2 in t2_tuples(bounds):
        label = f"b1={b1} b2={b2} q={q} N1={N1} N2={N2} m={m} n={n} k1={k1} k2={k2}"
        for draw in range(bounds.draws):
            fn = random_t2_function(rng, b1, b2, m, n, q, k1, k2)
            for strategy in strategies:
                params = Theorem2Params(fn, N1, N2, strategy)
                if validate_t2(params):
                    verdict, elapsed = "n/a", 0.0
                else:
                    verdict, elapsed = _timed_check(build_t2_set, params)
                records.append(SweepRecord("t2", label, strategy.value, draw, verdict, elapsed))
    return records


@dataclass
class SweepSummary:
    t1_total: int
    t1_passed: int
    t2_cases: int
    strategy_passed: dict[str, int]
    strategy_failures: dict[str, list[str]]
    covering_strategies: list[str]

    @property
    def t1_ok(self) -> bool:
        return self.t1_passed == self.t1_total

    @property
    def t2_ok(self) -> bool:
        return self.t2_cases == 0 or bool(self.covering_strategies)

    @property
    def ok(self) -> bool:
        return self.t1_ok and self.t2_ok


def summarize(records: list[SweepRecord]) -> SweepSummary:
    t1 = [r for r in records if r.theorem == "t1"]
    t2 = [r for r in records if r.theorem == "t2"]
    cases = {(r.params, r.draw) for r in t2}
    passed: dict[str, int] = {s.value: 0 for s in OffsetStrategy}
    failures: dict[str, list[str]] = {s.value: [] for s in OffsetStrategy}
    for r in t2:
        if r.passed:
            passed[r.strategy] += 1
        else:
            failures[r.strategy].append(f"{r.params} draw={r.draw} ({r.verdict})")
    covering = [s for s in passed if cases and passed[s] == len(cases)]
    return SweepSummary(len(t1), sum(r.passed for r in t1), len(cases), passed, failures, covering)


def records_to_csv(records: list[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theorem", "params", "strategy", "draw", "verdict", "elapsed"])
    for r in records:
        writer.writerow([r.theorem, r.params, r.strategy, r.draw, r.verdict, f"{r.elapsed:.6f}"])
    return buf.getvalue()
