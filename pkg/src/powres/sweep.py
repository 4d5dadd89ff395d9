"""Batch (p, n) sweeps: case enumeration, parallel runs, persistence, fits.

A sweep walks primes in [p_min, p_max], pairs each with odd divisors n of
p - 1 under the configured policy and the n > p**epsilon hypothesis filter,
computes k(p, n) (optionally with subgroup-sum statistics) per case, and
fits the growth exponent of k against p on a log-log scale.

Work is partitioned per (p, n) case and dispatched to a process pool;
workers share only the immutable config, and the collector orders results
by (p, n), so output files are byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from statistics import StatisticsError, linear_regression

from .errors import EmptyRange, InsufficientData, ScaleLimit, TrivialSubgroup
from .expsums import empirical_delta, expsum_profile
from .modmath import build_prime_context, factorize, primes_up_to
from .residues import (BSGS_CAP_DEFAULT, ENUM_CAP_DEFAULT, compute_k,
                       roots_of_unity_subgroup)

N_POLICIES = ("all_odd_divisors", "largest_odd_divisor", "fixed_n")

CSV_COLUMNS = ("p", "n", "k", "lower_num", "lower_den", "upper_num",
               "upper_den", "normalized", "max_expsum_ratio", "delta_emp",
               "elapsed_ms")


@dataclass(frozen=True)
class SweepConfig:
    """Immutable sweep parameters; validated on construction."""

    p_min: int
    p_max: int
    n_min: int = 3
    epsilon: float = 0.0
    n_policy: str = "all_odd_divisors"
    fixed_n: int | None = None
    with_expsums: bool = False
    workers: int = 1
    enum_cap: int = ENUM_CAP_DEFAULT
    bsgs_cap: int = BSGS_CAP_DEFAULT

    def __post_init__(self) -> None:
        if self.p_min < 5:
            raise ValueError(f"p_min must be >= 5, got {self.p_min}")
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in [0, 1), got {self.epsilon}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.n_policy not in N_POLICIES:
            raise ValueError(f"unknown n_policy {self.n_policy!r}")
        if self.n_policy == "fixed_n" and self.fixed_n is None:
            raise ValueError("n_policy 'fixed_n' requires fixed_n")


@dataclass(frozen=True)
class SweepRecord:
    """One (p, n) row; k and the derived fields are None when skipped."""

    p: int
    n: int
    k: int | None
    lower: Fraction | None = None
    upper_exclusive: Fraction | None = None
    normalized: float | None = None
    max_expsum_ratio: float | None = None
    delta_emp: float | None = None
    elapsed_ms: int | None = None
    skip_reason: str | None = None

    @property
    def log_p(self) -> float:
        return math.log(self.p)

    @property
    def log_k(self) -> float:
        assert self.k is not None and self.k >= 1
        return math.log(self.k)


@dataclass(frozen=True)
class FitResult:
    """Ordinary least squares of log k on log p."""

    slope: float
    intercept: float
    r_squared: float
    n_points: int


def odd_divisors(m: int) -> list[int]:
    """Ascending odd divisors of m (the divisors of m's odd part)."""
    divisors = [1]
    for q, e in factorize(m):
        if q == 2:
            continue
        divisors = [d * q**i for d in divisors for i in range(e + 1)]
    return sorted(divisors)


def _case_ns(p: int, config: SweepConfig) -> list[int]:
    candidates = odd_divisors(p - 1)
    if config.n_policy == "largest_odd_divisor":
        candidates = candidates[-1:]
    elif config.n_policy == "fixed_n":
        candidates = [n for n in candidates if n == config.fixed_n]
    kept = [n for n in candidates if n >= config.n_min]
    if config.epsilon > 0.0:
        kept = [n for n in kept if n > p**config.epsilon]
    return kept


def enumerate_cases(config: SweepConfig) -> list[tuple[int, int]]:
    """All (p, n) pairs under the policy and hypothesis filters, sorted.

    Raises EmptyRange when the prime range itself is empty; filters that
    merely reject every divisor yield an empty list instead.
    """
    primes = [p for p in primes_up_to(config.p_max) if p >= config.p_min]
    if not primes:
        raise EmptyRange(f"no primes in [{config.p_min}, {config.p_max}]")
    return sorted((p, n) for p in primes for n in _case_ns(p, config))


def run_case(p: int, n: int, *, with_expsums: bool = False,
             enum_cap: int = ENUM_CAP_DEFAULT,
             bsgs_cap: int = BSGS_CAP_DEFAULT) -> SweepRecord:
    """Compute one sweep record; cap overruns become skip records."""
    start = time.perf_counter()
    ctx = build_prime_context(p)
    try:
        result = compute_k(ctx, n, enum_cap=enum_cap)
    except ScaleLimit as exc:
        elapsed = int(round((time.perf_counter() - start) * 1000))
        return SweepRecord(p=p, n=n, k=None, elapsed_ms=elapsed,
                           skip_reason=str(exc))
    max_ratio = None
    delta = None
    if with_expsums:
        subgroup = roots_of_unity_subgroup(ctx, n, enum_cap=enum_cap)
        if subgroup.elements is not None:
            profile = expsum_profile(subgroup)
            max_ratio = profile.max_magnitude / n
            try:
                delta = empirical_delta(profile)
            except TrivialSubgroup:
                delta = None
    if n >= 3:
        assert result.sandwich_holds(), f"bound violation at (p={p}, n={n})"
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return SweepRecord(p=p, n=n, k=result.k, lower=result.lower,
                       upper_exclusive=result.upper_exclusive,
                       normalized=result.k * 2 * n / (p - 1),
                       max_expsum_ratio=max_ratio, delta_emp=delta,
                       elapsed_ms=elapsed)


def _run_case_tuple(case: tuple[int, int], config: SweepConfig) -> SweepRecord:
    return run_case(case[0], case[1], with_expsums=config.with_expsums,
                    enum_cap=config.enum_cap, bsgs_cap=config.bsgs_cap)


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """One record per enumerated case, ordered by (p, n).

    Per-case cap failures are recorded as skips and never abort the sweep.
    """
    cases = enumerate_cases(config)
    worker = partial(_run_case_tuple, config=config)
    if config.workers == 1 or len(cases) <= 1:
        records = [worker(case) for case in cases]
    else:
        chunk = max(1, len(cases) // (config.workers * 8))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(worker, cases, chunksize=chunk))
    records.sort(key=lambda rec: (rec.p, rec.n))
    return records


def fit_exponent(records: list[SweepRecord]) -> FitResult:
    """OLS of log k on log p over the completed records.

    The slope is the empirical growth exponent of k(p, n) in p; a slope
    below 1 is the trend the covering bound predicts, though no effective
    constant is asserted.
    """
    points = [(rec.log_p, rec.log_k) for rec in records
              if rec.k is not None and rec.k >= 1]
    if len(points) < 2:
        raise InsufficientData(f"need >= 2 records, have {len(points)}")
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    try:
        slope, intercept = linear_regression(xs, ys)
    except StatisticsError as exc:
        raise InsufficientData(str(exc)) from exc
    mean_y = math.fsum(ys) / len(ys)
    ss_tot = math.fsum((y - mean_y) ** 2 for y in ys)
    ss_res = math.fsum((y - (slope * x + intercept)) ** 2
                       for x, y in points)
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return FitResult(slope=slope, intercept=intercept,
                     r_squared=r_squared, n_points=len(points))


def _field_values(rec: SweepRecord, with_timings: bool) -> dict[str, object]:
    return {
        "p": rec.p,
        "n": rec.n,
        "k": rec.k,
        "lower_num": rec.lower.numerator if rec.lower is not None else None,
        "lower_den": rec.lower.denominator if rec.lower is not None else None,
        "upper_num": (rec.upper_exclusive.numerator
                      if rec.upper_exclusive is not None else None),
        "upper_den": (rec.upper_exclusive.denominator
                      if rec.upper_exclusive is not None else None),
        "normalized": rec.normalized,
        "max_expsum_ratio": rec.max_expsum_ratio,
        "delta_emp": rec.delta_emp,
        "elapsed_ms": rec.elapsed_ms if with_timings else None,
    }


def write_records(records: list[SweepRecord], path: str, fmt: str = "csv", *,
                  with_timings: bool = False) -> None:
    """Persist records as CSV or JSONL (UTF-8, LF line endings).

    Absent optionals serialize as empty CSV cells / JSON nulls.  Wall-clock
    timings are volatile, so by default elapsed_ms is written empty to keep
    identical sweeps byte-identical on disk; pass with_timings=True for
    profiling dumps.  JSONL rows carry an extra skip_reason key (null for
    completed cases) that CSV omits.
    """
    if fmt not in ("csv", "jsonl"):
        raise ValueError(f"format must be 'csv' or 'jsonl', got {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for rec in records:
                values = _field_values(rec, with_timings)
                writer.writerow(["" if values[c] is None else values[c]
                                 for c in CSV_COLUMNS])
        else:
            for rec in records:
                obj = _field_values(rec, with_timings)
                obj["skip_reason"] = rec.skip_reason
                fh.write(json.dumps(obj) + "\n")


def _record_from_fields(values: dict[str, object]) -> SweepRecord:
    def _get(key: str, cast):
        v = values.get(key)
        if v is None or v == "":
            return None
        return cast(v)

    lower_num = _get("lower_num", int)
    upper_num = _get("upper_num", int)
    return SweepRecord(
        p=int(values["p"]),
        n=int(values["n"]),
        k=_get("k", int),
        lower=(Fraction(lower_num, _get("lower_den", int))
               if lower_num is not None else None),
        upper_exclusive=(Fraction(upper_num, _get("upper_den", int))
                         if upper_num is not None else None),
        normalized=_get("normalized", float),
        max_expsum_ratio=_get("max_expsum_ratio", float),
        delta_emp=_get("delta_emp", float),
        elapsed_ms=_get("elapsed_ms", int),
        skip_reason=_get("skip_reason", str),
    )


def read_records(path: str, fmt: str = "csv") -> list[SweepRecord]:
    """Parse a file produced by write_records back into records."""
    if fmt not in ("csv", "jsonl"):
        raise ValueError(f"format must be 'csv' or 'jsonl', got {fmt!r}")
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            for row in csv.DictReader(fh):
                records.append(_record_from_fields(row))
        else:
            for line in fh:
                if line.strip():
                    records.append(_record_from_fields(json.loads(line)))
    return records
