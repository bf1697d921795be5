"""Prime sweeps: one SweepRecord per (prime, tuple)."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Optional, Union

import numpy as np

from .config import Config
from .counting import (
    BudgetExceededError,
    TargetTuple,
    TupleError,
    count_bruteforce,
    explicit_error_bound,
    main_term,
    sigma_split,
)
from .ntcore import build_context, primes_in_range

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Canonical:
    """Shifts (1, 2, ..., r)."""


@dataclass(frozen=True)
class Fixed:
    shifts: tuple[int, ...]


@dataclass(frozen=True)
class Random:
    count: int


TuplePolicy = Union[Canonical, Fixed, Random]


def parse_policy(text: str) -> TuplePolicy:
    """``canonical``, ``fixed:1,2,3`` or ``random:<count>``."""
    name, _, arg = text.partition(":")
    if name == "canonical" and not arg:
        return Canonical()
    if name == "fixed" and arg:
        return Fixed(tuple(int(a) for a in arg.split(",")))
    if name == "random" and arg:
        count = int(arg)
        if count < 1:
            raise ValueError("random policy needs a positive count")
        return Random(count)
    raise ValueError(f"bad tuple policy {text!r}")


@dataclass(frozen=True)
class SweepRecord:
    p: int
    r: int
    shifts: tuple[int, ...]
    n_exact: int
    main_term: float
    error: float
    abs_error: float
    sigma2: Optional[float]
    explicit_bound: Optional[float]
    phi_pm1: int
    omega_pm1: int
    phi_ratio: Optional[float]

    @property
    def sort_key(self):
        return (self.p, self.shifts)


RECORD_FIELDS = [f.name for f in fields(SweepRecord)]


def phi_ratio(p: int, phi_pm1: int) -> Optional[float]:
    """phi(p-1) log log p / p, only where log log p is positive and meaningful."""
    if p < 17:
        return None
    return phi_pm1 * math.log(math.log(p)) / p


def tuples_for_prime(p: int, r: int, policy: TuplePolicy, seed: int) -> list[TargetTuple]:
    if isinstance(policy, Canonical):
        return [TargetTuple(p, tuple(range(1, r + 1)))]
    if isinstance(policy, Fixed):
        if len(policy.shifts) != r:
            raise ValueError(f"fixed policy has {len(policy.shifts)} shifts but r={r}")
        return [TargetTuple(p, policy.shifts).canonical()]
    if r > p - 1:
        raise TupleError(f"cannot draw {r} distinct nonzero residues mod {p}")
    rng = np.random.default_rng([seed, p])
    out = []
    for _ in range(policy.count):
        shifts = rng.choice(np.arange(1, p), size=r, replace=False)
        out.append(TargetTuple(p, tuple(sorted(int(a) for a in shifts))))
    return out


def make_record(tup: TargetTuple, decompose: bool, config: Config) -> SweepRecord:
    ctx = build_context(tup.p)
    mt = main_term(tup, ctx)
    sigma2 = None
    if decompose:
        try:
            sigma2 = sigma_split(tup, ctx, budget=config.budget, method=config.decomposition_method).sigma2
        except BudgetExceededError as exc:
            log.warning("p=%d shifts=%s: %s", tup.p, tup.shifts, exc)
    n = count_bruteforce(tup, ctx)
    err = n - mt
    return SweepRecord(
        p=tup.p,
        r=tup.r,
        shifts=tup.shifts,
        n_exact=n,
        main_term=mt,
        error=err,
        abs_error=abs(err),
        sigma2=sigma2,
        explicit_bound=explicit_error_bound(tup, ctx),
        phi_pm1=ctx.phi_pm1,
        omega_pm1=ctx.omega_pm1,
        phi_ratio=phi_ratio(tup.p, ctx.phi_pm1),
    )


def _sweep_prime(job) -> list[SweepRecord]:
    p, r, policy, decompose, config = job
    try:
        tuples = tuples_for_prime(p, r, policy, config.seed)
    except TupleError as exc:
        log.warning("skipping p=%d: %s", p, exc)
        return []
    return [make_record(t, decompose, config) for t in tuples]


def sweep(
    lo: int,
    hi: int,
    r: int,
    policy: TuplePolicy,
    config: Config | None = None,
    decompose: bool = False,
) -> list[SweepRecord]:
    """Records for every odd prime in [lo, hi], sorted by (p, shifts)."""
    config = config or Config()
    if r < 1:
        raise ValueError("r must be >= 1")
    if isinstance(policy, Fixed) and len(policy.shifts) != r:
        raise ValueError(f"fixed policy has {len(policy.shifts)} shifts but r={r}")
    if hi > config.max_prime:
        raise ValueError(f"upper bound {hi} exceeds configured max_prime {config.max_prime}")
    primes = primes_in_range(max(lo, 3), hi)
    jobs = [(p, r, policy, decompose, config) for p in primes]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_sweep_prime, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))
    else:
        chunks = [_sweep_prime(j) for j in jobs]
    records = [rec for chunk in chunks for rec in chunk]
    # completion order never leaks into the output
    records.sort(key=lambda rec: rec.sort_key)
    return records
