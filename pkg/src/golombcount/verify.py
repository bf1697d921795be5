"""Property suites run over a prime range; failures are returned as data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from .characters import CharacterId, check_weil_bound, indicator_values
from .config import Config
from .counting import (
    BudgetExceededError,
    TargetTuple,
    count_bruteforce,
    count_indicator,
    sigma_split,
)
from .ntcore import build_context, divisors, multiplicative_order, primes_in_range

KINDS = ("indicator", "weil", "decomposition")
AGREEMENT_TOL = 1e-6


@dataclass
class VerifySummary:
    kind: str
    checks: int = 0
    failures: int = 0
    skipped: int = 0
    first_failure: Optional[str] = None
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = detail()

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.kind}: {self.checks} checks, {self.failures} failed"
        if self.skipped:
            text += f", {self.skipped} skipped"
        if self.first_failure:
            text += f"; first failure: {self.first_failure}"
        return text


def verify_indicator(lo: int, hi: int, config: Config) -> VerifySummary:
    """Character-sum indicator against multiplicative orders, every residue of every prime."""
    out = VerifySummary("indicator")
    worst = 0.0
    for p in primes_in_range(max(lo, 3), hi):
        ctx = build_context(p)
        values = indicator_values(ctx)
        for a in range(p):
            truth = a != 0 and multiplicative_order(a, p) == p - 1
            dev = abs(values[a] - truth)
            worst = max(worst, dev)
            out.record(dev < AGREEMENT_TOL, lambda: f"p={p} a={a} indicator={values[a]!r} member={truth}")
    out.stats["max_deviation"] = worst
    return out


def random_characters(ctx, s: int, rng: np.random.Generator) -> list[CharacterId]:
    """s random characters (any divisor k of p-1), at least one nonprincipal."""
    ks = divisors(ctx.p - 1)
    chis = []
    for _ in range(s):
        k = int(rng.choice(ks))
        ds = [d for d in range(1, k + 1) if math.gcd(d, k) == 1]
        chis.append(CharacterId(k, int(rng.choice(ds))))
    if all(c.is_principal for c in chis):
        j = int(rng.integers(s))
        k = int(rng.choice(ks[1:]))
        ds = [d for d in range(1, k + 1) if math.gcd(d, k) == 1]
        chis[j] = CharacterId(k, int(rng.choice(ds)))
    return chis


def weil_configurations(p: int, samples: int, seed: int) -> Iterator[tuple[list[CharacterId], list[int]]]:
    ctx = build_context(p)
    rng = np.random.default_rng([seed, p, 0x5EED])
    for s in (1, 2, 3):
        for _ in range(samples):
            chis = random_characters(ctx, s, rng)
            shifts = [int(b) for b in rng.choice(p, size=s, replace=False)]
            yield chis, shifts


def verify_weil(lo: int, hi: int, config: Config) -> VerifySummary:
    out = VerifySummary("weil")
    worst = 0.0
    for p in primes_in_range(max(lo, 5), hi):
        ctx = build_context(p)
        for chis, shifts in weil_configurations(p, config.weil_samples, config.seed):
            value, bound, holds = check_weil_bound(chis, shifts, ctx)
            worst = max(worst, abs(value) / bound)
            out.record(holds, lambda: f"p={p} chis={chis} shifts={shifts} |sum|={abs(value):.6g} > {bound:.6g}")
    out.stats["max_ratio"] = worst
    return out


def decomposition_tuples(p: int, r: int, random_count: int, seed: int) -> list[TargetTuple]:
    if r > p - 2:
        return []
    tuples = [TargetTuple(p, tuple(range(1, r + 1)))]
    rng = np.random.default_rng([seed, p, r])
    for _ in range(random_count):
        shifts = rng.choice(np.arange(1, p), size=r, replace=False)
        tuples.append(TargetTuple(p, tuple(int(a) for a in shifts)))
    return tuples


def verify_decomposition(lo: int, hi: int, config: Config) -> VerifySummary:
    """Brute force, indicator product and character expansion must give the same N."""
    out = VerifySummary("decomposition")
    worst_ratio = 0.0
    worst_residual = 0.0
    for p in primes_in_range(max(lo, 5), hi):
        ctx = build_context(p)
        for r in range(1, config.verify_max_r + 1):
            for tup in decomposition_tuples(p, r, config.verify_random_tuples, config.seed):
                try:
                    b = sigma_split(tup, ctx, budget=config.budget, method=config.decomposition_method)
                except BudgetExceededError:
                    out.skipped += 1
                    continue
                n = count_bruteforce(tup, ctx)
                via_ind = count_indicator(tup, ctx)
                residual = max(abs(via_ind - n), abs(b.total - n))
                worst_residual = max(worst_residual, residual)
                worst_ratio = max(worst_ratio, abs(b.sigma2) / b.explicit_bound)
                tag = f"p={p} shifts={tup.shifts}"
                out.record(residual < AGREEMENT_TOL,
                           lambda: f"{tag}: brute={n} indicator={via_ind!r} split={b.total!r}")
                out.record(abs(b.sigma2) <= b.explicit_bound,
                           lambda: f"{tag}: |sigma2|={abs(b.sigma2):.6g} > bound {b.explicit_bound:.6g}")
                out.record(abs(b.sigma1 - b.sigma1_exact_form) < AGREEMENT_TOL,
                           lambda: f"{tag}: sigma1={b.sigma1!r} exact={b.sigma1_exact_form!r}")
                out.record(b.max_weil_ratio <= 1 + 1e-9,
                           lambda: f"{tag}: a character-tuple sum exceeds (r+1)sqrt(p)")
    out.stats["max_residual"] = worst_residual
    out.stats["max_sigma2_over_bound"] = worst_ratio
    return out


_SUITES = {
    "indicator": verify_indicator,
    "weil": verify_weil,
    "decomposition": verify_decomposition,
}


def verify(kind: str, lo: int, hi: int, config: Config | None = None) -> list[VerifySummary]:
    config = config or Config()
    if kind == "all":
        return [_SUITES[k](lo, hi, config) for k in KINDS]
    if kind not in _SUITES:
        raise ValueError(f"unknown verify kind {kind!r}")
    return [_SUITES[kind](lo, hi, config)]
