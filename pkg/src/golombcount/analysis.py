"""Post-processing of sweep records: the error-exponent fit and summary figures."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import stats

from .sweep import SweepRecord


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    sample_count: int
    r_value: float
    max_normalized_error: float
    zero_error_count: int
    epsilon: float

    def to_dict(self) -> dict:
        return asdict(self)


def fit_error_exponent(records: Sequence[SweepRecord], epsilon: float = 0.1) -> FitResult:
    """Least-squares line through (log p, log |error|).

    Records with zero error cannot be logged; they are left out of the
    regression and counted in ``zero_error_count``. The normalised error uses
    every record.
    """
    usable = [rec for rec in records if rec.abs_error > 0]
    if len(usable) < 2 or len({rec.p for rec in usable}) < 2:
        raise InsufficientDataError(
            f"need nonzero errors at two or more distinct primes, got {len(usable)} usable records"
        )
    x = np.log([rec.p for rec in usable])
    y = np.log([rec.abs_error for rec in usable])
    fit = stats.linregress(x, y)
    max_norm = max(rec.abs_error / rec.p ** (0.5 + epsilon) for rec in records)
    return FitResult(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        sample_count=len(usable),
        r_value=float(fit.rvalue),
        max_normalized_error=float(max_norm),
        zero_error_count=len(records) - len(usable),
        epsilon=epsilon,
    )


def forced_positive(rec: SweepRecord) -> bool:
    """True when main_term exceeds the explicit bound, which forces N >= 1."""
    return rec.explicit_bound is not None and rec.main_term - rec.explicit_bound > 0


def positivity_threshold(records: Iterable[SweepRecord]) -> Optional[int]:
    """Smallest prime whose record has main_term - explicit_bound > 0, or None."""
    forced = [rec.p for rec in records if forced_positive(rec)]
    return min(forced) if forced else None


def min_phi_ratio(records: Iterable[SweepRecord]) -> Optional[float]:
    ratios = [rec.phi_ratio for rec in records if rec.phi_ratio is not None]
    return min(ratios) if ratios else None


def summarize(records: Sequence[SweepRecord], epsilon: float = 0.1) -> dict:
    """Fit plus the reported (never asserted) figures for a finished sweep."""
    try:
        fit = fit_error_exponent(records, epsilon).to_dict()
    except InsufficientDataError:
        fit = None
    return {
        "fit": fit,
        "records": len(records),
        "positivity_threshold": positivity_threshold(records),
        "min_phi_ratio": min_phi_ratio(records),
        "zero_count_primes": sorted({rec.p for rec in records if rec.n_exact == 0}),
        "bound_violations": [
            [rec.p, list(rec.shifts)]
            for rec in records
            if rec.sigma2 is not None and not abs(rec.sigma2) <= rec.explicit_bound
        ],
        "forced_but_zero": [
            [rec.p, list(rec.shifts)] for rec in records if forced_positive(rec) and rec.n_exact < 1
        ],
    }
