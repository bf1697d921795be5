"""The counting function N(a_1..a_r; p), computed three independent ways.

N counts beta in A(p) with a_i - beta in A(p) for every i, i.e. tuples of
primitive roots alpha_1..alpha_r, beta with alpha_i + beta = a_i (mod p).

* ``count_bruteforce`` reads the primitive-root mask directly.
* ``count_indicator`` replaces every membership test with the character-sum
  indicator.
* ``sigma_split`` expands the product of indicators into the full character
  sum and separates the all-principal part (sigma1) from the rest (sigma2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .characters import (
    INDICATOR_TOL,
    NumericalDriftError,
    characters_of_order,
    chi_values,
    indicator_values,
    ramanujan_values,
)
from .ntcore import PrimeContext, euler_phi, mobius

DEFAULT_BUDGET = 10**8
ROUNDING_TOL = 1e-3


class TupleError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    def __init__(self, estimated: int, budget: int, method: str):
        self.estimated = estimated
        self.budget = budget
        super().__init__(
            f"{method} decomposition needs ~{estimated:.3e} character evaluations, "
            f"budget is {budget:.3e}"
        )


@dataclass(frozen=True)
class TargetTuple:
    """Shifts a_1..a_r, reduced mod p, nonzero and pairwise distinct. Order is kept."""

    p: int
    shifts: tuple[int, ...]

    def __post_init__(self):
        reduced = tuple(int(a) % self.p for a in self.shifts)
        if not reduced:
            raise TupleError("need at least one shift (r >= 1)")
        if 0 in reduced:
            raise TupleError(f"shifts must be nonzero mod {self.p}: {list(self.shifts)}")
        if len(set(reduced)) != len(reduced):
            raise TupleError(f"shifts must be pairwise distinct mod {self.p}: {list(self.shifts)}")
        object.__setattr__(self, "shifts", reduced)

    @property
    def r(self) -> int:
        return len(self.shifts)

    def canonical(self) -> TargetTuple:
        return TargetTuple(self.p, tuple(sorted(self.shifts)))


def _check(tup: TargetTuple, ctx: PrimeContext) -> None:
    if tup.p != ctx.p:
        raise TupleError(f"tuple built for p={tup.p}, context is p={ctx.p}")


def _arguments(tup: TargetTuple, p: int) -> list[np.ndarray]:
    """Residues fed to each factor for beta = 1..p: beta itself, then a_i - beta."""
    beta = np.arange(1, p + 1) % p
    return [beta] + [(a - beta) % p for a in tup.shifts]


def count_bruteforce(tup: TargetTuple, ctx: PrimeContext) -> int:
    _check(tup, ctx)
    beta = ctx.primitive_roots()
    ok = np.ones(len(beta), dtype=bool)
    for a in tup.shifts:
        ok &= ctx.pr_mask[(a - beta) % ctx.p]
    return int(ok.sum())


def count_indicator(tup: TargetTuple, ctx: PrimeContext) -> float:
    _check(tup, ctx)
    ind = indicator_values(ctx)
    beta = np.arange(1, ctx.p)
    prod = ind[beta].copy()
    for a in tup.shifts:
        prod *= ind[(a - beta) % ctx.p]
    return float(prod.sum())


def rounded_count(value: float) -> int:
    n = round(value)
    if abs(value - n) > ROUNDING_TOL:
        raise NumericalDriftError(f"count {value!r} is {abs(value - n):.3g} away from an integer")
    return int(n)


def main_term(tup: TargetTuple, ctx: PrimeContext) -> float:
    _check(tup, ctx)
    return ctx.phi_pm1 ** (tup.r + 1) / ctx.p**tup.r


def _density(tup: TargetTuple, ctx: PrimeContext) -> float:
    return (ctx.phi_pm1 / (ctx.p - 1)) ** (tup.r + 1)


def sigma1_exact(tup: TargetTuple, ctx: PrimeContext) -> float:
    """All-principal part: beta runs over p - (r + 1) residues avoiding 0 and every a_i."""
    _check(tup, ctx)
    return _density(tup, ctx) * (ctx.p - (tup.r + 1))


def explicit_error_bound(tup: TargetTuple, ctx: PrimeContext) -> float:
    """Upper bound on |sigma2|: Weil's (r+1)sqrt(p) for each non-all-principal
    tuple of squarefree divisors, of which there are 2**((r+1)omega(p-1)) - 1."""
    _check(tup, ctx)
    r = tup.r
    ntuples = 2 ** ((r + 1) * ctx.omega_pm1) - 1
    return _density(tup, ctx) * (r + 1) * math.sqrt(ctx.p) * ntuples


def decomposition_cost(tup: TargetTuple, ctx: PrimeContext, method: str = "grouped") -> int:
    """Estimated character evaluations for ``sigma_split``."""
    if method == "grouped":
        width = len(ctx.squarefree_divisors)
    elif method == "characters":
        width = sum(euler_phi(k) for k in ctx.squarefree_divisors)
    else:
        raise ValueError(f"unknown decomposition method {method!r}")
    return width ** (tup.r + 1) * ctx.p


@dataclass
class CountBreakdown:
    p: int
    shifts: tuple[int, ...]
    n_exact: int
    main_term: float
    sigma1_exact_form: float
    error: float
    explicit_bound: float
    sigma1: Optional[float] = None
    sigma2: Optional[float] = None
    total: Optional[float] = None
    # max over non-all-principal groups of |beta-sum| / (group size * (r+1) sqrt(p))
    max_weil_ratio: Optional[float] = None
    method: Optional[str] = None

    @property
    def r(self) -> int:
        return len(self.shifts)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["shifts"] = list(self.shifts)
        return d


def _einsum_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    """T[i0,..,ir] = sum_b prod_c mats[c][i_c, b]."""
    letters = "ijklmnopqrstuvw"
    if len(mats) > len(letters):
        raise ValueError("too many factors")
    inputs = ",".join(f"{letters[c]}z" for c in range(len(mats)))
    out = letters[: len(mats)]
    return np.einsum(f"{inputs}->{out}", *mats, optimize=True)


def _split_grouped(tup: TargetTuple, ctx: PrimeContext):
    """Terms grouped by divisor tuple (k, k_1..k_r).

    Inside one group the sum over d, d_1..d_r of the beta-sums equals the
    beta-sum of products of sum_d chi_{d,k}, so each group costs O(p).
    """
    ks = ctx.squarefree_divisors
    weights = np.array([mobius(k) / euler_phi(k) for k in ks])
    sizes = np.array([euler_phi(k) for k in ks], dtype=float)
    args = _arguments(tup, ctx.p)
    rows = np.stack([ramanujan_values(k, ctx) for k in ks])
    mats = [rows[:, x] for x in args]
    sums = _einsum_all(mats)
    nfac = len(mats)

    w = weights
    size = sizes
    for _ in range(nfac - 1):
        w = np.multiply.outer(w, weights)
        size = np.multiply.outer(size, sizes)
    principal = (0,) * nfac
    weighted = w * sums
    s1 = float(sums[principal])
    rest = float(weighted.sum() - weighted[principal])

    ratio = np.abs(sums) / (size * nfac * math.sqrt(ctx.p))
    ratio[principal] = 0.0
    return s1, rest, float(ratio.max())


def _split_characters(tup: TargetTuple, ctx: PrimeContext):
    """Every character tuple (chi_{d,k}, chi_{d_1,k_1}, ...) gets its own beta-sum.

    The last two factors are contracted with a matrix product; earlier factors
    are looped over explicitly.
    """
    chars = [c for k in ctx.squarefree_divisors for c in characters_of_order(k)]
    weights = np.array([mobius(c.k) / euler_phi(c.k) for c in chars])
    table = np.stack([chi_values(c, ctx) for c in chars])
    args = _arguments(tup, ctx.p)
    mats = [table[:, x] for x in args]
    nfac = len(mats)
    sqrt_p = math.sqrt(ctx.p)

    *prefix_mats, left, right = mats
    s1 = None
    rest = 0j
    worst = 0.0
    n = len(chars)
    for idx in itertools.product(range(n), repeat=len(prefix_mats)):
        v = np.ones(ctx.p, dtype=complex)
        wp = 1.0
        for m, i in zip(prefix_mats, idx):
            v = v * m[i]
            wp *= weights[i]
        block = (left * v) @ right.T
        contrib = wp * (weights @ block @ weights)
        mags = np.abs(block) / (nfac * sqrt_p)
        if all(i == 0 for i in idx):
            s1 = block[0, 0]
            contrib -= block[0, 0]
            mags[0, 0] = 0.0
        rest += contrib
        worst = max(worst, float(mags.max()))
    if abs(rest.imag) > INDICATOR_TOL or abs(s1.imag) > INDICATOR_TOL:
        raise NumericalDriftError(f"decomposition mod {ctx.p} has imaginary residue {rest.imag:g}")
    return float(s1.real), float(rest.real), worst


def sigma_split(
    tup: TargetTuple,
    ctx: PrimeContext,
    budget: int = DEFAULT_BUDGET,
    method: str = "grouped",
) -> CountBreakdown:
    """Full character-sum expansion of N with the sigma1/sigma2 separation.

    ``method="grouped"`` sums each divisor tuple in one pass (cost
    2**((r+1)omega) * p); ``method="characters"`` evaluates every character
    tuple separately (cost (sum of phi(k))**(r+1) * p) and is the literal
    expansion. Both refuse to run past ``budget`` character evaluations.
    """
    _check(tup, ctx)
    cost = decomposition_cost(tup, ctx, method)
    if cost > budget:
        raise BudgetExceededError(cost, budget, method)
    if method == "grouped":
        s1_raw, rest, ratio = _split_grouped(tup, ctx)
    else:
        s1_raw, rest, ratio = _split_characters(tup, ctx)

    density = _density(tup, ctx)
    sigma1 = density * s1_raw
    sigma2 = density * rest
    total = sigma1 + sigma2
    rounded_count(total)

    n = count_bruteforce(tup, ctx)
    mt = main_term(tup, ctx)
    return CountBreakdown(
        p=ctx.p,
        shifts=tup.shifts,
        n_exact=n,
        main_term=mt,
        sigma1_exact_form=sigma1_exact(tup, ctx),
        error=n - mt,
        explicit_bound=explicit_error_bound(tup, ctx),
        sigma1=sigma1,
        sigma2=sigma2,
        total=total,
        max_weil_ratio=ratio,
        method=method,
    )


def count_breakdown(tup: TargetTuple, ctx: PrimeContext) -> CountBreakdown:
    """Breakdown without the character expansion (sigma fields left empty)."""
    n = count_bruteforce(tup, ctx)
    mt = main_term(tup, ctx)
    return CountBreakdown(
        p=ctx.p,
        shifts=tup.shifts,
        n_exact=n,
        main_term=mt,
        sigma1_exact_form=sigma1_exact(tup, ctx),
        error=n - mt,
        explicit_bound=explicit_error_bound(tup, ctx),
    )
