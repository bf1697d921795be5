"""Dirichlet characters mod p built on the discrete-log table.

chi_{d,k}(a) = exp(2 pi i d ind(a) / k) for units a and 0 on multiples of p.
The exponent (d * ind(a)) mod k is kept as an exact integer and only turned
into a complex number by a lookup into a table of k-th roots of unity, so no
phase error accumulates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .ntcore import PrimeContext, euler_phi, mobius

# tolerances: single character sums, then indicator / decomposition totals
SUM_TOL = 1e-9
INDICATOR_TOL = 1e-6


class InvalidCharacterError(ValueError):
    pass


class NumericalDriftError(ArithmeticError):
    """A floating-point result strayed further from its exact value than allowed."""


@dataclass(frozen=True, order=True)
class CharacterId:
    k: int
    d: int = 1

    def __post_init__(self):
        if self.k < 1 or not 1 <= self.d <= self.k or math.gcd(self.d, self.k) != 1:
            raise InvalidCharacterError(f"bad character (d={self.d}, k={self.k})")

    @property
    def is_principal(self) -> bool:
        return self.k == 1

    def check(self, ctx: PrimeContext) -> None:
        if (ctx.p - 1) % self.k:
            raise InvalidCharacterError(f"k={self.k} does not divide p-1={ctx.p - 1}")

    def exponent(self, ctx: PrimeContext) -> int:
        """j with chi_{d,k} = psi_j, where psi_j(g) = exp(2 pi i j / (p-1))."""
        return self.d * (ctx.p - 1) // self.k


PRINCIPAL = CharacterId(1, 1)


def characters_of_order(k: int) -> list[CharacterId]:
    return [CharacterId(k, d) for d in range(1, k + 1) if math.gcd(d, k) == 1]


@lru_cache(maxsize=None)
def roots_of_unity(k: int) -> np.ndarray:
    """exp(2 pi i t / k) for t = 0..k-1 (read-only, cached per k)."""
    t = np.arange(k)
    table = np.exp(2j * np.pi * t / k)
    # pin the values that have exact representations
    table[0] = 1.0
    if k % 2 == 0:
        table[k // 2] = -1.0
    if k % 4 == 0:
        table[k // 4] = 1j
        table[3 * k // 4] = -1j
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def ramanujan_table(k: int) -> np.ndarray:
    """c_k(t) = sum over d coprime to k of exp(2 pi i d t / k), for t = 0..k-1.

    Summed from the root table rather than from the closed form, so it stays a
    character sum and not an arithmetic shortcut. Real up to rounding.
    """
    roots = roots_of_unity(k)
    ds = np.array([c.d for c in characters_of_order(k)])
    t = np.arange(k)
    table = roots[(ds[:, None] * t[None, :]) % k].sum(axis=0)
    if np.abs(table.imag).max(initial=0.0) > SUM_TOL * max(1, len(ds)):
        raise NumericalDriftError(f"Ramanujan sum for k={k} has imaginary part")
    out = table.real.copy()
    out.setflags(write=False)
    return out


def chi_eval(chi: CharacterId, a: int, ctx: PrimeContext) -> complex:
    chi.check(ctx)
    if not 0 <= a < ctx.p:
        raise ValueError(f"residue {a} outside [0, {ctx.p})")
    if a == 0:
        return 0j
    t = (chi.d * int(ctx.log[a])) % chi.k
    return complex(roots_of_unity(chi.k)[t])


def chi_values(chi: CharacterId, ctx: PrimeContext) -> np.ndarray:
    """chi(x) for x = 0..p-1 as a complex array."""
    chi.check(ctx)
    out = roots_of_unity(chi.k)[(chi.d * ctx.log) % chi.k]
    out[0] = 0
    return out


def ramanujan_values(k: int, ctx: PrimeContext) -> np.ndarray:
    """sum_{d coprime to k} chi_{d,k}(x) for x = 0..p-1 (real)."""
    out = ramanujan_table(k)[ctx.log % k]
    out[0] = 0.0
    return out


def indicator(a: int, ctx: PrimeContext) -> float:
    """Character-sum indicator of primitive roots: 1.0 on A(p), 0.0 elsewhere.

    Only squarefree k contribute since mobius(k) vanishes otherwise.
    """
    if not 0 <= a < ctx.p:
        raise ValueError(f"residue {a} outside [0, {ctx.p})")
    if a == 0:
        return 0.0
    ind = int(ctx.log[a])
    total = 0j
    for k in ctx.squarefree_divisors:
        ds = np.array([c.d for c in characters_of_order(k)])
        inner = roots_of_unity(k)[(ds * ind) % k].sum()
        total += mobius(k) / euler_phi(k) * inner
    total *= ctx.phi_pm1 / (ctx.p - 1)
    if abs(total.imag) >= INDICATOR_TOL:
        raise NumericalDriftError(f"indicator({a}) mod {ctx.p} has imaginary part {total.imag:g}")
    return total.real


def indicator_values(ctx: PrimeContext) -> np.ndarray:
    """indicator(x) for every x = 0..p-1 at once."""
    total = np.zeros(ctx.p)
    for k in ctx.squarefree_divisors:
        total += mobius(k) / euler_phi(k) * ramanujan_values(k, ctx)
    return total * (ctx.phi_pm1 / (ctx.p - 1))


def weil_sum(chis: Sequence[CharacterId], shifts: Sequence[int], ctx: PrimeContext) -> complex:
    """sum_{x=1}^{p} prod_j chi_j(x + b_j), over a complete residue system."""
    if len(chis) != len(shifts) or not chis:
        raise ValueError("need equally many characters and shifts, at least one")
    residues = [b % ctx.p for b in shifts]
    if len(set(residues)) != len(residues):
        raise ValueError(f"shifts must be pairwise distinct mod {ctx.p}: {list(shifts)}")
    x = np.arange(1, ctx.p + 1)
    prod = np.ones(ctx.p, dtype=complex)
    for chi, b in zip(chis, residues):
        prod *= chi_values(chi, ctx)[(x + b) % ctx.p]
    return complex(prod.sum())


class WeilCheck(NamedTuple):
    value: complex
    bound: float
    holds: bool


def check_weil_bound(chis: Sequence[CharacterId], shifts: Sequence[int], ctx: PrimeContext) -> WeilCheck:
    if all(c.is_principal for c in chis):
        raise ValueError("Weil bound needs at least one nonprincipal character")
    value = weil_sum(chis, shifts, ctx)
    bound = len(chis) * math.sqrt(ctx.p)
    return WeilCheck(value, bound, abs(value) <= bound + SUM_TOL)
