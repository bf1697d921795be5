"""Elementary number theory and the per-prime precomputed context.

Everything here is trial-division scale: primes up to ~10^7, where a dense
discrete-log table of length p - 1 fits comfortably in memory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np


class NotAnOddPrimeError(ValueError):
    """Raised when a modulus is even, composite, or otherwise not an odd prime."""


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.factors)

    @property
    def omega(self) -> int:
        return len(self.factors)

    def value(self) -> int:
        return math.prod(q**e for q, e in self.factors)


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    factors = []
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            factors.append((q, e))
        q += 1 if q == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % q for q in range(3, math.isqrt(n) + 1, 2))


def mobius(k: int) -> int:
    f = factorize(k)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if f.omega % 2 else 1


def euler_phi(k: int) -> int:
    phi = k
    for q, _ in factorize(k).factors:
        phi = phi // q * (q - 1)
    return phi


def omega(n: int) -> int:
    """Number of distinct prime factors of n."""
    return factorize(n).omega


def squarefree_divisors(f: Factorization) -> list[int]:
    """All squarefree divisors of f.n in ascending order (2**omega of them)."""
    qs = f.primes
    divs = [math.prod(c) for size in range(len(qs) + 1) for c in combinations(qs, size)]
    return sorted(divs)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def multiplicative_order(a: int, p: int) -> int:
    """Order of a in (Z/pZ)^*: the least divisor t of p - 1 with a**t = 1.

    Works from modular powers alone, independent of any generator or index
    table, so it serves as the membership oracle for A(p).
    """
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    for t in divisors(p - 1):
        if pow(a, t, p) == 1:
            return t
    raise ArithmeticError(f"{p} is not prime")


def find_generator(p: int, pm1_fact: Factorization) -> int:
    # ascending search so contexts are reproducible
    cofactors = [(p - 1) // q for q in pm1_fact.primes]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return g
    raise AssertionError(f"no generator found mod {p}")


def _powers(g: int, p: int) -> np.ndarray:
    """g**t mod p for t = 0..p-2, built in blocks so the work stays in numpy."""
    n = p - 1
    block = max(1, math.isqrt(n))
    head = np.empty(block, dtype=np.int64)
    x = 1
    for t in range(block):
        head[t] = x
        x = x * g % p
    step = pow(g, block, p)
    nblocks = -(-n // block)
    scale = np.empty(nblocks, dtype=np.int64)
    y = 1
    for i in range(nblocks):
        scale[i] = y
        y = y * step % p
    out = (scale[:, None] * head[None, :]) % p
    return out.ravel()[:n]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PrimeContext:
    """Immutable per-prime tables. Safe to share across workers read-only.

    ``log`` has length p with ``log[0] == -1``; ``index_table`` is the view
    ``log[1:]`` so that ``index_table[a - 1] == ind(a)``.
    """

    p: int
    pm1_fact: Factorization
    phi_pm1: int
    omega_pm1: int
    squarefree_divisors: tuple[int, ...]
    generator: int
    powers: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    pr_mask: np.ndarray = field(repr=False)

    @property
    def index_table(self) -> np.ndarray:
        return self.log[1:]

    def ind(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ValueError("ind(0) is undefined")
        return int(self.log[a])

    def primitive_roots(self) -> np.ndarray:
        return np.flatnonzero(self.pr_mask)


def check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise NotAnOddPrimeError(f"modulus must be an odd prime, got {p}")
    if not is_prime(p):
        raise NotAnOddPrimeError(f"{p} is composite")


@lru_cache(maxsize=64)
def build_context(p: int) -> PrimeContext:
    check_odd_prime(p)
    f = factorize(p - 1)
    g = find_generator(p, f)
    powers = _powers(g, p)
    log = np.full(p, -1, dtype=np.int64)
    log[powers] = np.arange(p - 1, dtype=np.int64)
    pr_mask = np.zeros(p, dtype=bool)
    pr_mask[1:] = np.gcd(log[1:], p - 1) == 1
    return PrimeContext(
        p=p,
        pm1_fact=f,
        phi_pm1=euler_phi(p - 1),
        omega_pm1=f.omega,
        squarefree_divisors=tuple(squarefree_divisors(f)),
        generator=g,
        powers=_readonly(powers),
        log=_readonly(log),
        pr_mask=_readonly(pr_mask),
    )


def is_primitive_root(a: int, ctx: PrimeContext) -> bool:
    if not 0 <= a < ctx.p:
        raise ValueError(f"residue {a} outside [0, {ctx.p})")
    if a == 0:
        return False
    return math.gcd(int(ctx.log[a]), ctx.p - 1) == 1


def primes_in_range(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi] by a plain sieve."""
    if hi < 2 or hi < lo:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(x) for x in np.flatnonzero(sieve) if x >= lo]
