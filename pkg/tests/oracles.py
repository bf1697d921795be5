"""Slow, obviously-correct reference computations shared by the tests.

Nothing here touches index tables or characters.
"""

import itertools
import math


def order_by_loop(a, p):
    x, t = a % p, 1
    while x != 1:
        x = x * a % p
        t += 1
    return t


def primitive_root_set(p):
    return {a for a in range(1, p) if order_by_loop(a, p) == p - 1}


def count_by_enumeration(shifts, p):
    """N by looping over every (beta, alpha_1..alpha_r) in A(p)^(r+1)."""
    ap = sorted(primitive_root_set(p))
    total = 0
    for beta in ap:
        for alphas in itertools.product(ap, repeat=len(shifts)):
            if all((al + beta - a) % p == 0 for al, a in zip(alphas, shifts)):
                total += 1
    return total


def legendre(x, p):
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def sieve_tables(n):
    """mobius and phi for 0..n by a linear sieve."""
    mu = [0] * (n + 1)
    phi = list(range(n + 1))
    mu[1] = 1
    is_comp = [False] * (n + 1)
    primes = []
    for i in range(2, n + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
            phi[i] = i - 1
        for q in primes:
            if i * q > n:
                break
            is_comp[i * q] = True
            if i % q == 0:
                mu[i * q] = 0
                phi[i * q] = phi[i] * q
                break
            mu[i * q] = -mu[i]
            phi[i * q] = phi[i] * (q - 1)
    return mu, phi


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))
