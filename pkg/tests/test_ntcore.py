import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from golombcount.ntcore import (
    NotAnOddPrimeError,
    build_context,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_primitive_root,
    mobius,
    multiplicative_order,
    primes_in_range,
    squarefree_divisors,
)
from oracles import naive_is_prime, order_by_loop, primitive_root_set, sieve_tables
from conftest import SMALL_PRIMES


@pytest.mark.parametrize("n, factors", [(1, ()), (6, ((2, 1), (3, 1))), (12, ((2, 2), (3, 1)))])
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


@pytest.mark.parametrize("n", [0, -3])
def test_factorize_rejects_nonpositive(n):
    with pytest.raises(ValueError):
        factorize(n)


@given(st.integers(1, 10**7))
def test_factorization_invariants(n):
    f = factorize(n)
    assert f.value() == n
    qs = [q for q, _ in f.factors]
    assert qs == sorted(set(qs))
    assert all(naive_is_prime(q) and e >= 1 for q, e in f.factors)


@pytest.mark.parametrize("k, mu, phi", [(1, 1, 1), (6, 1, 2), (12, 0, 4)])
def test_mobius_phi_examples(k, mu, phi):
    assert mobius(k) == mu
    assert euler_phi(k) == phi


@pytest.mark.slow
def test_mobius_phi_match_sieve_to_a_million():
    n = 10**6
    mu, phi = sieve_tables(n)
    bad = [k for k in range(1, n + 1) if mobius(k) != mu[k] or euler_phi(k) != phi[k]]
    assert bad == []


def test_is_prime_and_sieve():
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if naive_is_prime(n)]
    assert primes_in_range(5, 13) == [5, 7, 11, 13]
    assert primes_in_range(20, 10) == []


@given(st.integers(2, 5000))
def test_divisors(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@pytest.mark.parametrize("p", [2, 4, 9, 15, 1, 0])
def test_build_context_rejects_non_odd_primes(p):
    with pytest.raises(NotAnOddPrimeError):
        build_context(p)


@pytest.mark.parametrize(
    "p, generator, roots",
    [(7, 3, {3, 5}), (13, 2, {2, 6, 7, 11}), (11, 2, {2, 6, 7, 8}), (3, 2, {2})],
)
def test_context_examples(p, generator, roots):
    ctx = build_context(p)
    assert ctx.generator == generator
    assert set(ctx.primitive_roots().tolist()) == roots == primitive_root_set(p)
    assert ctx.phi_pm1 == len(roots)


def test_squarefree_divisors_of_ten():
    assert build_context(11).squarefree_divisors == (1, 2, 5, 10)
    assert squarefree_divisors(factorize(12)) == [1, 2, 3, 6]


def test_context_invariants(prime):
    ctx = build_context(prime)
    p, g = prime, ctx.generator
    ind = ctx.index_table
    assert len(ind) == p - 1
    assert sorted(ind.tolist()) == list(range(p - 1))
    assert ctx.ind(1) == 0 and ctx.ind(g) == 1
    for a in range(1, p):
        assert pow(g, int(ind[a - 1]), p) == a
    assert len(ctx.squarefree_divisors) == 2**ctx.omega_pm1
    assert sum(abs(mobius(k)) for k in ctx.squarefree_divisors) == 2**ctx.omega_pm1
    assert ctx.pr_mask.sum() == euler_phi(p - 1) == ctx.phi_pm1
    assert not ctx.pr_mask.flags.writeable


def test_index_is_a_homomorphism(prime):
    ctx = build_context(prime)
    p = prime
    a = np.arange(1, p)
    prod = (a[:, None] * a[None, :]) % p
    lhs = ctx.log[prod]
    rhs = (ctx.log[a][:, None] + ctx.log[a][None, :]) % (p - 1)
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("a, expected", [(3, True), (2, False), (0, False)])
def test_is_primitive_root_examples(a, expected):
    assert is_primitive_root(a, build_context(7)) is expected


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_is_primitive_root_matches_order_oracle(p):
    ctx = build_context(p)
    got = [is_primitive_root(a, ctx) for a in range(p)]
    want = [a != 0 and order_by_loop(a, p) == p - 1 for a in range(p)]
    assert got == want
    assert sum(got) == euler_phi(p - 1)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_multiplicative_order_matches_loop(p):
    assert all(multiplicative_order(a, p) == order_by_loop(a, p) for a in range(1, p))


def test_is_primitive_root_range_check():
    with pytest.raises(ValueError):
        is_primitive_root(7, build_context(7))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(primes_in_range(1000, 200000)))
def test_large_context_tables(p):
    ctx = build_context(p)
    t = np.arange(p - 1)
    # spot check g**ind(a) = a through Python pow on a sample of residues
    for a in [1, 2, p - 1, p // 2, p // 3 + 1]:
        assert pow(ctx.generator, ctx.ind(a), p) == a
    assert np.array_equal(np.sort(ctx.powers), np.arange(1, p))
    assert ctx.log[ctx.powers].tolist() == t.tolist()
    assert int(ctx.pr_mask.sum()) == euler_phi(p - 1)
    assert math.gcd(ctx.ind(ctx.generator), p - 1) == 1
