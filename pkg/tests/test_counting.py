import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from golombcount.counting import (
    BudgetExceededError,
    TargetTuple,
    TupleError,
    count_breakdown,
    count_bruteforce,
    count_indicator,
    decomposition_cost,
    explicit_error_bound,
    main_term,
    rounded_count,
    sigma1_exact,
    sigma_split,
)
from golombcount.characters import NumericalDriftError
from golombcount.ntcore import build_context, primes_in_range
from oracles import count_by_enumeration


def tt(p, *shifts):
    return TargetTuple(p, shifts)


def test_target_tuple_validation():
    assert tt(7, 8, 2).shifts == (1, 2)
    with pytest.raises(TupleError):
        tt(7, 1, 8)
    with pytest.raises(TupleError):
        tt(7, 7)
    with pytest.raises(TupleError):
        TargetTuple(7, ())
    with pytest.raises(TupleError):
        count_bruteforce(tt(7, 1), build_context(11))


@pytest.mark.parametrize(
    "p, shifts, n",
    [(7, (1,), 2), (13, (1,), 1), (7, (1, 2), 0), (11, (1,), 1), (5, (1,), 1), (7, (1, 2, 3), 0)],
)
def test_count_examples(p, shifts, n):
    ctx = build_context(p)
    t = TargetTuple(p, shifts)
    assert count_by_enumeration(shifts, p) == n
    assert count_bruteforce(t, ctx) == n
    assert abs(count_indicator(t, ctx) - n) < 1e-6


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_bruteforce_matches_enumeration(data):
    p = data.draw(st.sampled_from(primes_in_range(5, 60)))
    r = data.draw(st.integers(1, min(3, p - 2)))
    shifts = data.draw(st.lists(st.integers(1, p - 1), min_size=r, max_size=r, unique=True))
    assert count_bruteforce(TargetTuple(p, shifts), build_context(p)) == count_by_enumeration(shifts, p)


@pytest.mark.parametrize("p, r, want", [(7, 1, 4 / 7), (7, 2, 8 / 49), (13, 1, 16 / 13)])
def test_main_term_examples(p, r, want):
    assert main_term(TargetTuple(p, tuple(range(1, r + 1))), build_context(p)) == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("p", [7, 13])
def test_explicit_bound_examples(p):
    ctx = build_context(p)
    want = (ctx.phi_pm1 / (p - 1)) ** 2 * 2 * math.sqrt(p) * (2**4 - 1)
    assert explicit_error_bound(tt(p, 1), ctx) == pytest.approx(want, rel=1e-15)
    assert explicit_error_bound(tt(7, 1), build_context(7)) == pytest.approx(8.819171036881968, rel=1e-12)
    assert explicit_error_bound(tt(13, 1), build_context(13)) == pytest.approx(12.01850425154663, rel=1e-12)


@pytest.mark.parametrize("method", ["grouped", "characters"])
@pytest.mark.parametrize("p, sigma1", [(7, 5 / 9), (13, 11 / 9)])
def test_sigma_split_examples(method, p, sigma1):
    b = sigma_split(tt(p, 1), build_context(p), method=method)
    assert abs(b.sigma1 - sigma1) < 1e-6
    assert abs(b.sigma1_exact_form - sigma1) < 1e-12
    assert abs(b.total - b.n_exact) < 1e-6
    assert abs(b.sigma2) <= b.explicit_bound
    assert b.n_exact == {7: 2, 13: 1}[p]


@pytest.mark.parametrize("p", primes_in_range(5, 40))
@pytest.mark.parametrize("r", [1, 2, 3])
def test_grouped_and_character_expansions_agree(p, r):
    if r > p - 2:
        return
    ctx = build_context(p)
    for shifts in itertools.islice(itertools.permutations(range(1, p), r), 0, None, max(1, p)):
        t = TargetTuple(p, shifts)
        if decomposition_cost(t, ctx, "characters") > 5 * 10**6:
            continue
        g = sigma_split(t, ctx, method="grouped")
        c = sigma_split(t, ctx, method="characters")
        assert abs(g.sigma1 - c.sigma1) < 1e-9
        assert abs(g.sigma2 - c.sigma2) < 1e-6
        assert rounded_count(g.total) == rounded_count(c.total) == count_bruteforce(t, ctx)
        # every single character-tuple sum obeys Weil's bound with s = r + 1
        assert c.max_weil_ratio <= 1 + 1e-9
        assert g.max_weil_ratio <= 1 + 1e-9


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_decomposition_invariants(data):
    p = data.draw(st.sampled_from(primes_in_range(5, 300)))
    r = data.draw(st.integers(1, 2))
    shifts = data.draw(st.lists(st.integers(1, p - 1), min_size=r, max_size=r, unique=True))
    ctx = build_context(p)
    t = TargetTuple(p, shifts)
    b = sigma_split(t, ctx)
    assert b.n_exact == count_bruteforce(t, ctx) == round(b.sigma1 + b.sigma2)
    assert abs(b.sigma1 + b.sigma2 - b.n_exact) < 1e-6
    assert abs(b.sigma1 - sigma1_exact(t, ctx)) < 1e-6
    assert abs(b.sigma2) <= b.explicit_bound
    assert b.error == b.n_exact - b.main_term


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_count_is_permutation_invariant(data):
    p = data.draw(st.sampled_from(primes_in_range(7, 500)))
    shifts = data.draw(st.lists(st.integers(1, p - 1), min_size=2, max_size=4, unique=True))
    perm = data.draw(st.permutations(shifts))
    ctx = build_context(p)
    assert count_bruteforce(TargetTuple(p, shifts), ctx) == count_bruteforce(TargetTuple(p, perm), ctx)
    assert count_indicator(TargetTuple(p, shifts), ctx) == pytest.approx(
        count_indicator(TargetTuple(p, perm), ctx), abs=1e-6
    )


def test_budget_refusal_names_cost():
    ctx = build_context(211)
    t = tt(211, 1, 2)
    cost = decomposition_cost(t, ctx, "characters")
    assert cost == 210**3 * 211
    with pytest.raises(BudgetExceededError) as exc:
        sigma_split(t, ctx, method="characters")
    assert exc.value.estimated == cost
    assert f"{cost:.3e}" in str(exc.value)
    with pytest.raises(BudgetExceededError):
        sigma_split(t, ctx, budget=100)


def test_unknown_method():
    with pytest.raises(ValueError):
        sigma_split(tt(7, 1), build_context(7), method="fft")


def test_rounded_count():
    assert rounded_count(2.0000004) == 2
    with pytest.raises(NumericalDriftError):
        rounded_count(2.01)


def test_breakdown_without_decomposition():
    b = count_breakdown(tt(7, 1), build_context(7))
    assert b.n_exact == 2 and b.sigma1 is None and b.sigma2 is None
    d = b.to_dict()
    assert d["shifts"] == [1] and d["main_term"] == 4 / 7


def test_golomb_small_primes():
    for p in primes_in_range(5, 2000):
        assert count_bruteforce(tt(p, 1), build_context(p)) >= 1, p
