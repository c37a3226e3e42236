import random

import pytest
from hypothesis import given, settings, strategies as st

from milnorhomfly import (
    BudgetExceeded,
    InvalidDiagram,
    Laurent1,
    Laurent2,
    SkeinMemo,
    braid_closure,
    coeff_poly,
    connected_sum,
    deriv_at_one,
    homflypt,
    homflypt_braid,
    lowest_coeff_identity_check,
    model_L_n,
    trace_closure,
    unknot,
    unlink,
    word_to_diagram,
    parse_word,
)
from milnorhomfly.homfly import default_budget, unlink_polynomial

from _helpers import random_band_word, random_braid, random_crossing_diagram, random_diagram

HOPF = Laurent2.parse("t*z^-1 - t^3*z^-1 + t*z")
TREFOIL = Laurent2.parse("2*t^2 - t^4 + t^2*z^2")
FIGURE_EIGHT = Laurent2.parse("t^-2 - 1 + t^2 - z^2")
CINQUEFOIL = Laurent2.parse("3*t^4 - 2*t^6 + 4*t^4*z^2 - t^6*z^2 + t^4*z^4")


def P(D, memo=None):
    return homflypt(D, memo=memo if memo is not None else SkeinMemo())


def skein_holds(D, k, memo=None):
    plus, minus, zero = D.with_sign(k, 1), D.with_sign(k, -1), D.smooth(k)
    return P(plus, memo).shift(1, -1, 0) - P(minus, memo).shift(1, 1, 0) == P(zero, memo).shift(1, 0, 1)


def test_unknot_and_unlinks():
    assert P(unknot()) == Laurent2.constant(1)
    delta = Laurent2.parse("t^-1*z^-1 - t*z^-1")
    assert P(unlink(3)) == delta * delta == unlink_polynomial(3)
    assert P(braid_closure([1, -1], 2)) == delta


@pytest.mark.parametrize(
    "gens, n, want",
    [
        ([1, 1], 2, HOPF),
        ([1, 1, 1], 2, TREFOIL),
        ([1, -2, 1, -2], 3, FIGURE_EIGHT),
        ([1] * 5, 2, CINQUEFOIL),
        ([-1, -1, -1], 2, TREFOIL.mirror()),
        ([1, 2], 3, Laurent2.constant(1)),
    ],
)
def test_known_polynomials(gens, n, want):
    assert P(braid_closure(gens, n)) == want
    assert homflypt_braid(gens, n) == want


def test_open_or_foreign_input_rejected():
    with pytest.raises(InvalidDiagram):
        homflypt(word_to_diagram(parse_word("A12", 2)))
    with pytest.raises(InvalidDiagram):
        homflypt("not a diagram")
    with pytest.raises(ValueError):
        homflypt_braid([3], 3)


def test_budget():
    D = braid_closure([1, -2, 1, -2, 1, -2, 3, -3, 2], 4)
    with pytest.raises(BudgetExceeded):
        homflypt(D, budget=3, memo=SkeinMemo())
    with pytest.raises(BudgetExceeded):
        homflypt_braid([1, -2, 1, -2, 1, -2], 3, budget=3)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("MH_BUDGET", "5")
    assert default_budget() == 5
    with pytest.raises(BudgetExceeded):
        homflypt(braid_closure([1, -2, 1, -2, 1, -2, 1, -2], 3), memo=SkeinMemo())
    monkeypatch.delenv("MH_BUDGET")
    assert default_budget() == 10**7


def test_memo_never_rebinds():
    memo = SkeinMemo()
    memo.put(("k",), HOPF)
    memo.put(("k",), HOPF)
    with pytest.raises(AssertionError):
        memo.put(("k",), TREFOIL)


def test_lowest_coefficient_on_hopf():
    assert coeff_poly(HOPF, -1) == Laurent1({1: 1, 3: -1})
    for n in range(-3, 4):
        L = model_L_n(n)
        want = Laurent1.t(2 * n) * Laurent1({-1: 1, 1: -1})
        assert coeff_poly(P(L), -1) == want
        assert lowest_coeff_identity_check(L)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_skein_relation(seed):
    rng = random.Random(seed)
    D = random_crossing_diagram(rng, 12)
    assert skein_holds(D, rng.randrange(D.n_crossings))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_engines_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    gens = random_braid(rng, n, rng.randint(0, 12)) if n > 1 else []
    assert P(braid_closure(gens, n)) == homflypt_braid(gens, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_markov_moves(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    gens = random_braid(rng, n, rng.randint(1, 8))
    base = homflypt_braid(gens, n)
    assert homflypt_braid(gens + [rng.choice((n, -n))], n + 1) == base
    cut = rng.randrange(len(gens))
    assert homflypt_braid(gens[cut:] + gens[:cut], n) == base
    assert P(braid_closure(gens, n)).mirror() == P(braid_closure([-g for g in gens], n))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_knot_invariants_at_one(seed):
    rng = random.Random(seed)
    while True:
        D = random_diagram(rng, 12)
        if D.n_components == 1:
            break
    p0 = coeff_poly(P(D), 0)
    assert p0(1) == 1
    assert deriv_at_one(p0, 1) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_multiplicative_under_connected_sum(seed):
    rng = random.Random(seed)
    knots = []
    while len(knots) < 2:
        D = random_diagram(rng, 7)
        if D.n_components == 1:
            knots.append(D)
    assert P(connected_sum(*knots)) == P(knots[0]) * P(knots[1])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_memo_soundness(seed):
    # a shared cache must give the same answers as a fresh one per diagram
    rng = random.Random(seed)
    shared = SkeinMemo()
    for _ in range(5):
        D = random_diagram(rng, 10)
        assert homflypt(D, memo=shared) == homflypt(D, memo=SkeinMemo())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_lowest_coefficient_identity(seed):
    rng = random.Random(seed)
    w = random_band_word(rng, rng.randint(2, 4), 6, max_crossings=12)
    assert lowest_coeff_identity_check(trace_closure(w))
