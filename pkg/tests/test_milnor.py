import random
from fractions import Fraction
from itertools import permutations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from milnorhomfly import (
    IndexSequence,
    NotPure,
    RepeatedIndex,
    StringLinkWord,
    artin_longitudes,
    build_V,
    congruent_mod,
    delta,
    linking_matrix,
    milnor_result,
    mu,
    mu_table,
    parse_word,
    standard_form,
)
from milnorhomfly.magnus import nonrepeated_words
from milnorhomfly.milnor import delta_sequences
from milnorhomfly.theorem import subseq_terms

from _helpers import random_band_word, reference_longitudes, reference_mu

seeds = st.integers(0, 10**9)


def rebuild(form, n):
    w = StringLinkWord.trivial(n)
    for M, x in form:
        if x:
            w = w * (build_V(M, 1 if x > 0 else -1, n) ** abs(x))
    return w


def test_linking_numbers():
    assert mu(parse_word("A12", 2), "12") == 1
    assert mu(parse_word("A12", 2), "21") == 1
    w = parse_word("A13^2 A24^-3 A12", 4)
    assert linking_matrix(w) == [[0, 1, 2, 0], [1, 0, 0, -3], [2, 0, 0, 0], [0, -3, 0, 0]]


def test_borromean():
    w = build_V("123")
    assert mu(w, "123") == 1
    assert mu(w, "231") == 1 and mu(w, "312") == 1
    assert mu(w, "213") == -1
    r = milnor_result(w, "123")
    assert (r.mu, r.delta, r.residue) == (1, 0, 1)
    assert r.to_json() == {"mu": "1", "delta": "0", "residue": "1"}


def test_commutator_longitude():
    # the longitude of strand 3 in [A12, A23] starts with X1X2 - X2X1
    lam = artin_longitudes(build_V("123"), 2)[2]
    assert lam.coeff((1, 2)) == 1 and lam.coeff((2, 1)) == -1
    assert lam.coeff((1,)) == 0 and lam.coeff((2,)) == 0


def test_A13_A24():
    w = parse_word("A13^2 A24^2", 4)
    assert mu(w, "1234") == 0
    assert delta(w, "1234") == 2
    w3 = parse_word("A13^2 A24^3", 4)
    assert delta(w3, "1234") == 1


def test_delta_sequences():
    seqs = delta_sequences("123")
    assert set(seqs) == {IndexSequence(s) for s in ["12", "21", "13", "31", "23", "32"]}
    assert len(delta_sequences("1234")) == 12 + 4 * 3


def test_errors():
    with pytest.raises(NotPure):
        mu(parse_word("s1", 2), "12")
    with pytest.raises(RepeatedIndex):
        mu(parse_word("A12", 2), (1, 2, 1))
    with pytest.raises(ValueError):
        mu(parse_word("A12", 2), "1")
    with pytest.raises(ValueError):
        mu(parse_word("A12", 2), "13")


def test_trivial_word_vanishes():
    assert not any(mu_table(StringLinkWord.trivial(4), 4).values())


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_matches_free_group_reference(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    w = random_band_word(rng, n, 6)
    table = mu_table(w, n)
    for I, v in table.items():
        assert v == reference_mu(w, I), I


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_reduced_support_matches_full_expansion(seed):
    rng = random.Random(seed)
    w = random_band_word(rng, 4, 6)
    full = artin_longitudes(w, 3)
    reduced = artin_longitudes(w, 3, support=nonrepeated_words(4, 3))
    for F, R in zip(full, reduced):
        assert R.terms == {u: c for u, c in F.items() if len(set(u)) == len(u)}


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_longitude_zero_framed(seed):
    rng = random.Random(seed)
    w = random_band_word(rng, 3, 6)
    for j, lam in enumerate(artin_longitudes(w, 1), start=1):
        assert lam.coeff((j,)) == 0
        assert reference_longitudes(w)[j].count(j) == reference_longitudes(w)[j].count(-j)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_first_nonvanishing_invariants_add(seed):
    # invariants of length 3 are additive under stacking once all linking numbers vanish
    rng = random.Random(seed)
    factors = ["123", "132", "124", "234", "143"]
    a = StringLinkWord.trivial(4)
    b = StringLinkWord.trivial(4)
    for _ in range(3):
        a = a * build_V(rng.choice(factors), rng.choice((1, -1)), 4)
        b = b * build_V(rng.choice(factors), rng.choice((1, -1)), 4)
    for I in permutations(range(1, 5), 3):
        assert mu(a * b, I) == mu(a, I) + mu(b, I)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_delta_independent_of_representative(seed):
    # inserting a cancelling pair or conjugating by a pure braid keeps the invariants
    rng = random.Random(seed)
    w = random_band_word(rng, 4, 6)
    pad = StringLinkWord.from_braid(4, [2, -2])
    v = w * pad
    r1, r2 = milnor_result(w, "1234"), milnor_result(v, "1234")
    assert (r1.mu, r1.delta) == (r2.mu, r2.delta)
    # a pure braid conjugated by a pure braid keeps its residue class
    h = parse_word("A12 A34^-1", 4)
    r3 = milnor_result(h * w * h.inverse(), "1234")
    assert r3.delta == r1.delta and congruent_mod(r3.mu, r1.mu, r1.delta)


@pytest.mark.parametrize("n", [3, 4])
def test_standard_form_examples(n):
    w = build_V("132", 1, n) * parse_word("A12^2 A23^-1", n)
    form = dict(standard_form(w, n - 1))
    assert form[IndexSequence("12")] == 2 and form[IndexSequence("23")] == -1


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from([3, 4]))
def test_standard_form_roundtrip(seed, n):
    rng = random.Random(seed)
    w = random_band_word(rng, n, 8)
    v = rebuild(standard_form(w, n - 1), n)
    assert mu_table(v, n) == mu_table(w, n)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_length_three_homflypt_formula(seed):
    # mu(123) = -1/8 sum_J (-1)^|J| (log P_0(L_J))''(1) modulo the linking numbers
    rng = random.Random(seed)
    w = random_band_word(rng, 3, 6)
    S = sum((s * x for _, s, x in subseq_terms(w, 2)), Fraction(0))
    L = linking_matrix(w)
    g = gcd(gcd(L[0][1], L[0][2]), L[1][2])
    assert congruent_mod(mu(w, "123"), Fraction(-1, 8) * S, g)
