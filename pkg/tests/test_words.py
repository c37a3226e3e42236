import pytest
from hypothesis import given, settings, strategies as st

from milnorhomfly import (
    IndexSequence,
    InvalidSubsequence,
    ParseError,
    StrandIndexError,
    StringLinkWord,
    parse_sequence,
    parse_word,
    relabel,
    subsequences,
)
from milnorhomfly.words import band, permutation_braid, restrict_braid


def test_parse_tokens():
    w = parse_word("s3 s3^-1 A13^2 A2,11", 11)
    assert [L.text() for L in w] == ["s3", "s3^-1", "A13", "A13", "A2,11"]
    assert parse_word("A13^-2", 4).text() == "A13^-1 A13^-1"
    assert parse_word("A31", 3).text() == "A13"
    assert parse_word("", 3) == StringLinkWord.trivial(3)


@pytest.mark.parametrize("text", ["x1", "A1", "s", "A13^", "A123", "A11"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_word(text, 4)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_word("A12 bad", 3)
    assert info.value.position == 4


@pytest.mark.parametrize("text", ["s4", "A15", "s0"])
def test_out_of_range(text):
    with pytest.raises(StrandIndexError):
        parse_word(text, 4)


def test_band_expansion():
    assert parse_word("A12", 2).braid() == (1, 1)
    assert parse_word("A13", 4).braid() == (1, 2, 2, -1)
    assert parse_word("A14^-1", 4).braid() == (1, 2, -3, -3, -2, -1)


def test_band_needs_distinct_strands():
    with pytest.raises(ValueError):
        band(2, 2)


def test_stacking_and_inverse():
    a, b = parse_word("A12", 3), parse_word("A23^-1", 3)
    assert (a * b).text() == "A12 A23^-1"
    assert (a * b).inverse().text() == "A23 A12^-1"
    assert (a ** -2).text() == "A12^-1 A12^-1"
    with pytest.raises(ValueError):
        a * parse_word("A12", 2)


def test_purity():
    assert parse_word("A13 A24", 4).is_pure()
    assert not parse_word("s1", 2).is_pure()
    assert parse_word("s1 s2^-1", 3).top_positions() == (3, 1, 2)


def test_index_sequences():
    I = IndexSequence("1324")
    assert str(I) == "1324" and I.in_Mk()
    assert not IndexSequence("2314").in_Mk()
    assert IndexSequence("34").is_successive() and not IndexSequence("24").is_successive()
    assert IndexSequence("14").is_subsequence_of(I)
    assert not IndexSequence("41").is_subsequence_of(I)
    assert str(parse_sequence("1,2,10")) == "1,2,10"
    assert IndexSequence("123").rotations() == [IndexSequence("123"), IndexSequence("231"), IndexSequence("312")]
    with pytest.raises(InvalidSubsequence):
        IndexSequence("1231")
    with pytest.raises(ParseError):
        parse_sequence("1a2")


def test_subsequences():
    subs = subsequences("123")
    assert len(subs) == 8
    assert subs[0] == (IndexSequence(()), 1)
    assert subs[-1] == (IndexSequence("123"), -1)
    assert sum(s for _, s in subs) == 0


def free_reduce(gens):
    out = []
    for g in gens:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def test_restrict_braid():
    # A13 on three strands: deleting strand 2 leaves the clasp
    assert restrict_braid(parse_word("A13", 3).braid(), 3, [1, 3]) == (1, 1)
    assert free_reduce(restrict_braid(parse_word("A13", 3).braid(), 3, [1, 2])) == ()


def test_permutation_braid():
    assert permutation_braid([2, 1]) == (1,)
    assert permutation_braid([1, 2, 3]) == ()
    w = StringLinkWord.from_braid(3, permutation_braid([3, 1, 2]))
    assert w.top_positions() == (3, 1, 2)


def test_relabel_moves_band():
    # new strand j is old strand I[j-1], so A12 becomes the clasp of new strands 2 and 3
    v = relabel(parse_word("A12", 3), "312")
    assert v.is_pure()
    assert free_reduce(restrict_braid(v.braid(), 3, [2, 3])) == (1, 1)
    assert free_reduce(restrict_braid(v.braid(), 3, [1, 2])) == ()
    assert free_reduce(restrict_braid(v.braid(), 3, [1, 3])) == ()


pure_words = st.lists(
    st.tuples(st.integers(1, 4), st.integers(1, 4), st.sampled_from((1, -1))).filter(lambda x: x[0] != x[1]),
    max_size=6,
).map(lambda xs: StringLinkWord(4, tuple(band(i, j, e) for i, j, e in xs)))


@settings(max_examples=100, deadline=None)
@given(pure_words)
def test_text_roundtrip(w):
    assert parse_word(w.text(), 4) == w
    assert (w * w.inverse()).is_pure()


@settings(max_examples=100, deadline=None)
@given(pure_words, st.permutations([1, 2, 3, 4]))
def test_relabel_stays_pure(w, perm):
    assert relabel(w, perm).is_pure()
