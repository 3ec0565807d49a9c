from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiteq.errors import BadSymbol, EmptyShift, InadmissibleWord, IsolatedPoints, Undetermined
from orbiteq.shift import (
    ClopenSet,
    TruncatedPoint,
    admissible_words,
    count_words,
    extensions,
    first_difference,
    periodic_points,
    validate_sft,
)

from conftest import pt, word


def brute_words(alphabet, forbidden, n):
    """All strings of length n avoiding the forbidden factors."""
    return sorted("".join(p) for p in product(alphabet, repeat=n)
                  if not any(f in "".join(p) for f in forbidden))


def test_full_shift_has_four_blocks(S):
    assert len(S["F2"].allowed) == 4


def test_golden_mean_blocks(S):
    GM = S["GM"]
    assert {GM.format_word(b) for b in GM.allowed} == {"00", "01", "10"}
    assert {GM.format_word(b) for b in GM.allowed} == set(brute_words("01", ["11"], 2))


def test_singleton_space_has_isolated_points():
    with pytest.raises(IsolatedPoints):
        validate_sft("A", ["a"])


def test_periodic_only_space_has_isolated_points():
    # only (01)^inf and (10)^inf survive
    with pytest.raises(IsolatedPoints):
        validate_sft("P", ["0", "1"], ["00", "11"])


def test_empty_shift():
    with pytest.raises(EmptyShift):
        validate_sft("E", ["0", "1"], ["0", "1"])


def test_unknown_symbol():
    with pytest.raises(BadSymbol):
        validate_sft("B", ["0", "1"], ["2"])


def test_admissible_words_examples(S):
    F2, GM = S["F2"], S["GM"]
    assert [F2.format_word(w) for w in admissible_words(F2, 2)] == ["00", "01", "10", "11"]
    assert [GM.format_word(w) for w in admissible_words(GM, 3)] == ["000", "001", "010", "100", "101"]
    assert admissible_words(GM, 0) == ((),)


@pytest.mark.parametrize("n", range(1, 10))
def test_golden_mean_counts_match_brute_force(S, n):
    GM = S["GM"]
    assert [GM.format_word(w) for w in admissible_words(GM, n)] == brute_words("01", ["11"], n)
    assert count_words(GM, n) == len(brute_words("01", ["11"], n))


@pytest.mark.parametrize("n", range(1, 7))
def test_long_forbidden_words_are_recoded(n):
    T = validate_sft("T", ["0", "1"], ["111"])
    # a recoded word of length n spells an original word of length n + 1
    got = sorted(T.decode_word(w) for w in admissible_words(T, n))
    assert got == brute_words("01", ["111"], n + 1)


def test_parse_rejects_inadmissible(S):
    with pytest.raises(InadmissibleWord):
        S["GM"].parse_word("0110")


def test_point_canonical_form(S):
    F2 = S["F2"]
    assert pt(F2, "0", "0") == pt(F2, "", "0")
    assert pt(F2, "01", "0101") == pt(F2, "", "01")
    assert pt(F2, "1", "01") == pt(F2, "", "10")
    assert pt(F2, "001", "0").format(F2) == "001(0)^inf"


def test_truncated_point_is_undetermined_past_prefix(S):
    x = pt(S["F2"], "011")
    assert x.take(3) == (0, 1, 1)
    with pytest.raises(Undetermined):
        x.take(4)


@given(st.lists(st.integers(0, 1), max_size=6), st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_point_symbols_agree_with_unrolled_sequence(prefix, period):
    x = TruncatedPoint(tuple(prefix), tuple(period))
    seq = prefix + period * 60
    assert list(x.take(40)) == seq[:40]
    assert list(x.shifted(3).take(20)) == seq[3:23]


@given(st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), min_size=1, max_size=3),
       st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), min_size=1, max_size=3))
def test_first_difference_matches_brute_force(p1, v1, p2, v2):
    x, y = TruncatedPoint(tuple(p1), tuple(v1)), TruncatedPoint(tuple(p2), tuple(v2))
    a, b = x.take(60), y.take(60)
    brute = next((i for i in range(60) if a[i] != b[i]), None)
    assert first_difference(x, y) == brute
    assert (x == y) == (brute is None)


def test_periodic_points_lie_in_cylinder(S):
    GM = S["GM"]
    w = word(GM, "010")
    pts = list(periodic_points(GM, w, period_bound=3, connector_bound=2))
    assert pts and len(set(pts)) == len(pts)
    for p in pts:
        assert p.take(3) == w and p.is_admissible(GM)


words_f2 = st.lists(st.lists(st.integers(0, 1), min_size=0, max_size=4).map(tuple), max_size=6)


@given(words_f2)
def test_clopen_normalization_is_canonical(ws):
    from orbiteq.catalog import full_shift
    F2 = full_shift()
    C = ClopenSet.from_words(F2, ws)
    again = ClopenSet.from_words(F2, C.cylinders())
    assert again == C
    # membership agrees with the raw word list at a common depth
    for w in admissible_words(F2, 5):
        raw = any(w[:len(u)] == u for u in ws)
        assert C.contains_word(w) == raw


@given(words_f2, words_f2)
def test_clopen_boolean_algebra(ws1, ws2):
    from orbiteq.catalog import full_shift
    F2 = full_shift()
    A, B = ClopenSet.from_words(F2, ws1), ClopenSet.from_words(F2, ws2)
    assert A.union(B) == B.union(A)
    assert A.intersection(B).issubset(A)
    assert A.difference(B).intersection(B).is_empty()
    assert A.complement().complement() == A
    assert A.union(A.complement()) == ClopenSet.whole(F2)


def test_clopen_equal_sets_have_equal_forms(S):
    F2 = S["F2"]
    a = ClopenSet.from_words(F2, [word(F2, "0"), word(F2, "10"), word(F2, "11")])
    assert a == ClopenSet.whole(F2)
    b = ClopenSet.from_words(F2, [word(F2, "00"), word(F2, "01")])
    assert b == ClopenSet.cylinder(F2, word(F2, "0"))
    assert ClopenSet.empty(F2).is_empty()


def test_extensions(S):
    GM = S["GM"]
    assert [GM.format_word(w) for w in extensions(GM, word(GM, "01"), 4)] == ["0100", "0101"]
