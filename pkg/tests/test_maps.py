from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiteq.catalog import full_shift
from orbiteq.errors import BadMap, DepthUnsupported, DomainMismatch, Undetermined
from orbiteq.maps import (
    SlidingBlockMap,
    TableMap,
    apply_map,
    check_local_homeo,
    compose_maps,
    cylinder_image,
    identity_map,
    maps_equal,
    preimages,
    shift_map,
    tabulate,
)
from orbiteq.shift import ClopenSet, TruncatedPoint, admissible_words

from conftest import pt, word


def test_apply_shift(S):
    F2 = S["F2"]
    y = apply_map(S["sigma_F2"], pt(F2, "0110", "0"), 3)
    assert y.take(3) == word(F2, "110")


def test_apply_identity_truncation(S):
    F2 = S["F2"]
    x = pt(F2, "01101")
    assert apply_map(S["id_F2"], x, 4).take(4) == word(F2, "0110")


def test_apply_two_block_code(S):
    F2, Y = S["F2"], S["F2_2"]
    y = apply_map(S["Phi2"], pt(F2, "0110", "0"), 3)
    assert Y.format_word(y.take(3)) == "01.11.10"


def test_apply_needs_enough_input(S):
    with pytest.raises(Undetermined):
        apply_map(S["sigma_F2"], pt(S["F2"], "01"), 3)


def test_apply_beyond_table_depth(S):
    with pytest.raises(DepthUnsupported):
        apply_map(S["sigma_shallow"], pt(S["F2"], "0", "1"), 4)


def test_exact_image_of_periodic_point(S):
    F2 = S["F2"]
    assert apply_map(S["sigma_F2"], pt(F2, "0", "01")) == pt(F2, "", "01")
    assert apply_map(S["odometer"], pt(F2, "110", "0")) == pt(F2, "001", "0")
    assert apply_map(S["odometer"], pt(F2, "", "1")) == pt(F2, "", "0")


def test_compose_shift_twice(S):
    F2 = S["F2"]
    ss = compose_maps(S["sigma_F2"], S["sigma_F2"])
    assert ss.modulus(3) == 5
    assert maps_equal(ss, shift_map(F2, 2), 4).verified


def test_compose_with_identity(S):
    f = S["flip_first"]
    c = maps_equal(compose_maps(f, S["id_F2"]), f, 5)
    assert c.verified


def test_compose_domain_mismatch(S):
    with pytest.raises(DomainMismatch):
        compose_maps(S["sigma_F2"], S["sigma_GM"])


def test_two_block_roundtrip(S):
    c = maps_equal(compose_maps(S["Phi2_inv"], S["Phi2"]), S["id_F2"], 5)
    assert c.verified and c.exact


def test_maps_equal_examples(S):
    F2 = S["F2"]
    assert maps_equal(shift_map(F2, 2), compose_maps(S["sigma_F2"], S["sigma_F2"]), 4).verified
    c = maps_equal(S["sigma_F2"], S["id_F2"], 1)
    assert c.refuted and F2.format_word(c.witness) == "01"


def test_refutation_witness_reverifies(S):
    f, g = S["flip_first"], S["swap"]
    c = maps_equal(f, g, 3)
    assert c.refuted
    x = TruncatedPoint(c.witness)
    assert apply_map(f, x, 3).take(3) != apply_map(g, x, 3).take(3)


def test_maps_equal_within_cylinder(S):
    F2 = S["F2"]
    # flip_first and swap agree on the first symbol only
    assert maps_equal(S["flip_first"], S["swap"], 1).verified
    assert maps_equal(S["flip_first"], S["swap"], 2, within=word(F2, "00")).refuted


def test_maps_equal_beyond_table_is_undetermined(S):
    assert maps_equal(S["sigma_shallow"], S["sigma_F2"], 5).status == "undetermined"


def test_local_homeo_shift(S):
    F2 = S["F2"]
    r = check_local_homeo(S["sigma_F2"], 4)
    assert r.ok
    assert [F2.format_word(w) for w in r.cylinders] == ["0", "1"]


def test_local_homeo_identity(S):
    r = check_local_homeo(identity_map(S["GM"]), 4)
    assert r.ok and r.partition_depth == 0


def test_local_homeo_collapse(S):
    F2 = S["F2"]
    r = check_local_homeo(S["collapse"], 3)
    assert r.surjective == "refuted"
    assert F2.format_word(r.surjective_witness) == "1"


def test_local_homeo_depth_unsupported(S):
    with pytest.raises(DepthUnsupported):
        check_local_homeo(S["sigma_shallow"], 6)


def test_preimages_of_fixed_point(S):
    F2 = S["F2"]
    pre = preimages(S["sigma_F2"], pt(F2, "", "0"))
    assert set(pre) == {pt(F2, "", "0"), pt(F2, "1", "0")}
    pre = preimages(S["odometer"], pt(F2, "", "0"))
    assert pre == [pt(F2, "", "1")]


def test_cylinder_image(S):
    F2 = S["F2"]
    img = cylinder_image(S["sigma_F2"], ClopenSet.cylinder(F2, word(F2, "01")), 1)
    assert img == ClopenSet.cylinder(F2, word(F2, "1"))


def test_table_map_validation(S):
    F2 = S["F2"]
    good = {1: {(0,): (0,), (1,): (1,)}}
    TableMap(F2, F2, {1: 1}, good)
    with pytest.raises(BadMap):
        TableMap(F2, F2, {1: 1}, {1: {(0,): (0,)}})
    # depth-2 outputs must extend depth-1 outputs
    bad = {1: {(0,): (0,), (1,): (1,)}, 2: {w: (1 - w[0], 0) for w in admissible_words(F2, 2)}}
    with pytest.raises(BadMap):
        TableMap(F2, F2, {1: 1, 2: 2}, bad)


def test_tabulate_matches(S):
    t = tabulate(S["Phi2"], 4)
    assert maps_equal(t, S["Phi2"], 4).verified
    assert not t.supports(5)


# property tests

def _rule_maps(window):
    keys = list(product((0, 1), repeat=window))
    return st.lists(st.integers(0, 1), min_size=len(keys), max_size=len(keys)).map(
        lambda vals: {k: v for k, v in zip(keys, vals)})


@st.composite
def sliding_maps(draw):
    F2 = full_shift()
    window = draw(st.integers(1, 3))
    rule = draw(_rule_maps(window))
    return SlidingBlockMap(F2, F2, window, rule, name="f")


points = st.tuples(st.lists(st.integers(0, 1), max_size=5), st.lists(st.integers(0, 1), min_size=1, max_size=4)).map(
    lambda t: TruncatedPoint(tuple(t[0]), tuple(t[1])))


@given(sliding_maps(), points)
def test_sliding_block_matches_brute_force(f, x):
    y = apply_map(f, x)
    seq = x.take(50 + f.window)
    brute = tuple(f.rule[seq[i:i + f.window]] for i in range(50))
    assert y.take(50) == brute


@given(sliding_maps())
def test_prefix_consistency(f):
    F2 = f.domain
    for n in range(1, 5):
        for w in admissible_words(F2, f.modulus(n + 1)):
            assert f.image(w, n + 1)[:n] == f.image(w[:f.modulus(n)], n)


@given(sliding_maps(), sliding_maps())
def test_maps_equal_symmetric_and_reflexive(f, g):
    assert maps_equal(f, f, 4).verified
    a, b = maps_equal(f, g, 4), maps_equal(g, f, 4)
    assert a.status == b.status and a.witness == b.witness
    if a.refuted:
        x = TruncatedPoint(a.witness)
        assert apply_map(f, x, 4).take(4) != apply_map(g, x, 4).take(4)


@given(sliding_maps(), sliding_maps(), sliding_maps())
def test_compose_associative(f, g, h):
    left = compose_maps(compose_maps(f, g), h)
    right = compose_maps(f, compose_maps(g, h))
    for n in range(1, 4):
        assert left.outputs(n) == right.outputs(n)
