from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiteq import lattice
from orbiteq.action import (
    MonoidAction,
    check_factorization,
    equalizer_interior_empty,
    essentially_free,
    extend_to_group,
    failing_pair,
    one_sided_orbit,
    orbit_related,
    verify_action_axioms,
)
from orbiteq.errors import InvalidInput, NotHomeomorphisms, Undetermined
from orbiteq.maps import apply_map, compose_maps, identity_map, maps_equal, shift_map

from conftest import pt


def test_identity_element(S):
    act = S["shift_F2"]
    assert maps_equal(act.action_map((0,)), identity_map(S["F2"]), 5).verified


def test_shift_power(S):
    act = S["shift_F2"]
    assert maps_equal(act.action_map((2,)), shift_map(S["F2"], 2), 5).verified


def test_conjugated_generator_commutes(S):
    conj = compose_maps(S["Phi2_inv"], compose_maps(S["sigma_F2_2"], S["Phi2"]))
    act = MonoidAction(S["F2"], [S["sigma_F2"], conj], name="pair")
    a, b = act.generators
    assert maps_equal(compose_maps(a, b), compose_maps(b, a), 4).verified
    assert maps_equal(act.action_map((1, 1)), compose_maps(b, a), 4).verified


def test_axioms_on_golden_mean(S):
    assert verify_action_axioms(S["shift_GM"], 4).ok


def test_noncommuting_generators_refuted(S):
    rep = verify_action_axioms(S["noncommuting_F2"], 4)
    bad = rep.first_failure()
    assert bad.name == "commute[0,1]" and bad.status == "refuted"
    F2 = S["F2"]
    w = F2.parse_word(bad.witness)
    f, g = S["sigma_F2"], S["flip_first"]
    x = pt(F2, bad.witness)
    assert len(w) >= 4
    assert apply_map(compose_maps(f, g), x, 4).take(4) != apply_map(compose_maps(g, f), x, 4).take(4)


def test_non_surjective_generator_refuted(S):
    rep = verify_action_axioms(S["collapse_F2"], 4)
    assert rep.status == "refuted"
    assert any(c.name == "surjective[0]" and c.witness == "1" for c in rep.failures())


def test_shallow_table_is_undetermined(S):
    assert verify_action_axioms(S["shallow_F2"], 6).status == "undetermined"


def test_orbits(S):
    act, F2 = S["shift_F2"], S["F2"]
    assert one_sided_orbit(act, pt(F2, "", "0"), 3, 6) == [pt(F2, "", "0")]
    assert set(one_sided_orbit(act, pt(F2, "", "01"), 2, 6)) == {pt(F2, "", "01"), pt(F2, "", "10")}
    assert len(one_sided_orbit(act, pt(F2, "001", "0"), 3, 6)) == 4
    with pytest.raises(Undetermined):
        one_sided_orbit(act, pt(F2, "001"), 3, 6)


def test_orbit_related_examples(S):
    act, F2 = S["shift_F2"], S["F2"]
    x = pt(F2, "1", "0")
    assert orbit_related(act, x, x, 3, 6) == ((0,), (0,))
    assert orbit_related(act, x, pt(F2, "", "0"), 3, 6) == ((1,), (0,))
    assert orbit_related(act, pt(F2, "", "01"), pt(F2, "", "10"), 3, 6) == ((1,), (0,))
    assert orbit_related(act, pt(F2, "", "0"), pt(F2, "", "1"), 3, 6) is None


@given(st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), min_size=1, max_size=3),
       st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), min_size=1, max_size=3))
def test_orbit_related_reverifies(p1, v1, p2, v2):
    from orbiteq.catalog import systems
    act = systems()["shift_F2"]
    x, y = pt_from(p1, v1), pt_from(p2, v2)
    r = orbit_related(act, x, y, 3, 6)
    if r is not None:
        m, n = r
        assert act(m, x) == act(n, y)


def pt_from(p, v):
    from orbiteq.shift import TruncatedPoint
    return TruncatedPoint(tuple(p), tuple(v))


def test_freeness_shift_F2(S):
    act, F2 = S["shift_F2"], S["F2"]
    cert = equalizer_interior_empty(act, (1,), (0,), 2)
    assert cert.free and cert.exact
    assert sorted(cert.witnesses) == [tuple(w) for w in ((0, 0), (0, 1), (1, 0), (1, 1))]
    for w, x in cert.witnesses.items():
        assert x.take(2) == w
        assert act((1,), x) != act((0,), x)


def test_freeness_duplicated_generator(S):
    cert = equalizer_interior_empty(S["dup_F2"], (1, 0), (0, 1), 3)
    assert cert.status == "not_free" and cert.cylinder == ()


def test_freeness_golden_mean(S):
    cert = equalizer_interior_empty(S["shift_GM"], (2,), (1,), 3)
    assert cert.free
    for w, x in cert.witnesses.items():
        assert act_differs(S["shift_GM"], (2,), (1,), x)


def act_differs(act, m, n, x):
    return act(m, x) != act(n, x)


def test_freeness_by_search_on_odometer(S):
    cert = equalizer_interior_empty(S["odometer_F2"], (1,), (0,), 3)
    assert cert.free and not cert.exact
    for x in cert.witnesses.values():
        assert act_differs(S["odometer_F2"], (1,), (0,), x)


def test_freeness_needs_distinct_pair(S):
    with pytest.raises(InvalidInput):
        equalizer_interior_empty(S["shift_F2"], (1,), (1,), 2)


def test_essentially_free_reports(S):
    assert essentially_free(S["shift_F2"], 3, 6).ok
    assert essentially_free(S["shift_GM"], 2, 6).ok
    rep = essentially_free(S["dup_F2"], 3, 4)
    assert rep.status == "refuted"
    assert failing_pair(rep) == ((1, 0), (0, 1))


def test_extend_to_group_identity_and_inverse(S):
    O = S["odometer_F2"]
    assert maps_equal(extend_to_group(O, (0,)), identity_map(S["F2"]), 5).verified
    assert maps_equal(extend_to_group(O, (-1,)), S["odometer_inv"], 5).verified
    assert maps_equal(extend_to_group(O, (2,)), O.action_map((2,)), 5).verified


def test_extend_to_group_needs_homeomorphisms(S):
    with pytest.raises(NotHomeomorphisms):
        extend_to_group(S["shift_F2"], (-1,))


@pytest.mark.parametrize("g", [(-2,), (-1,), (1,), (2,)])
def test_factorization_independent(S, g):
    assert check_factorization(S["odometer_F2"], g, 4).verified


def test_group_law(S):
    O = S["odometer_F2"]
    for g, h in product(range(-2, 3), repeat=2):
        lhs = extend_to_group(O, (g + h,))
        rhs = compose_maps(extend_to_group(O, (h,)), extend_to_group(O, (g,)))
        assert maps_equal(lhs, rhs, 4).verified, (g, h)


@pytest.mark.parametrize("name", ["shift_F2", "dup_F2", "shift_GM"])
def test_anti_homomorphism(S, name):
    act = S[name]
    elems = lattice.monoid_elements(act.rank, 2)
    for m in elems:
        for n in elems:
            lhs = act.action_map(lattice.add(n, m))
            rhs = compose_maps(act.action_map(n), act.action_map(m))
            assert maps_equal(lhs, rhs, 4).verified
