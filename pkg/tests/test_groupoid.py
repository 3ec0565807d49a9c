import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiteq.action import extend_to_group
from orbiteq.errors import InvalidInput, NotComposable, NotHomeomorphisms, NotInV, NotRelated, RoundtripFailed
from orbiteq.groupoid import (
    Bisection,
    GroupoidElement,
    SemiGroupoidElement,
    bisection_check,
    bisection_element,
    bisection_eval,
    compose,
    g_ops,
    group_case_inverse,
    group_case_iso,
    inverse,
    make_groupoid_element,
    random_chain,
    sample_elements,
    sg_compose,
    unit,
    verify_axioms,
)
from orbiteq.maps import apply_map
from orbiteq.shift import ClopenSet

from conftest import pt, word


def test_semigroupoid_unit_idempotent(S):
    x = pt(S["F2"], "1", "0")
    e = SemiGroupoidElement((0,), x)
    assert sg_compose(S["shift_F2"], e, e) == e


def test_semigroupoid_product(S):
    F2 = S["F2"]
    p = SemiGroupoidElement((1,), pt(F2, "1", "0"))
    q = SemiGroupoidElement((1,), pt(F2, "11", "0"))
    assert sg_compose(S["shift_F2"], p, q) == SemiGroupoidElement((2,), pt(F2, "11", "0"))


def test_semigroupoid_not_composable(S):
    F2 = S["F2"]
    p = SemiGroupoidElement((1,), pt(F2, "", "1"))
    q = SemiGroupoidElement((1,), pt(F2, "", "0"))
    with pytest.raises(NotComposable) as exc:
        sg_compose(S["shift_F2"], p, q)
    assert exc.value.witness == 0


def test_make_element(S):
    act, F2 = S["shift_F2"], S["F2"]
    x = pt(F2, "1", "0")
    assert make_groupoid_element(act, x, (0,), (0,), x) == unit(act, x)
    e = make_groupoid_element(act, x, (1,), (0,), pt(F2, "", "0"))
    assert e.g == (1,) and e.witness == ((1,), (0,))
    with pytest.raises(NotRelated):
        make_groupoid_element(act, pt(F2, "", "0"), (1,), (1,), pt(F2, "", "1"))


def test_corrupted_witness_rejected(S):
    x = pt(S["F2"], "", "0")
    with pytest.raises(InvalidInput):
        GroupoidElement(x, (2,), x, (1,), (0,))


def test_group_operations(S):
    act, F2 = S["shift_F2"], S["F2"]
    x, y, z = pt(F2, "11", "0"), pt(F2, "1", "0"), pt(F2, "", "0")
    a = make_groupoid_element(act, x, (1,), (0,), y)
    b = make_groupoid_element(act, y, (1,), (0,), z)
    ops = g_ops(act, a, b)
    c = ops["compose"]
    assert (c.x, c.g, c.y) == (x, (2,), z) and c.witness == ((2,), (0,))
    ai = ops["inverse"]
    assert (ai.x, ai.g, ai.y) == (y, (-1,), x) and ai.witness == ((0,), (1,))
    assert compose(act, a, ai) == unit(act, x)
    assert ops["range"] == (x, y) and ops["domain"] == (y, z)
    with pytest.raises(NotComposable):
        compose(act, b, a)


def test_bisection_identity_like(S):
    act, F2 = S["shift_F2"], S["F2"]
    U = ClopenSet.cylinder(F2, word(F2, "00"))
    B = Bisection(U, (1,), (1,), U)
    assert bisection_check(act, B) == []
    z = pt(F2, "00", "1")
    assert bisection_eval(act, B, z) == z


def test_bisection_prepends_zero(S):
    act, F2 = S["shift_F2"], S["F2"]
    B = Bisection(ClopenSet.cylinder(F2, word(F2, "01")), (1,), (0,), ClopenSet.cylinder(F2, word(F2, "1")))
    assert bisection_check(act, B) == []
    assert bisection_eval(act, B, pt(F2, "1", "0")) == pt(F2, "01", "0")
    e = bisection_element(act, B, pt(F2, "1", "0"))
    assert e.g == (1,)
    with pytest.raises(NotInV):
        bisection_eval(act, B, pt(F2, "0", "1"))


def test_bisection_check_detects_non_injective(S):
    act, F2 = S["shift_F2"], S["F2"]
    whole = ClopenSet.whole(F2)
    B = Bisection(whole, (1,), (0,), whole)
    assert "theta_m is not injective on U" in bisection_check(act, B)


def test_axioms_units_only(S):
    act, F2 = S["shift_F2"], S["F2"]
    units = [unit(act, pt(F2, "", w)) for w in ("0", "1", "01")]
    assert verify_axioms(act, units).ok


def test_axioms_random_sample(S):
    act = S["shift_F2"]
    rep = verify_axioms(act, sample_elements(act, 20, degree=2, seed=1))
    assert rep.ok


def test_axioms_golden_mean(S):
    act = S["shift_GM"]
    assert verify_axioms(act, sample_elements(act, 20, degree=3, seed=2)).ok


def test_axioms_detect_bad_witness(S):
    act, F2 = S["shift_F2"], S["F2"]
    # constructed directly, bypassing the relation check
    bad = GroupoidElement(pt(F2, "", "0"), (0,), pt(F2, "", "1"), (1,), (1,))
    rep = verify_axioms(act, [bad])
    assert rep.status == "refuted" and rep.first_failure().name == "witnesses"


@given(st.integers(0, 10 ** 6))
def test_random_chains_associate(seed):
    from orbiteq.catalog import systems
    act = systems()["shift_F2"]
    a, b, c = random_chain(act, random.Random(seed), 3, 3)
    left = compose(act, compose(act, a, b), c)
    right = compose(act, a, compose(act, b, c))
    assert left == right
    assert left.g == tuple(x + y + z for x, y, z in zip(a.g, b.g, c.g))
    assert inverse(inverse(a)) == a
    make_groupoid_element(act, left.x, left.m, left.n, left.y)


def test_group_case_iso_unit(S):
    O, F2 = S["odometer_F2"], S["F2"]
    x = pt(F2, "1", "0")
    assert group_case_iso(O, unit(O, x)) == (x, (0,))
    assert group_case_inverse(O, x, (0,)) == unit(O, x)


def test_group_case_iso_odometer(S):
    O, F2 = S["odometer_F2"], S["F2"]
    x = pt(F2, "1", "0")
    y = apply_map(extend_to_group(O, (1,)), x)
    e = make_groupoid_element(O, x, (1,), (0,), y)
    assert group_case_iso(O, e) == (x, (1,))
    assert group_case_inverse(O, x, (1,)) == e


def test_group_case_iso_wrong_y(S):
    O, F2 = S["odometer_F2"], S["F2"]
    x = pt(F2, "1", "0")
    bad = GroupoidElement(x, (1,), x, (1,), (0,))
    with pytest.raises(RoundtripFailed):
        group_case_iso(O, bad)


def test_group_case_needs_homeomorphisms(S):
    act = S["shift_F2"]
    x = pt(S["F2"], "", "0")
    with pytest.raises(NotHomeomorphisms):
        group_case_iso(act, unit(act, x))
