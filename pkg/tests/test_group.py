import pytest

from orbiteq import lattice
from orbiteq.action import extend_to_group
from orbiteq.catalog import identity_csoe, odometer_cocycle
from orbiteq.equivalence.coe import csoe_to_coe, verify_coe
from orbiteq.equivalence.group import (
    differences,
    group_to_semigroup,
    semigroup_to_group,
    verify_group_coe,
    verify_group_cocycle,
)
from orbiteq.errors import NotHomeomorphisms
from orbiteq.groupoid import group_case_iso, sample_elements
from orbiteq.maps import apply_map, compose_maps, maps_equal
from orbiteq.tables import CylinderTable

from conftest import pt


def test_differences_cover_square():
    # |m|, |n| <= 1 in total degree: 0, +-e1, +-e2, +-(e1 - e2)
    assert set(differences(2, 1)) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
    assert differences(1, 2) == [(0,), (-1,), (1,), (-2,), (2,)]


def test_odometer_swap_cocycle():
    assert verify_group_cocycle(odometer_cocycle(True), 5).ok
    assert verify_group_cocycle(odometer_cocycle(False), 5).ok


def test_odometer_swap_with_wrong_sign_refuted():
    data = odometer_cocycle(True)
    data.a = odometer_cocycle(False).a
    rep = verify_group_cocycle(data, 5)
    assert rep.status == "refuted"
    bad = rep.first_failure()
    assert bad.name == "forward[-1]"


def test_group_to_semigroup_and_back():
    data = odometer_cocycle(True, 2)
    coe = group_to_semigroup(data)
    assert verify_coe(coe, 5).ok
    form, cocycle = semigroup_to_group(coe, 4)
    assert verify_group_coe(form, 4).ok
    for g in differences(1, 2):
        for (key, w), v in cocycle.a.refine(max(cocycle.a.depth, 1)).entries.items():
            if key == g:
                assert v == lattice.neg(g)


def test_semigroup_to_group_needs_homeomorphisms():
    with pytest.raises(NotHomeomorphisms):
        semigroup_to_group(csoe_to_coe(identity_csoe(2)))


def test_decomposed_tables_nonnegative():
    coe = group_to_semigroup(odometer_cocycle(True, 2))
    for t in (coe.a1, coe.b1, coe.a2, coe.b2):
        assert all(min(v) >= 0 for v in t.entries.values())
    for (m, n, wx, wy), a1 in coe.a1.entries.items():
        b1 = coe.b1.entries[(m, n, wx, wy)]
        assert lattice.sub(a1, b1) == lattice.neg(lattice.sub(m, n))


def test_group_law_exhaustive(S):
    O = S["odometer_F2"]
    for g in range(-2, 3):
        for h in range(-2, 3):
            lhs = extend_to_group(O, (g + h,))
            rhs = compose_maps(extend_to_group(O, (h,)), extend_to_group(O, (g,)))
            assert maps_equal(lhs, rhs, 4).verified, (g, h)


def test_group_case_iso_roundtrip(S):
    O = S["odometer_F2"]
    for e in sample_elements(O, 50, 3, 1):
        x, g = group_case_iso(O, e)
        assert (x, g) == (e.x, e.g)
        assert apply_map(extend_to_group(O, g), x) == e.y
