import pytest

from orbiteq import lattice
from orbiteq.catalog import corrupted_csoe, identity_csoe, identity_tables, phi2_csoe
from orbiteq.equivalence.csoe import (
    CsoeData,
    SemigroupoidIso,
    check_derived_identities,
    check_semigroupoid_iso,
    freeness_gate,
    semigroupoid_iso,
    semigroupoid_iso_extract,
    self_csoe,
    semigroupoid_iso_forward,
    verify_csoe,
)
from orbiteq.errors import TableIncomplete, UnitsNotPreserved
from orbiteq.maps import apply_map, compose_maps
from orbiteq.shift import TruncatedPoint
from orbiteq.tables import CylinderTable


def test_identity_csoe_verifies():
    assert verify_csoe(identity_csoe(), 6).ok


def test_phi2_csoe_verifies():
    rep = verify_csoe(phi2_csoe(), 5)
    assert rep.ok
    assert [c.name for c in rep.checks][:2] == ["forward[0]", "forward[1]"]


def test_corrupted_entry_refuted_with_reverifiable_witness():
    data = corrupted_csoe()
    rep = verify_csoe(data, 5)
    bad = rep.first_failure()
    assert rep.status == "refuted" and bad.name == "forward[1]"
    wit = bad.witness
    assert wit["cylinder"] == "0" and wit["value"] == [2]
    X, Y = data.source, data.target
    x = TruncatedPoint(X.space.parse_word(wit["input"]))
    d = wit["depth"]
    m, s = tuple(wit["m"]), tuple(wit["value"])
    lhs = apply_map(compose_maps(data.phi.forward, X.action_map(m)), x, d)
    rhs = apply_map(compose_maps(Y.action_map(s), data.phi.forward), x, d)
    assert lhs.take(d) != rhs.take(d)


def test_incomplete_table():
    data = identity_csoe(2)
    entries = dict(data.a.entries)
    entries.pop(((2,), ()))
    broken = CsoeData(data.source, data.target, data.phi, CylinderTable(data.a.sft, 0, entries, "a"), data.b, 2)
    with pytest.raises(TableIncomplete):
        verify_csoe(broken, 4)


@pytest.mark.parametrize("make", [identity_csoe, phi2_csoe])
def test_derived_identities_pass(make):
    rep = check_derived_identities(make(), 5)
    assert rep.ok
    names = {c.name for c in rep.checks}
    assert {"a_cocycle_identity", "b_cocycle_identity", "ba_inverse_identity", "ab_inverse_identity",
            "a_bijection", "b_bijection"} <= names
    assert not any(c.informational for c in rep.checks if not c.name.startswith("free["))


def test_identities_informational_without_freeness(S):
    data = self_csoe(S["dup_F2"], 2)
    ok, _ = freeness_gate([data.source], 2, 4)
    assert not ok
    rep = check_derived_identities(data, 4)
    assert all(c.informational for c in rep.checks)
    assert any("hypothesis unmet" in n for n in rep.notes)


def test_semigroupoid_iso_identity():
    iso = semigroupoid_iso_forward(identity_csoe())
    X = iso.source
    x = TruncatedPoint((0, 1), (1,))
    for m in lattice.monoid_elements(1, 3):
        assert iso.lam.get(m, x) == m
    assert check_semigroupoid_iso(iso).ok


def test_semigroupoid_roundtrip_phi2():
    data = phi2_csoe()
    back = semigroupoid_iso(semigroupoid_iso(data, "forward"), "extract")
    assert back.a.entries == data.a.entries and back.a.depth == data.a.depth
    assert back.b.entries == data.b.entries and back.b.depth == data.b.depth


def test_extract_units_not_preserved():
    data = identity_csoe(2)
    X = data.source
    lam = CylinderTable.constant(X.space, lattice.monoid_elements(1, 2), lambda m: lattice.add(m, (1,)), name="lam")
    iso = SemigroupoidIso(X, X, data.phi, lam, data.b, 2)
    with pytest.raises(UnitsNotPreserved):
        semigroupoid_iso_extract(iso)


def test_non_multiplicative_lambda_detected():
    data = identity_csoe(2)
    X = data.source
    lam = CylinderTable.constant(X.space, lattice.monoid_elements(1, 2), lambda m: (min(m[0], 1),), name="lam")
    rep = check_semigroupoid_iso(SemigroupoidIso(X, X, data.phi, lam, data.b, 2))
    assert rep.status == "refuted"


def test_phi2_tables_are_identity_valued():
    data = phi2_csoe()
    assert data.a == identity_tables(data.source, 3, "a")
