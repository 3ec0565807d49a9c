import pytest

from orbiteq import lattice
from orbiteq.catalog import corrupted_csoe, identity_csoe, phi2_coe, phi2_csoe, shift_bundle
from orbiteq.equivalence.coe import (
    CoeData,
    GroupoidIsoData,
    coe_from_groupoid_iso,
    coe_to_groupoid_iso,
    cocycle_agreement,
    csoe_to_coe,
    groupoid_cocycle_from_coe,
    groupoid_iso_from_coe,
    psi,
    sample_iso_elements,
    verify_coe,
)
from orbiteq.equivalence.pairs import fibered_pairs, related
from orbiteq.equivalence.shift_coe import lattice_identity_expected, to_semigroup
from orbiteq.errors import (
    CoverIncomplete,
    InvalidInput,
    NoRelatedExtension,
    TableIncomplete,
    WellDefinednessFailed,
)
from orbiteq.groupoid import make_groupoid_element, unit
from orbiteq.maps import apply_map
from orbiteq.tables import PairTable

from conftest import pt


@pytest.fixture(scope="module")
def ident2():
    return csoe_to_coe(identity_csoe(2))


@pytest.fixture(scope="module")
def phi2():
    return phi2_coe(3)


def _with_table(data: CoeData, name: str, entries) -> CoeData:
    t = getattr(data, name)
    tables = {k: getattr(data, k) for k in ("a1", "b1", "a2", "b2")}
    tables[name] = PairTable(t.sft, t.depth, entries, name)
    return CoeData(data.source, data.target, data.phi, tables["a1"], tables["b1"], tables["a2"], tables["b2"],
                   data.degree_bound, data.name)


def test_fibered_pairs_shift(S):
    act, F2 = S["shift_F2"], S["F2"]
    fps = fibered_pairs(act, (1,), (0,), 2)
    # sigma(x) = y: x = c y, so wx[1] = wy[0]
    assert set(fps.pairs) == {(wx, wy) for wx in [(a, b) for a in (0, 1) for b in (0, 1)]
                              for wy in [(c, d) for c in (0, 1) for d in (0, 1)] if wx[1] == wy[0]}
    for (wx, wy), pts in fps.pairs.items():
        for x, y in pts:
            assert x.take(2) == wx and y.take(2) == wy and related(act, (1,), (0,), x, y)


def test_identity_coe(ident2):
    assert lattice_identity_expected(ident2)
    assert verify_coe(ident2, 5).ok


def test_phi2_coe_verifies(phi2):
    assert verify_coe(phi2, 5).ok


def test_csoe_to_coe_preserves_verification():
    for data in (identity_csoe(3), phi2_csoe(2)):
        assert verify_coe(csoe_to_coe(data), 5).ok


def test_shift_derived_coe():
    coe = to_semigroup(shift_bundle(0, 1, "s"), 3)
    assert lattice_identity_expected(coe)
    assert verify_coe(coe, 5).ok


def test_corrupted_b1_refuted(ident2):
    key = ((1,), (0,), (0, 1), (1, 0))
    entries = dict(ident2.b1.entries)
    entries[key] = (1,)
    rep = verify_coe(_with_table(ident2, "b1", entries), 5)
    bad = rep.first_failure()
    assert rep.status == "refuted" and bad.name == "forward[1|0]"
    assert (bad.witness["wx"], bad.witness["wy"]) == ("01", "10")
    # witness re-verifies: rho_a(phi x) != rho_b(phi y)
    X = ident2.source
    x, y = _point(X, bad.witness["x"]), _point(X, bad.witness["y"])
    assert X((1,), x) == X((0,), y)
    assert X(tuple(bad.witness["a"]), x) != X(tuple(bad.witness["b"]), y)


def _point(act, text):
    head, _, tail = text.partition("(")
    period = tail.split(")")[0]
    sft = act.space
    from orbiteq.shift import TruncatedPoint
    return TruncatedPoint(sft.parse_word(head), sft.parse_word(period))


def test_missing_entry(ident2):
    entries = dict(ident2.b1.entries)
    entries.pop(sorted(entries)[-1])
    with pytest.raises(TableIncomplete):
        verify_coe(_with_table(ident2, "b1", entries), 5)


def test_stale_entry(ident2):
    entries = dict(ident2.a1.entries)
    entries[((1,), (0,), (0, 0), (1, 1))] = (1,)
    with pytest.raises(NoRelatedExtension):
        verify_coe(_with_table(ident2, "a1", entries), 5)


def test_csoe_to_coe_depth_too_small():
    with pytest.raises(InvalidInput):
        csoe_to_coe(corrupted_csoe(2), depth=0)


def test_identity_cocycle_is_canonical(ident2, S):
    cp, rep = groupoid_cocycle_from_coe(ident2, 4)
    assert rep.ok
    act, F2 = S["shift_F2"], S["F2"]
    e = make_groupoid_element(act, pt(F2, "11", "0"), (2,), (0,), pt(F2, "", "0"))
    assert cp.a(e) == (2,) and cp.b(e) == (2,)


def test_shift_derived_cocycle_is_canonical(S):
    coe = to_semigroup(shift_bundle(0, 1, "s"), 2)
    cp, rep = groupoid_cocycle_from_coe(coe, 4)
    assert rep.ok
    for e in sample_iso_elements(coe, 20):
        assert cp.a(e) == e.g


def test_well_definedness_failure(ident2):
    entries = dict(ident2.a1.entries)
    w = (0, 1)
    entries[((1,), (1,), w, w)] = (2,)
    with pytest.raises(WellDefinednessFailed):
        groupoid_cocycle_from_coe(_with_table(ident2, "a1", entries), 4)


def test_psi_on_phi2(phi2, S):
    X, F2 = phi2.source, S["F2"]
    cp, _ = groupoid_cocycle_from_coe(phi2, 4)
    x = pt(F2, "0", "01")
    e = make_groupoid_element(X, x, (1,), (0,), X((1,), x))
    img = psi(cp, e)
    Phi = S["Phi2"]
    assert (img.x, img.g, img.y) == (apply_map(Phi, x), (1,), apply_map(Phi, X((1,), x)))


def test_groupoid_iso_identity(ident2):
    elems = sample_iso_elements(ident2, 20)
    images, rep = groupoid_iso_from_coe(ident2, elems, 4)
    assert rep.ok
    assert all(img == e for e, img in images.items())


def test_groupoid_iso_units(phi2, S):
    X, F2 = phi2.source, S["F2"]
    u = unit(X, pt(F2, "1", "0"))
    images, rep = groupoid_iso_from_coe(phi2, [u], 4)
    img = images[u]
    assert not any(img.g) and img.x == img.y


def test_iso_roundtrip_identity(ident2):
    iso = coe_to_groupoid_iso(ident2)
    assert isinstance(iso, GroupoidIsoData)
    back = coe_from_groupoid_iso(iso)
    assert lattice_identity_expected(back)
    ok, wit = cocycle_agreement(ident2, back)
    assert ok, wit


def test_cover_incomplete(ident2):
    iso = coe_to_groupoid_iso(ident2)
    target = next(e for e in iso.forward if e.A.m == (1,) and e.A.n == (0,))
    short = GroupoidIsoData(iso.source, iso.target, iso.phi, [e for e in iso.forward if e is not target],
                            iso.backward, iso.degree_bound, iso.name, iso.pair_depths)
    with pytest.raises(CoverIncomplete):
        coe_from_groupoid_iso(short)


def test_cocycle_agreement_detects_difference(ident2):
    entries = dict(ident2.a1.entries)
    k = sorted(entries)[5]
    entries[k] = lattice.add(entries[k], (1,))
    ok, wit = cocycle_agreement(ident2, _with_table(ident2, "a1", entries))
    assert not ok and wit is not None
