"""Continuous one-sided orbit equivalence and the semi-groupoid isomorphism."""

from __future__ import annotations

from dataclasses import dataclass

from orbiteq import lattice
from orbiteq.action import MonoidAction, essentially_free
from orbiteq.errors import DomainMismatch, InvalidInput, RoundtripFailed, UnitsNotPreserved, VerificationFailed
from orbiteq.maps import ProgressiveHomeo, compose_maps, identity_map, maps_equal
from orbiteq.parallel import pmap
from orbiteq.report import REFUTED, UNDETERMINED, VERIFIED, Report, from_certificate
from orbiteq.shift import admissible_words, extensions, periodic_points
from orbiteq.tables import CylinderTable


@dataclass
class CsoeData:
    """``phi: X -> Y`` with ``phi(theta_m(x)) = rho_{a(m,x)}(phi(x))`` and
    ``phi^{-1}(rho_s(y)) = theta_{b(s,y)}(phi^{-1}(y))``.

    ``a`` is keyed by ``m`` in N_0^k over cylinders of X, ``b`` by ``s`` in
    N_0^l over cylinders of Y.
    """

    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    a: CylinderTable
    b: CylinderTable
    degree_bound: int
    name: str = "csoe"

    def __post_init__(self):
        if self.phi.domain != self.source.space or self.phi.codomain != self.target.space:
            raise DomainMismatch("phi does not map the source space onto the target space")
        if self.a.sft != self.source.space or self.b.sft != self.target.space:
            raise DomainMismatch("tables live on the wrong spaces")

    def check_tables(self) -> None:
        self.a.check_total(lattice.monoid_elements(self.source.rank, self.degree_bound))
        self.b.check_total(lattice.monoid_elements(self.target.rank, self.degree_bound))


def _transport_checks(rep: Report, label: str, src: MonoidAction, dst: MonoidAction, phi, table: CylinderTable,
                      bound: int, depth: int) -> None:
    """``phi o src_m = dst_{table(m, w)} o phi`` on every cylinder ``[w]`` of the table."""
    sft = src.space
    words = admissible_words(sft, table.depth)
    elems = lattice.monoid_elements(src.rank, bound)

    def run(m):
        lhs = compose_maps(phi, src.action_map(m))
        worst = None
        exact = True
        for w in words:
            s = table.get(m, w)
            rhs = compose_maps(dst.action_map(s), phi)
            cert = maps_equal(lhs, rhs, depth, within=w)
            exact = exact and cert.exact
            if not cert.verified:
                worst = (cert, w, s)
                break
        return m, worst, exact

    for m, worst, exact in pmap(run, elems):
        name = f"{label}[{lattice.format_element(m)}]"
        if worst is None:
            rep.add(name, VERIFIED, detail=f"{len(words)} cylinders")
            continue
        cert, w, s = worst
        wit = None
        if cert.witness is not None:
            wit = {"m": list(m), "cylinder": sft.format_word(w), "value": list(s),
                   "input": sft.format_word(cert.witness), "depth": depth}
        rep.add(name, from_certificate(cert.status), wit)


def verify_csoe(data: CsoeData, depth: int) -> Report:
    """Check both transport equations cylinder by cylinder at output depth ``depth``."""
    data.check_tables()
    rep = Report("csoe", config={"degree_bound": data.degree_bound, "depth": depth})
    _transport_checks(rep, "forward", data.source, data.target, data.phi.forward, data.a, data.degree_bound, depth)
    _transport_checks(rep, "backward", data.target, data.source, data.phi.inverse, data.b, data.degree_bound, depth)
    return rep


def freeness_gate(acts, degree_bound: int, depth: int) -> tuple[bool, Report]:
    rep = Report("freeness")
    ok = True
    for act in dict.fromkeys(acts):
        r = essentially_free(act, degree_bound, min(depth, 4))
        ok = ok and r.ok
        rep.add(f"free[{act.name}]", r.status, informational=True)
    return ok, rep


def _cocycle_identity(rep, act: MonoidAction, table: CylinderTable, bound: int, label: str, info: bool):
    """``a(n + m, x) = a(n, x) + a(m, theta_n(x))``."""
    D = table.depth
    fail = None
    count = 0
    for n in lattice.monoid_elements(act.rank, bound):
        fn = act.action_map(n)
        L = max(D, fn.modulus(D))
        for m in lattice.monoid_elements(act.rank, bound - lattice.degree(n)):
            nm = lattice.add(n, m)
            for w in admissible_words(act.space, L):
                count += 1
                lhs = table.get(nm, w)
                rhs = lattice.add(table.get(n, w), table.get(m, fn.image(w, D)))
                if lhs != rhs and fail is None:
                    fail = {"m": list(m), "n": list(n), "word": act.space.format_word(w),
                            "lhs": list(lhs), "rhs": list(rhs)}
    rep.add(f"{label}_cocycle_identity", REFUTED if fail else VERIFIED, fail, informational=info,
            detail=f"{count} cases")


def _inverse_identity(rep, src: MonoidAction, dst: MonoidAction, phi, ta: CylinderTable, tb: CylinderTable,
                   bound: int, label: str, info: bool):
    """``tb(ta(m, x), phi(x)) = m`` for ``|m| <= bound`` whenever ``ta(m, x)`` is within the table range."""
    L = max(ta.depth, phi.modulus(tb.depth))
    fail = None
    skipped = 0
    count = 0
    for m in lattice.monoid_elements(src.rank, bound):
        for w in admissible_words(src.space, L):
            s = ta.get(m, w)
            y = phi.image(w, tb.depth)
            if not tb.has(s, y):
                skipped += 1
                continue
            count += 1
            back = tb.get(s, y)
            if back != m and fail is None:
                fail = {"m": list(m), "word": src.space.format_word(w), "image": list(s), "back": list(back)}
    status = REFUTED if fail else (VERIFIED if count else UNDETERMINED)
    rep.add(f"{label}_inverse_identity", status, fail, informational=info,
            detail=f"{count} cases, {skipped} outside the tabulated range")


def _bijection(rep, src: MonoidAction, ta: CylinderTable, bound: int, label: str, info: bool):
    """``m -> ta(m, w)`` is injective and fixes the identity on every cylinder."""
    fail = None
    e = lattice.zero(src.rank)
    for w in admissible_words(src.space, ta.depth):
        vals = {}
        for m in lattice.monoid_elements(src.rank, bound):
            v = ta.get(m, w)
            if m == e and any(v):
                fail = fail or {"word": src.space.format_word(w), "reason": "identity not fixed", "value": list(v)}
            if v in vals:
                fail = fail or {"word": src.space.format_word(w), "reason": "not injective",
                                "m1": list(vals[v]), "m2": list(m)}
            vals[v] = m
    rep.add(f"{label}_bijection", REFUTED if fail else VERIFIED, fail, informational=info)


def check_derived_identities(data: CsoeData, depth: int) -> Report:
    """The cocycle identity, the mutual inversion of ``a`` and ``b``, and bijectivity of ``m -> a(m, x)``.

    These identities rely on both actions being essentially free; when
    freeness is not certified the checks are still run but marked
    informational.
    """
    data.check_tables()
    bound = data.degree_bound
    free, gate = freeness_gate([data.source, data.target], bound, depth)
    rep = Report("csoe_identities", config={"degree_bound": bound, "depth": depth})
    rep.extend(gate)
    info = not free
    if info:
        rep.notes.append("hypothesis unmet: freeness not certified, identities are informational")
    _cocycle_identity(rep, data.source, data.a, bound, "a", info)
    _cocycle_identity(rep, data.target, data.b, bound, "b", info)
    _inverse_identity(rep, data.source, data.target, data.phi.forward, data.a, data.b, bound, "ba", info)
    _inverse_identity(rep, data.target, data.source, data.phi.inverse, data.b, data.a, bound, "ab", info)
    _bijection(rep, data.source, data.a, bound, "a", info)
    _bijection(rep, data.target, data.b, bound, "b", info)
    return rep


@dataclass
class SemigroupoidIso:
    """``Lambda(m, x) = (lam(m, x), phi(x))`` with inverse ``(s, y) -> (lam_inv(s, y), phi^{-1}(y))``."""

    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    lam: CylinderTable
    lam_inv: CylinderTable
    degree_bound: int
    name: str = "semigroupoid_iso"


def _sample_points(act: MonoidAction, count: int):
    return list(periodic_points(act.space, (), period_bound=3, connector_bound=3, limit=count))


def check_semigroupoid_iso(iso: SemigroupoidIso, samples: int = 12) -> Report:
    """Mutual inversion and multiplicativity of the tabulated maps on sample points."""
    rep = Report("semigroupoid_iso", config={"degree_bound": iso.degree_bound, "samples": samples})
    X, Y = iso.source, iso.target
    bound = iso.degree_bound
    fail = None
    for x in _sample_points(X, samples):
        y = iso.phi.forward.exact_image(x)
        back = iso.phi.inverse.exact_image(y) if y is not None else None
        if back is not None and back != x:
            fail = fail or {"reason": "phi^-1 phi x != x", "x": x.format(X.space)}
        for m in lattice.monoid_elements(X.rank, bound):
            s = iso.lam.get(m, x)
            if y is None or not iso.lam_inv.has(s, y):
                continue
            if iso.lam_inv.get(s, y) != m:
                fail = fail or {"reason": "inverse of Lambda(m, x) is not (m, x)", "m": list(m),
                                "x": x.format(X.space)}
    rep.add("roundtrip", REFUTED if fail else VERIFIED, fail)
    # Lambda((m, x)(n, y)) = Lambda(m, x) Lambda(n, y) for x = theta_n(y)
    hfail = None
    for y in _sample_points(X, samples):
        for n in lattice.monoid_elements(X.rank, bound):
            x = X(n, y)
            for m in lattice.monoid_elements(X.rank, bound - lattice.degree(n)):
                s_prod = iso.lam.get(lattice.add(n, m), y)
                s_n, s_m = iso.lam.get(n, y), iso.lam.get(m, x)
                py, px = iso.phi.forward.exact_image(y), iso.phi.forward.exact_image(x)
                composable = px is not None and py is not None and Y(s_n, py) == px
                if not composable or s_prod != lattice.add(s_n, s_m):
                    hfail = hfail or {"m": list(m), "n": list(n), "y": y.format(X.space)}
    rep.add("homomorphism", REFUTED if hfail else VERIFIED, hfail)
    return rep


def semigroupoid_iso_forward(data: CsoeData, check: bool = True) -> SemigroupoidIso:
    """``Lambda(m, x) = (a(m, x), phi(x))`` and its inverse built from ``b``."""
    data.check_tables()
    iso = SemigroupoidIso(data.source, data.target, data.phi, data.a, data.b, data.degree_bound, data.name)
    if check:
        rep = check_semigroupoid_iso(iso)
        bad = rep.first_failure()
        if bad is not None:
            raise RoundtripFailed(f"semi-groupoid map check {bad.name} failed", witness=bad.witness)
    return iso


def semigroupoid_iso_extract(iso: SemigroupoidIso, check_depth: int | None = 4) -> CsoeData:
    """Read ``phi``, ``a = c o Lambda`` and ``b = c o Lambda^{-1}`` off a semi-groupoid isomorphism.

    The result is checked with :func:`verify_csoe` unless ``check_depth`` is None.
    """
    for table, act in ((iso.lam, iso.source), (iso.lam_inv, iso.target)):
        e = lattice.zero(act.rank)
        for w in admissible_words(table.sft, table.depth):
            if table.has(e, w) and any(table.get(e, w)):
                raise UnitsNotPreserved(
                    f"{table.name or 'table'} sends the unit at {table.sft.format_word(w)!r} to a non-unit"
                )
    data = CsoeData(iso.source, iso.target, iso.phi, iso.lam, iso.lam_inv, iso.degree_bound, iso.name)
    if check_depth is not None:
        bad = verify_csoe(data, check_depth).first_failure()
        if bad is not None:
            raise VerificationFailed(f"extracted csoe fails {bad.name}", witness=bad.witness)
    return data


def semigroupoid_iso(data, direction: str = "forward"):
    if direction == "forward":
        return semigroupoid_iso_forward(data)
    if direction == "extract":
        return semigroupoid_iso_extract(data)
    raise InvalidInput(f"unknown direction {direction!r}")


def self_csoe(act: MonoidAction, bound: int, name: str = "identity") -> CsoeData:
    ident = identity_map(act.space)
    phi = ProgressiveHomeo(ident, ident, name=f"id_{act.space.name}")
    keys = lattice.monoid_elements(act.rank, bound)
    a = CylinderTable.constant(act.space, keys, lambda m: m, name="a")
    b = CylinderTable.constant(act.space, keys, lambda m: m, name="b")
    return CsoeData(act, act, phi, a, b, bound, name)
