"""Continuous orbit equivalence, its groupoid cocycles and the groupoid isomorphism.

A COE is a homeomorphism ``phi: X -> Y`` with tables ``a1, b1`` on pairs
``(x, y)`` in ``X_(m,n)`` such that
``rho_{a1}(phi(x)) = rho_{b1}(phi(y))``, and symmetric tables ``a2, b2`` on
``Y``.  Pair tables are indexed by fibered cylinder pairs (see
:mod:`orbiteq.equivalence.pairs`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from orbiteq import lattice
from orbiteq.action import MonoidAction
from orbiteq.errors import (
    CocycleLawFailed,
    CoverIncomplete,
    DomainMismatch,
    InvalidInput,
    HomomorphismFailed,
    InversionFailed,
    NoRelatedExtension,
    NotBisectionForm,
    NotComposable,
    TableIncomplete,
    WellDefinednessFailed,
)
from orbiteq.equivalence.csoe import CsoeData, freeness_gate
from orbiteq.equivalence.pairs import fibered_pairs
from orbiteq.groupoid import (
    Bisection,
    GroupoidElement,
    bisection_check,
    compose,
    random_chain,
    rewitness,
    sample_elements,
)
from orbiteq.lattice import Element
from orbiteq.maps import ProgressiveHomeo, ProgressiveMap, apply_map, cylinder_image
from orbiteq.parallel import pmap
from orbiteq.report import REFUTED, UNDETERMINED, VERIFIED, Report
from orbiteq.shift import ClopenSet, TruncatedPoint, Word, extensions
from orbiteq.tables import PairTable


@dataclass
class CoeData:
    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    a1: PairTable
    b1: PairTable
    a2: PairTable
    b2: PairTable
    degree_bound: int
    name: str = "coe"

    def __post_init__(self):
        if self.phi.domain != self.source.space or self.phi.codomain != self.target.space:
            raise DomainMismatch("phi does not map the source space onto the target space")
        for t, sp in ((self.a1, self.source), (self.b1, self.source), (self.a2, self.target), (self.b2, self.target)):
            if t.sft != sp.space:
                raise DomainMismatch(f"table {t.name!r} lives on the wrong space")
        if self.a1.depth != self.b1.depth or self.a2.depth != self.b2.depth:
            raise DomainMismatch("paired tables must share a depth")

    def side(self, which: int):
        """``(act, other_act, phi_map, a, b)`` for the X side (0) or the Y side (1)."""
        if which == 0:
            return self.source, self.target, self.phi.forward, self.a1, self.b1
        return self.target, self.source, self.phi.inverse, self.a2, self.b2

    def inverted(self) -> "CoeData":
        return CoeData(self.target, self.source, self.phi.inverted(), self.a2, self.b2, self.a1, self.b1,
                       self.degree_bound, self.name)


def _pair_degrees(act: MonoidAction, bound: int) -> list[tuple[Element, Element]]:
    elems = lattice.monoid_elements(act.rank, bound)
    return [(m, n) for m in elems for n in elems]


def _check_side(act, other, phi: ProgressiveMap, ta: PairTable, tb: PairTable, bound: int, depth: int,
                period_bound: int, samples: int, label: str, rep: Report) -> None:
    D = ta.depth
    sft = act.space
    degs = _pair_degrees(act, bound)

    def run(mn):
        m, n = mn
        fps = fibered_pairs(act, m, n, D, period_bound, samples)
        for wx, wy in ta.pairs(m, n):
            if (wx, wy) not in fps.pairs:
                raise NoRelatedExtension(
                    f"{ta.name or 'table'} has an entry for ({lattice.format_element(m)}, "
                    f"{lattice.format_element(n)}, {sft.format_word(wx)!r}, {sft.format_word(wy)!r}) "
                    "but no related pair of points extends it",
                    witness=[sft.format_word(wx), sft.format_word(wy)],
                )
        fail = None
        undetermined = bool(fps.unresolved)
        for (wx, wy), pts in sorted(fps.pairs.items()):
            s, t = ta.get(m, n, wx, wy), tb.get(m, n, wx, wy)
            fs, ft = other.action_map(s), other.action_map(t)
            for x, y in pts:
                u, v = apply_map(phi, x), apply_map(phi, y)
                if u.exact and v.exact:
                    lhs, rhs = fs.exact_image(u), ft.exact_image(v)
                else:
                    lhs, rhs = None, None
                if lhs is None or rhs is None:
                    lhs, rhs = apply_map(fs, u, depth), apply_map(ft, v, depth)
                    same = lhs.take(depth) == rhs.take(depth)
                else:
                    same = lhs == rhs
                if not same:
                    fail = {"m": list(m), "n": list(n), "wx": sft.format_word(wx), "wy": sft.format_word(wy),
                            "x": x.format(sft), "y": y.format(sft), "a": list(s), "b": list(t)}
                    break
            if fail:
                break
        return m, n, fail, undetermined, len(fps.pairs)

    for m, n, fail, undetermined, count in pmap(run, degs):
        name = f"{label}[{lattice.format_element(m)}|{lattice.format_element(n)}]"
        if fail:
            rep.add(name, REFUTED, fail)
        elif undetermined:
            rep.add(name, UNDETERMINED, detail="some cylinder pairs have no located related points")
        else:
            rep.add(name, VERIFIED, detail=f"{count} cylinder pairs")


def verify_coe(data: CoeData, depth: int, period_bound: int = 4, samples: int = 2) -> Report:
    """Both pair equations on related eventually periodic representatives of every fibered cylinder pair."""
    rep = Report("coe", config={"degree_bound": data.degree_bound, "depth": depth, "period_bound": period_bound})
    for which, label in ((0, "forward"), (1, "backward")):
        act, other, phi, ta, tb = data.side(which)
        _check_side(act, other, phi, ta, tb, data.degree_bound, depth, period_bound, samples, label, rep)
    return rep


def default_pair_depth(*depths: int, bound: int) -> int:
    return max(max(depths, default=0), bound, 1)


def csoe_to_coe(data: CsoeData, depth: int | None = None, period_bound: int = 4) -> CoeData:
    """``a1(m, n, x, y) = a(m, x)``, ``b1 = a(n, y)``, and symmetrically from ``b``."""
    data.check_tables()
    D = depth if depth is not None else default_pair_depth(data.a.depth, data.b.depth, bound=data.degree_bound)
    if D < max(data.a.depth, data.b.depth):
        raise InvalidInput(f"pair depth {D} is below the csoe table depth")
    out = []
    for act, table, tag in ((data.source, data.a, "1"), (data.target, data.b, "2")):
        ea, eb = {}, {}
        for m, n in _pair_degrees(act, data.degree_bound):
            for wx, wy in fibered_pairs(act, m, n, D, period_bound).sorted_pairs():
                ea[(m, n, wx, wy)] = table.get(m, wx)
                eb[(m, n, wx, wy)] = table.get(n, wy)
        out.append(PairTable(act.space, D, ea, f"a{tag}"))
        out.append(PairTable(act.space, D, eb, f"b{tag}"))
    return CoeData(data.source, data.target, data.phi, *out, data.degree_bound, data.name)


# groupoid cocycles


@dataclass
class GroupoidCocyclePair:
    """The cocycles ``a(x, m - n, y) = a1 - b1`` on the source groupoid and ``b = a2 - b2`` on the target."""

    data: CoeData

    def _value(self, which: int, e: GroupoidElement) -> Element:
        act, _, _, ta, tb = self.data.side(which)
        bound = self.data.degree_bound
        m, n = e.m, e.n
        if lattice.degree(m) > bound or lattice.degree(n) > bound or not ta.has(m, n, e.x, e.y):
            r = rewitness(act, e, bound)
            if r is None:
                raise TableIncomplete(f"no witness of degree <= {bound} for the element")
            m, n = r.m, r.n
        return lattice.sub(ta.get(m, n, e.x, e.y), tb.get(m, n, e.x, e.y))

    def a(self, e: GroupoidElement) -> Element:
        return self._value(0, e)

    def b(self, e: GroupoidElement) -> Element:
        return self._value(1, e)

    def witness_values(self, which: int, e: GroupoidElement) -> tuple[Element, Element]:
        """``(a1, b1)`` (or ``(a2, b2)``) at a tabulated witness of ``e``."""
        act, _, _, ta, tb = self.data.side(which)
        bound = self.data.degree_bound
        m, n = e.m, e.n
        if lattice.degree(m) > bound or lattice.degree(n) > bound or not ta.has(m, n, e.x, e.y):
            r = rewitness(act, e, bound)
            if r is None:
                raise TableIncomplete(f"no witness of degree <= {bound} for the element")
            m, n = r.m, r.n
        return ta.get(m, n, e.x, e.y), tb.get(m, n, e.x, e.y)

    def difference_table(self, which: int) -> PairTable:
        _, _, _, ta, tb = self.data.side(which)
        return PairTable(ta.sft, ta.depth,
                         {k: lattice.sub(v, tb.entries[k]) for k, v in ta.entries.items()}, f"c{which + 1}")


def _fmt_el(act, e: GroupoidElement) -> dict:
    return {"x": e.x.format(act.space), "g": list(e.g), "y": e.y.format(act.space),
            "witness": [list(e.m), list(e.n)]}


def _well_defined(cp: GroupoidCocyclePair, which: int, period_bound: int):
    """Compare ``a1 - b1`` across all tabulated witnesses of each located related pair."""
    act, _, _, ta, tb = cp.data.side(which)
    bound = cp.data.degree_bound
    degs = _pair_degrees(act, bound)
    checked = 0
    for m, n in degs:
        fps = fibered_pairs(act, m, n, ta.depth, period_bound)
        for (wx, wy), pts in sorted(fps.pairs.items()):
            if not ta.has(m, n, wx, wy):
                continue
            val = lattice.sub(ta.get(m, n, wx, wy), tb.get(m, n, wx, wy))
            g = lattice.sub(m, n)
            for x, y in pts:
                for m2, n2 in degs:
                    if (m2, n2) == (m, n) or lattice.sub(m2, n2) != g:
                        continue
                    if act(m2, x) != act(n2, y):
                        continue
                    checked += 1
                    val2 = lattice.sub(ta.get(m2, n2, x, y), tb.get(m2, n2, x, y))
                    if val2 != val:
                        return {"x": x.format(act.space), "y": y.format(act.space),
                                "witness1": [list(m), list(n)], "witness2": [list(m2), list(n2)],
                                "value1": list(val), "value2": list(val2)}, checked
    return None, checked


def _chains(act: MonoidAction, count: int, degree: int, seed: int, period_bound: int):
    rnd = random.Random(seed)
    return [random_chain(act, rnd, 2, degree, period_bound) for _ in range(count)]


def _cocycle_law(cp: GroupoidCocyclePair, which: int, chains) -> tuple[dict | None, int]:
    act = cp.data.side(which)[0]
    bound = cp.data.degree_bound
    checked = 0
    for a, b in chains:
        c = compose(act, a, b)
        if rewitness(act, c, bound) is None or rewitness(act, a, bound) is None or rewitness(act, b, bound) is None:
            continue
        checked += 1
        va, vb, vc = cp._value(which, a), cp._value(which, b), cp._value(which, c)
        if vc != lattice.add(va, vb):
            return {"a": _fmt_el(act, a), "b": _fmt_el(act, b), "value_ab": list(vc),
                    "value_a": list(va), "value_b": list(vb)}, checked
    return None, checked


def psi(cp: GroupoidCocyclePair, e: GroupoidElement, which: int = 0) -> GroupoidElement:
    """``(x, g, y) -> (phi(x), a(x, g, y), phi(y))`` with witness ``(a1, b1)``; ``which=1`` is the reverse map."""
    phi = cp.data.side(which)[2]
    s, t = cp.witness_values(which, e)
    u, v = apply_map(phi, e.x), apply_map(phi, e.y)
    return GroupoidElement(u, lattice.sub(s, t), v, s, t)


def _inversion(cp: GroupoidCocyclePair, which: int, elements) -> tuple[dict | None, int]:
    """``b(Psi(gamma)) = c(gamma)`` and the Y-side witness of ``Psi(gamma)`` holds."""
    act, other = cp.data.side(which)[:2]
    checked = 0
    for e in elements:
        if rewitness(act, e, cp.data.degree_bound) is None:
            continue
        img = psi(cp, e, which)
        if other(img.m, img.x) != other(img.n, img.y):
            return {"element": _fmt_el(act, e), "reason": "image witness fails"}, checked
        try:
            back = cp._value(1 - which, img)
        except TableIncomplete:
            continue
        checked += 1
        if back != tuple(e.g):
            return {"element": _fmt_el(act, e), "back": list(back)}, checked
    return None, checked


def groupoid_cocycle_from_coe(data: CoeData, depth: int, period_bound: int = 4, samples: int = 30,
                              seed: int = 0, strict: bool = True) -> tuple[GroupoidCocyclePair, Report]:
    """Build the cocycle pair and check well-definedness, the cocycle law and mutual inversion."""
    cp = GroupoidCocyclePair(data)
    bound = data.degree_bound
    free, gate = freeness_gate([data.source, data.target], bound, depth)
    rep = Report("groupoid_cocycles", config={"degree_bound": bound, "depth": depth, "samples": samples,
                                              "seed": seed})
    rep.extend(gate)
    info = not free
    if info:
        rep.notes.append("hypothesis unmet: freeness not certified, identities are informational")
    errors = []
    for which, tag in ((0, "a"), (1, "b")):
        act = data.side(which)[0]
        wit, n = _well_defined(cp, which, period_bound)
        rep.add(f"{tag}_well_defined", REFUTED if wit else VERIFIED, wit, informational=info,
                detail=f"{n} witness pairs")
        if wit:
            errors.append(WellDefinednessFailed(f"cocycle {tag} depends on the witness", witness=wit))
        degree = max(1, bound // 2)
        chains = _chains(act, samples, degree, seed, period_bound)
        wit, n = _cocycle_law(cp, which, chains)
        rep.add(f"{tag}_cocycle_law", REFUTED if wit else VERIFIED, wit, informational=info,
                detail=f"{n} composable pairs")
        if wit:
            errors.append(CocycleLawFailed(f"cocycle {tag} is not multiplicative", witness=wit))
        elems = [e for ch in chains for e in ch]
        wit, n = _inversion(cp, which, elems)
        rep.add(f"{tag}_inversion", REFUTED if wit else VERIFIED, wit, informational=info,
                detail=f"{n} elements")
        if wit:
            errors.append(InversionFailed(f"cocycle {tag} is not inverted by the other side", witness=wit))
    if strict and errors and not info:
        raise errors[0]
    return cp, rep


def groupoid_iso_from_coe(data: CoeData, elements, depth: int, strict: bool = True):
    """Images ``Psi(gamma)`` of ``elements`` plus a report on homomorphism and inversion."""
    cp = GroupoidCocyclePair(data)
    X, Y = data.source, data.target
    rep = Report("groupoid_iso", config={"degree_bound": data.degree_bound, "depth": depth,
                                         "elements": len(elements)})
    elements = list(dict.fromkeys(elements))
    images = {e: psi(cp, e) for e in elements}
    bad = None
    for e, img in images.items():
        if Y(img.m, img.x) != Y(img.n, img.y):
            bad = bad or _fmt_el(X, e)
    rep.add("image_witnesses", REFUTED if bad else VERIFIED, bad)
    units = [e for e in elements if not any(e.g) and e.x == e.y]
    ubad = next((_fmt_el(X, e) for e in units if any(images[e].g) or images[e].x != images[e].y), None)
    rep.add("units", REFUTED if ubad else VERIFIED, ubad, detail=f"{len(units)} units")

    by_range: dict[TruncatedPoint, list[GroupoidElement]] = {}
    for b in elements:
        by_range.setdefault(b.x, []).append(b)
    pairs = [(a, b) for a in elements for b in by_range.get(a.y, [])]

    def hom(ab):
        a, b = ab
        c = compose(X, a, b)
        if rewitness(X, c, data.degree_bound) is None:
            return None
        try:
            lhs = psi(cp, c)
            rhs = compose(Y, images[a], images[b])
        except (NotComposable, TableIncomplete):
            return False
        return lhs == rhs

    results = pmap(hom, pairs)
    hfail = next(([_fmt_el(X, a), _fmt_el(X, b)] for (a, b), r in zip(pairs, results) if r is False), None)
    checked = sum(1 for r in results if r is not None)
    # products whose witness exceeds the degree bound lie outside the tables
    rep.add("homomorphism", REFUTED if hfail else VERIFIED, hfail,
            detail=f"{checked} of {len(pairs)} composable pairs")
    if checked < len(pairs):
        rep.notes.append(f"{len(pairs) - checked} composable pairs have products beyond the degree bound")
    ifail = None
    inv_checked = 0
    for e, img in images.items():
        try:
            back = psi(cp, img, which=1)
        except TableIncomplete:
            continue
        inv_checked += 1
        if back != e:
            ifail = ifail or _fmt_el(X, e)
    rep.add("inverse_roundtrip", REFUTED if ifail else VERIFIED, ifail,
            detail=f"{inv_checked} of {len(images)} elements")
    if strict and hfail:
        raise HomomorphismFailed("the induced map is not a homomorphism", witness=hfail)
    return images, rep


def sample_iso_elements(data: CoeData, count: int = 50, seed: int = 0) -> list[GroupoidElement]:
    degree = max(1, data.degree_bound // 2)
    return sample_elements(data.source, count, degree=degree, seed=seed)


# bisection-level isomorphisms


@dataclass
class IsoEntry:
    A: Bisection
    B: Bisection


@dataclass
class GroupoidIsoData:
    """A groupoid isomorphism tabulated on bisections.

    ``forward`` lists basic bisections ``A = S(U, m, n, V)`` of the source
    groupoid together with their images ``B = S(W, s, t, T)``; ``backward``
    does the same for the target groupoid.
    """

    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    forward: list[IsoEntry] = field(default_factory=list)
    backward: list[IsoEntry] = field(default_factory=list)
    degree_bound: int = 1
    name: str = "groupoid_iso"
    pair_depths: tuple[int, int] | None = None

    def side(self, which: int):
        if which == 0:
            return self.source, self.target, self.phi.forward, self.phi.inverse, self.forward
        return self.target, self.source, self.phi.inverse, self.phi.forward, self.backward


def _preimage_region(f: ProgressiveMap, region: ClopenSet, Z: ClopenSet) -> ClopenSet:
    """``region`` intersected with ``f^{-1}(Z)``."""
    if Z.is_empty() or region.is_empty():
        return ClopenSet.empty(region.sft)
    L = max(region.depth, f.modulus(Z.depth))
    words = [w for u in region.at_depth(region.depth) for w in extensions(region.sft, u, L)
             if f.image(w, Z.depth) in Z.words]
    return ClopenSet.from_words(region.sft, words) if words else ClopenSet.empty(region.sft)


def homeo_image(fwd: ProgressiveMap, inv: ProgressiveMap, region: ClopenSet) -> ClopenSet:
    """``phi(region)`` computed through the inverse: ``y`` is in it iff ``phi^{-1}(y)`` is in ``region``."""
    if region.is_empty():
        return ClopenSet.empty(fwd.codomain)
    d = region.depth
    M = max(inv.modulus(d), 1)
    words = [v for v in extensions(fwd.codomain, (), M) if region.contains_word(inv.image(v, d))]
    return ClopenSet.from_words(fwd.codomain, words) if words else ClopenSet.empty(fwd.codomain)


def basic_bisection(act: MonoidAction, m, n, wx: Word, wy: Word) -> Bisection:
    """``S(U0, m, n, V0)`` for the related part of ``[wx] x [wy]``."""
    fm, fn = act.action_map(m), act.action_map(n)
    cx, cy = ClopenSet.cylinder(act.space, wx), ClopenSet.cylinder(act.space, wy)
    E = max(len(wx), len(wy), 1)
    Z = cylinder_image(fm, cx, E).intersection(cylinder_image(fn, cy, E))
    return Bisection(_preimage_region(fm, cx, Z), tuple(m), tuple(n), _preimage_region(fn, cy, Z))


def _image_bisection(act, other, fwd, inv, A: Bisection, s, t) -> Bisection:
    return Bisection(homeo_image(fwd, inv, A.U), tuple(s), tuple(t), homeo_image(fwd, inv, A.V))


def coe_to_groupoid_iso(data: CoeData, period_bound: int = 4, max_refine: int = 2) -> GroupoidIsoData:
    """Tabulate ``Psi`` on the basic bisections of every fibered cylinder pair."""
    iso = GroupoidIsoData(data.source, data.target, data.phi, degree_bound=data.degree_bound, name=data.name,
                          pair_depths=(data.a1.depth, data.a2.depth))
    for which in (0, 1):
        act, other, fwd, inv, entries = iso.side(which)
        _, _, _, ta, tb = data.side(which)
        for m, n in _pair_degrees(act, data.degree_bound):
            for wx, wy in ta.pairs(m, n):
                s, t = ta.get(m, n, wx, wy), tb.get(m, n, wx, wy)
                pieces = [(wx, wy)]
                for _ in range(max_refine + 1):
                    built, todo = [], []
                    for px, py in pieces:
                        A = basic_bisection(act, m, n, px, py)
                        if A.U.is_empty():
                            continue
                        B = _image_bisection(act, other, fwd, inv, A, s, t)
                        if bisection_check(act, A) or bisection_check(other, B):
                            todo.append((px, py))
                        else:
                            built.append(IsoEntry(A, B))
                    entries.extend(built)
                    if not todo:
                        break
                    pieces = [(ex, ey) for px, py in todo
                              for ex in extensions(act.space, px, len(px) + 1)
                              for ey in extensions(act.space, py, len(py) + 1)]
                else:
                    px, py = todo[0]
                    raise NotBisectionForm(
                        f"no bisection of cylinder form found for ({lattice.format_element(m)}, "
                        f"{lattice.format_element(n)}) on {act.space.format_word(px)!r} x "
                        f"{act.space.format_word(py)!r}",
                        witness=[act.space.format_word(px), act.space.format_word(py)],
                    )
    return iso


def coe_from_groupoid_iso(iso: GroupoidIsoData, depth: int | None = None, period_bound: int = 4,
                          check: bool = True) -> CoeData:
    """Read ``(a1, b1) = (s, t)`` off the image bisection covering each fibered cylinder pair."""
    tables = []
    bound = iso.degree_bound
    for which in (0, 1):
        act, other, fwd, inv, entries = iso.side(which)
        for e in entries:
            if check:
                probs = bisection_check(act, e.A) + bisection_check(other, e.B)
                if probs:
                    raise NotBisectionForm(f"tabulated entry is not a pair of bisections: {probs[0]}")
        if depth is not None:
            D = depth
        elif iso.pair_depths is not None:
            D = iso.pair_depths[which]
        else:
            D = default_pair_depth(
            *(max(e.A.U.depth, e.A.V.depth) for e in entries), bound=bound)
        ea, eb = {}, {}
        by_deg: dict = {}
        exact: dict = {}
        for e in entries:
            by_deg.setdefault((e.A.m, e.A.n), []).append(e)
            exact.setdefault(e.A, e)
        for m, n in _pair_degrees(act, bound):
            for wx, wy in fibered_pairs(act, m, n, D, period_bound).sorted_pairs():
                A0 = basic_bisection(act, m, n, wx, wy)
                hit = exact.get(A0)
                for e in [] if hit else by_deg.get((m, n), []):
                    if A0.U.issubset(e.A.U) and A0.V.issubset(e.A.V):
                        hit = e
                        break
                if hit is None:
                    raise CoverIncomplete(
                        f"no tabulated bisection covers the related part of ({lattice.format_element(m)}, "
                        f"{lattice.format_element(n)}) on {act.space.format_word(wx)!r} x "
                        f"{act.space.format_word(wy)!r}",
                        witness=[list(m), list(n), act.space.format_word(wx), act.space.format_word(wy)],
                    )
                ea[(m, n, wx, wy)] = hit.B.m
                eb[(m, n, wx, wy)] = hit.B.n
        tag = str(which + 1)
        tables.append(PairTable(act.space, D, ea, f"a{tag}"))
        tables.append(PairTable(act.space, D, eb, f"b{tag}"))
    return CoeData(iso.source, iso.target, iso.phi, *tables, bound, iso.name)


def _compatible(u: Word, v: Word) -> bool:
    k = min(len(u), len(v))
    return u[:k] == v[:k]


def cocycle_agreement(d1: CoeData, d2: CoeData) -> tuple[bool, dict | None]:
    """Compare ``a1 - b1`` and ``a2 - b2`` on every pair of overlapping tabulated cylinder pairs."""
    for which in (0, 1):
        c1 = GroupoidCocyclePair(d1).difference_table(which)
        c2 = GroupoidCocyclePair(d2).difference_table(which)
        sft = c1.sft
        for (m, n, wx, wy), v in sorted(c1.entries.items()):
            found = False
            for (m2, n2, ux, uy), v2 in c2.entries.items():
                if (m2, n2) != (m, n) or not _compatible(wx, ux) or not _compatible(wy, uy):
                    continue
                found = True
                if v2 != v:
                    return False, {"side": which, "m": list(m), "n": list(n), "wx": sft.format_word(wx),
                                   "wy": sft.format_word(wy), "value1": list(v), "value2": list(v2)}
            if not found:
                return False, {"side": which, "m": list(m), "n": list(n), "wx": sft.format_word(wx),
                               "wy": sft.format_word(wy), "reason": "no matching entry"}
    return True, None
