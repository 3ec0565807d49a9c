"""Orbit equivalence for actions by homeomorphisms, in group form.

For an action by homeomorphisms the second point of a related pair is
determined by the first, ``y = theta~_{m-n}(x)``, so the pair tables become
tables on single cylinders.  The cocycle form keeps one table
``a(g, x)`` with ``phi(theta~_g(x)) = rho~_{a(g, x)}(phi(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass

from orbiteq import lattice
from orbiteq.action import MonoidAction, extend_to_group
from orbiteq.equivalence.coe import CoeData, _pair_degrees, default_pair_depth
from orbiteq.equivalence.pairs import fibered_pairs
from orbiteq.errors import DomainMismatch, NotHomeomorphisms, VerificationFailed
from orbiteq.lattice import lattice_decompose
from orbiteq.maps import ProgressiveHomeo, compose_maps, maps_equal
from orbiteq.parallel import pmap
from orbiteq.report import Report, from_certificate
from orbiteq.shift import admissible_words
from orbiteq.tables import CylinderTable, PairTable

__all__ = [
    "GroupCoeData",
    "GroupCocycleData",
    "group_coe_convert",
    "group_to_semigroup",
    "differences",
    "lattice_decompose",
    "semigroup_to_group",
    "verify_group_cocycle",
    "verify_group_coe",
]


def require_homeomorphisms(*acts: MonoidAction) -> None:
    for act in acts:
        if not act.by_homeomorphisms:
            raise NotHomeomorphisms(f"{act.name} is not an action by homeomorphisms")


def differences(rank: int, bound: int) -> list[tuple[int, ...]]:
    """``{m - n : |m|, |n| <= bound}`` ordered by L1 norm, then lexicographically."""
    elems = lattice.monoid_elements(rank, bound)
    return sorted({lattice.sub(m, n) for m in elems for n in elems}, key=lambda g: (sum(map(abs, g)), g))


def _key(m, n) -> tuple[int, ...]:
    return tuple(m) + tuple(n)


@dataclass
class GroupCoeData:
    """``rho_{a1(m,n,x)}(phi(x)) = rho_{b1(m,n,x)}(phi(theta_n^{-1}(theta_m(x))))``.

    Tables are keyed by the concatenation ``m + n`` of the two exponents.
    """

    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    a1: CylinderTable
    b1: CylinderTable
    a2: CylinderTable
    b2: CylinderTable
    degree_bound: int
    name: str = "group_coe"

    def side(self, which: int):
        if which == 0:
            return self.source, self.target, self.phi.forward, self.a1, self.b1
        return self.target, self.source, self.phi.inverse, self.a2, self.b2


@dataclass
class GroupCocycleData:
    """``phi(theta~_g(x)) = rho~_{a(g,x)}(phi(x))`` and ``phi^{-1}(rho~_h(y)) = theta~_{b(h,y)}(phi^{-1}(y))``."""

    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    a: CylinderTable
    b: CylinderTable
    degree_bound: int
    name: str = "group_cocycle"

    def __post_init__(self):
        require_homeomorphisms(self.source, self.target)
        if self.a.sft != self.source.space or self.b.sft != self.target.space:
            raise DomainMismatch("cocycle tables live on the wrong spaces")

    def side(self, which: int):
        if which == 0:
            return self.source, self.target, self.phi.forward, self.a
        return self.target, self.source, self.phi.inverse, self.b


def _group_checks(rep: Report, label: str, act, other, phi, a: CylinderTable, b: CylinderTable | None,
                  bound: int, depth: int) -> None:
    """Per ``(m, n)``: the pair-table form when ``b`` is given, else the cocycle form keyed by ``g``."""
    words = admissible_words(act.space, a.depth)
    if b is not None:
        items = [((m, n), _key(m, n)) for m, n in _pair_degrees(act, bound)]
    else:
        items = [((g,), g) for g in differences(act.rank, bound)]

    def run(item):
        args, key = item
        fail = None
        for w in words:
            if b is not None:
                m, n = args
                lhs = compose_maps(other.action_map(a.get(key, w)), phi)
                rhs = compose_maps(compose_maps(other.action_map(b.get(key, w)), phi),
                                   extend_to_group(act, lattice.sub(m, n)))
            else:
                (g,) = args
                lhs = compose_maps(phi, extend_to_group(act, g))
                rhs = compose_maps(extend_to_group(other, a.get(key, w)), phi)
            cert = maps_equal(lhs, rhs, depth, within=w)
            if not cert.verified:
                fail = (cert, w)
                break
        return args, fail

    for args, fail in pmap(run, items):
        name = f"{label}[{'|'.join(lattice.format_element(e) for e in args)}]"
        if fail is None:
            rep.add(name, "verified")
            continue
        cert, w = fail
        wit = None
        if cert.witness is not None:
            wit = {"key": [list(e) for e in args], "cylinder": act.space.format_word(w),
                   "input": act.space.format_word(cert.witness)}
        rep.add(name, from_certificate(cert.status), wit)


def verify_group_coe(data: GroupCoeData, depth: int) -> Report:
    require_homeomorphisms(data.source, data.target)
    rep = Report("group_coe", config={"degree_bound": data.degree_bound, "depth": depth})
    for which, label in ((0, "forward"), (1, "backward")):
        act, other, phi, a, b = data.side(which)
        _group_checks(rep, label, act, other, phi, a, b, data.degree_bound, depth)
    return rep


def verify_group_cocycle(data: GroupCocycleData, depth: int) -> Report:
    rep = Report("group_cocycle", config={"degree_bound": data.degree_bound, "depth": depth})
    for which, label in ((0, "forward"), (1, "backward")):
        act, other, phi, a = data.side(which)
        _group_checks(rep, label, act, other, phi, a, None, data.degree_bound, depth)
    return rep


def semigroup_to_group(coe: CoeData, depth: int = 4, check: bool = True) -> tuple[GroupCoeData, GroupCocycleData]:
    """Evaluate the pair tables at ``y = theta~_{m-n}(x)`` and take differences for the cocycle form."""
    require_homeomorphisms(coe.source, coe.target)
    bound = coe.degree_bound
    forms, cocycles = [], []
    for which in (0, 1):
        act, _, _, ta, tb = coe.side(which)
        P = ta.depth
        degs = _pair_degrees(act, bound)
        hs = {(m, n): extend_to_group(act, lattice.sub(m, n)) for m, n in degs}
        L = max(max(P, h.modulus(P)) for h in hs.values())
        ea, eb, ec = {}, {}, {}
        for m, n in degs:
            h = hs[(m, n)]
            for w in admissible_words(act.space, L):
                wy = h.image(w, P)
                ea[(_key(m, n), w)] = ta.get(m, n, w[:P], wy)
                eb[(_key(m, n), w)] = tb.get(m, n, w[:P], wy)
        for g in differences(act.rank, bound):
            m, n = lattice_decompose(g)
            for w in admissible_words(act.space, L):
                ec[(g, w)] = lattice.sub(ea[(_key(m, n), w)], eb[(_key(m, n), w)])
        forms.append(CylinderTable(act.space, L, ea, f"a{which + 1}").normalized())
        forms.append(CylinderTable(act.space, L, eb, f"b{which + 1}").normalized())
        cocycles.append(CylinderTable(act.space, L, ec, "ab"[which]).normalized())
    form = GroupCoeData(coe.source, coe.target, coe.phi, *forms, bound, coe.name)
    cocycle = GroupCocycleData(coe.source, coe.target, coe.phi, *cocycles, bound, coe.name)
    if check:
        for rep in (verify_group_coe(form, depth), verify_group_cocycle(cocycle, depth)):
            bad = rep.first_failure()
            if bad is not None:
                raise VerificationFailed(f"group form check {bad.name} failed", witness=bad.witness)
    return form, cocycle


def group_to_semigroup(data: GroupCocycleData, depth: int | None = None, period_bound: int = 4) -> CoeData:
    """``a1 = a(g, x) v 0`` and ``b1 = a1 - a(g, x)`` for ``g = m - n`` on every fibered cylinder pair."""
    require_homeomorphisms(data.source, data.target)
    bound = data.degree_bound
    P = depth if depth is not None else default_pair_depth(data.a.depth, data.b.depth, bound=bound)
    tables = []
    for which in (0, 1):
        act, _, _, a = data.side(which)
        ea, eb = {}, {}
        for m, n in _pair_degrees(act, bound):
            g = lattice.sub(m, n)
            for wx, wy in fibered_pairs(act, m, n, P, period_bound).sorted_pairs():
                a1, b1 = lattice_decompose(a.get(g, wx))
                ea[(m, n, wx, wy)] = a1
                eb[(m, n, wx, wy)] = b1
        tag = str(which + 1)
        tables += [PairTable(act.space, P, ea, f"a{tag}"), PairTable(act.space, P, eb, f"b{tag}")]
    return CoeData(data.source, data.target, data.phi, *tables, bound, data.name)


def group_coe_convert(direction: str, data, depth: int = 4):
    if direction == "semigroup_to_group":
        return semigroup_to_group(data, depth)
    if direction == "group_to_semigroup":
        return group_to_semigroup(data)
    raise ValueError(f"unknown direction {direction!r}")
