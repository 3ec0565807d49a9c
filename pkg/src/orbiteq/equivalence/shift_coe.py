"""Continuous orbit equivalence of one-sided shifts in terms of ``k, l: X -> N_0``.

The shift data satisfy ``sigma^{k(x)}(phi(sigma(x))) = sigma^{l(x)}(phi(x))``
and the same with ``k', l'`` for ``phi^{-1}``.  Conversion to pair tables
uses the cocycle sums ``k^n(x) = sum_{i<n} k(sigma^i(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass

from orbiteq.action import MonoidAction
from orbiteq.equivalence.coe import CoeData, default_pair_depth, _pair_degrees
from orbiteq.equivalence.pairs import fibered_pairs
from orbiteq.errors import DomainMismatch, NotRankOne, VerificationFailed
from orbiteq.maps import ProgressiveHomeo, compose_maps, maps_equal, shift_map
from orbiteq.report import Report, from_certificate
from orbiteq.shift import admissible_words, some_point
from orbiteq.tables import CylinderTable, PairTable

NOKEY = ()


@dataclass
class ShiftCoeData:
    source: MonoidAction
    target: MonoidAction
    phi: ProgressiveHomeo
    k: CylinderTable
    l: CylinderTable
    kp: CylinderTable
    lp: CylinderTable
    name: str = "shift_coe"

    def __post_init__(self):
        require_shift_actions(self.source, self.target)
        if self.phi.domain != self.source.space or self.phi.codomain != self.target.space:
            raise DomainMismatch("phi does not map the source space onto the target space")
        for t, sp in ((self.k, self.source), (self.l, self.source), (self.kp, self.target), (self.lp, self.target)):
            if t.sft != sp.space:
                raise DomainMismatch(f"table {t.name!r} lives on the wrong space")
            t.check_total([NOKEY])
            if any(v[0] < 0 or len(v) != 1 for v in t.entries.values()):
                raise DomainMismatch(f"table {t.name!r} must take values in N_0")

    def side(self, which: int):
        if which == 0:
            return self.source, self.target, self.phi.forward, self.k, self.l
        return self.target, self.source, self.phi.inverse, self.kp, self.lp


def require_shift_actions(*acts: MonoidAction) -> None:
    for act in acts:
        if act.rank != 1 or act.shift_powers() != [1]:
            raise NotRankOne(f"{act.name} is not the N_0 action of the shift map")


def _value(t: CylinderTable, w) -> int:
    return t.get(NOKEY, w)[0]


def matsumoto_report(data: ShiftCoeData, depth: int) -> Report:
    """``sigma^{k(w)} o phi o sigma = sigma^{l(w)} o phi`` on every cylinder ``[w]``, and the same for ``phi^{-1}``."""
    rep = Report("shift_coe", config={"depth": depth})
    for which, label in ((0, "forward"), (1, "backward")):
        act, other, phi, k, l = data.side(which)
        D = max(k.depth, l.depth)
        kk, ll = k.refine(D), l.refine(D)
        sigma_x = shift_map(act.space)
        lhs_base = compose_maps(phi, sigma_x)
        fail = None
        exact = True
        for w in admissible_words(act.space, D):
            kw, lw = _value(kk, w), _value(ll, w)
            lhs = compose_maps(shift_map(other.space, kw), lhs_base)
            rhs = compose_maps(shift_map(other.space, lw), phi)
            cert = maps_equal(lhs, rhs, depth, within=w)
            exact = exact and cert.exact
            if not cert.verified:
                if cert.refuted:
                    # shortest refuting comparison depth gives the shortest witness word
                    for d in range(1, depth):
                        c = maps_equal(lhs, rhs, d, within=w)
                        if c.refuted:
                            cert = c
                            break
                fail = (cert, w, kw, lw)
                break
        if fail is None:
            rep.add(label, "verified", exact=exact, detail=f"{len(admissible_words(act.space, D))} cylinders")
            continue
        cert, w, kw, lw = fail
        wit = None
        if cert.witness is not None:
            wit = {"cylinder": act.space.format_word(w), "k": kw, "l": lw,
                   "word": act.space.format_word(cert.witness),
                   "point": some_point(act.space, cert.witness).format(act.space)}
        rep.add(label, from_certificate(cert.status), wit)
    return rep


def verify_shift_coe(data: ShiftCoeData, depth: int) -> Report:
    return matsumoto_report(data, depth)


def cocycle_sum(t: CylinderTable, n: int) -> CylinderTable:
    """``t^n(x) = sum_{i<n} t(sigma^i(x))`` tabulated at depth ``D + n - 1``."""
    sft = t.sft
    if n == 0:
        return CylinderTable.constant(sft, [NOKEY], lambda _: (0,), name=f"{t.name}^0")
    D = t.depth
    if D == 0:
        c = _value(t, ())
        return CylinderTable.constant(sft, [NOKEY], lambda _: (n * c,), name=f"{t.name}^{n}")
    depth = D + n - 1
    entries = {}
    for w in admissible_words(sft, depth):
        entries[(NOKEY, w)] = (sum(_value(t, w[i:i + D]) for i in range(n)),)
    return CylinderTable(sft, depth, entries, f"{t.name}^{n}")


def to_semigroup(data: ShiftCoeData, degree_bound: int, depth: int | None = None, check: bool = True,
                 check_depth: int = 4, period_bound: int = 4) -> CoeData:
    """``a1(m, n, x, y) = l^m(x) + k^n(y)`` and ``b1(m, n, x, y) = k^m(x) + l^n(y)``; same with ``k', l'``."""
    if check:
        rep = matsumoto_report(data, check_depth)
        bad = rep.first_failure()
        if bad is not None:
            raise VerificationFailed(f"shift data fail the transport equation ({bad.name})", witness=bad.witness)
    tdepth = max(data.k.depth, data.l.depth, data.kp.depth, data.lp.depth)
    P = depth if depth is not None else default_pair_depth(tdepth + degree_bound - 1, bound=degree_bound)
    tables = []
    for which in (0, 1):
        act, _, _, k, l = data.side(which)
        ks = [cocycle_sum(k, n) for n in range(degree_bound + 1)]
        ls = [cocycle_sum(l, n) for n in range(degree_bound + 1)]
        ea, eb = {}, {}
        for m, n in _pair_degrees(act, degree_bound):
            i, j = m[0], n[0]
            for wx, wy in fibered_pairs(act, m, n, P, period_bound).sorted_pairs():
                ea[(m, n, wx, wy)] = (_value(ls[i], wx) + _value(ks[j], wy),)
                eb[(m, n, wx, wy)] = (_value(ks[i], wx) + _value(ls[j], wy),)
        tag = str(which + 1)
        tables += [PairTable(act.space, P, ea, f"a{tag}"), PairTable(act.space, P, eb, f"b{tag}")]
    return CoeData(data.source, data.target, data.phi, *tables, degree_bound, data.name)


def from_semigroup(coe: CoeData, check: bool = True, check_depth: int = 4) -> ShiftCoeData:
    """``k(x) = b1(1, 0, x, sigma(x))`` and ``l(x) = a1(1, 0, x, sigma(x))``; same on the target side."""
    require_shift_actions(coe.source, coe.target)
    one, zero = (1,), (0,)
    out = []
    for which, names in ((0, ("k", "l")), (1, ("kp", "lp"))):
        act, _, _, ta, tb = coe.side(which)
        P = ta.depth
        ke, le = {}, {}
        for w in admissible_words(act.space, P + 1):
            wx, wy = w[:P], w[1:]
            ke[(NOKEY, w)] = tb.get(one, zero, wx, wy)
            le[(NOKEY, w)] = ta.get(one, zero, wx, wy)
        out.append(CylinderTable(act.space, P + 1, ke, names[0]).normalized())
        out.append(CylinderTable(act.space, P + 1, le, names[1]).normalized())
    data = ShiftCoeData(coe.source, coe.target, coe.phi, *out, name=coe.name)
    if check:
        rep = matsumoto_report(data, check_depth)
        bad = rep.first_failure()
        if bad is not None:
            raise VerificationFailed(f"extracted shift data fail the transport equation ({bad.name})",
                                     witness=bad.witness)
    return data


def shift_coe_convert(direction: str, data, degree_bound: int = 3, depth: int | None = None):
    if direction == "to_semigroup":
        return to_semigroup(data, degree_bound, depth)
    if direction == "from_semigroup":
        return from_semigroup(data)
    raise ValueError(f"unknown direction {direction!r}")


def constant_tables(act: MonoidAction, value: int, name: str) -> CylinderTable:
    return CylinderTable.constant(act.space, [NOKEY], lambda _: (value,), name=name)


def pair_table_equal_on(t1: PairTable, t2: PairTable, m, n) -> bool:
    m, n = tuple(m), tuple(n)
    return {k: v for k, v in t1.entries.items() if k[:2] == (m, n)} == \
        {k: v for k, v in t2.entries.items() if k[:2] == (m, n)}


def lattice_identity_expected(coe: CoeData) -> bool:
    """True when ``a1 = m`` and ``b1 = n`` on every entry of both sides."""
    for t, pos in ((coe.a1, 0), (coe.b1, 1), (coe.a2, 0), (coe.b2, 1)):
        for key, v in t.entries.items():
            if v != tuple(key[pos]):
                return False
    return True

