"""The semi-groupoid ``P x| X`` and the transformation groupoid of an action.

Neither object is ever built as a whole.  Elements carry explicit data:
a groupoid element ``(x, g, y)`` stores a witness ``(m, n)`` with
``g = m - n`` and ``theta_m(x) = theta_n(y)``.  Points are eventually
periodic, so every relation is checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from orbiteq import lattice
from orbiteq.action import MonoidAction, extend_to_group
from orbiteq.errors import (
    InvalidInput,
    InversionFailed,
    NotComposable,
    NotHomeomorphisms,
    NotInV,
    NotRelated,
    RoundtripFailed,
    Undetermined,
)
from orbiteq.lattice import Element
from orbiteq.maps import ProgressiveMap, apply_map, cylinder_image, preimages
from orbiteq.parallel import pmap
from orbiteq.report import REFUTED, UNDETERMINED, VERIFIED, Report
from orbiteq.shift import ClopenSet, TruncatedPoint, extensions, first_difference, periodic_points


def _require_exact(*pts: TruncatedPoint) -> None:
    for p in pts:
        if not p.exact:
            raise Undetermined("groupoid calculus needs eventually periodic points")


def _difference(p: TruncatedPoint, q: TruncatedPoint) -> int | None:
    return first_difference(p, q)


@dataclass(frozen=True)
class SemiGroupoidElement:
    m: Element
    x: TruncatedPoint


def sg_compose(act: MonoidAction, p: SemiGroupoidElement, q: SemiGroupoidElement) -> SemiGroupoidElement:
    """``(m, x)(n, y) = (n + m, y)``, defined when ``x = theta_n(y)``."""
    _require_exact(p.x, q.x)
    image = act(q.m, q.x)
    d = _difference(p.x, image)
    if d is not None:
        raise NotComposable(f"theta_{q.m}(y) and x differ at index {d}", witness=d)
    return SemiGroupoidElement(lattice.add(q.m, p.m), q.x)


@dataclass(frozen=True)
class GroupoidElement:
    """``(x, g, y)`` with witness ``theta_m(x) = theta_n(y)``, ``g = m - n``.

    Equality and hashing ignore the witness.
    """

    x: TruncatedPoint
    g: Element
    y: TruncatedPoint
    m: Element
    n: Element

    def __post_init__(self):
        if lattice.sub(self.m, self.n) != tuple(self.g):
            raise InvalidInput(f"witness ({self.m}, {self.n}) does not give g = {self.g}")

    def key(self):
        return (self.x, tuple(self.g), self.y)

    def __eq__(self, other):
        if not isinstance(other, GroupoidElement):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def witness(self) -> tuple[Element, Element]:
        return self.m, self.n


def make_groupoid_element(act: MonoidAction, x: TruncatedPoint, m, n, y: TruncatedPoint) -> GroupoidElement:
    """Build ``(x, m - n, y)`` after checking ``theta_m(x) = theta_n(y)`` exactly."""
    _require_exact(x, y)
    m, n = act.check_element(m), act.check_element(n)
    a, b = act(m, x), act(n, y)
    d = _difference(a, b)
    if d is not None:
        raise NotRelated(f"theta_m(x) and theta_n(y) differ at index {d}", witness=d)
    return GroupoidElement(x, lattice.sub(m, n), y, m, n)


def unit(act: MonoidAction, x: TruncatedPoint) -> GroupoidElement:
    e = lattice.zero(act.rank)
    return GroupoidElement(x, e, x, e, e)


def range_point(a: GroupoidElement) -> TruncatedPoint:
    return a.x


def domain_point(a: GroupoidElement) -> TruncatedPoint:
    return a.y


def inverse(a: GroupoidElement) -> GroupoidElement:
    return GroupoidElement(a.y, lattice.neg(a.g), a.x, a.n, a.m)


def compose(act: MonoidAction, a: GroupoidElement, b: GroupoidElement) -> GroupoidElement:
    """``(x, g, y)(y, h, z) = (x, g + h, z)`` with the canonically rebalanced witness."""
    d = _difference(a.y, b.x)
    if d is not None:
        raise NotComposable(f"d(a) and r(b) differ at index {d}", witness=d)
    p = lattice.positive_part(lattice.sub(b.m, a.n))
    q = lattice.positive_part(lattice.sub(a.n, b.m))
    m, n = lattice.add(a.m, p), lattice.add(b.n, q)
    return GroupoidElement(a.x, lattice.add(a.g, b.g), b.y, m, n)


def g_ops(act: MonoidAction, a: GroupoidElement, b: GroupoidElement) -> dict:
    """Composite, inverse of ``a``, and range/domain of both."""
    return {
        "compose": compose(act, a, b),
        "inverse": inverse(a),
        "range": (a.x, b.x),
        "domain": (a.y, b.y),
    }


def find_witness(act: MonoidAction, x: TruncatedPoint, g, y: TruncatedPoint, bound: int) -> tuple[Element, Element] | None:
    """Least ``(m, n)`` with ``m - n = g``, ``|m|, |n| <= bound`` and ``theta_m(x) = theta_n(y)``."""
    g = tuple(g)
    base_m, base_n = lattice.lattice_decompose(g)
    for r in lattice.monoid_elements(act.rank, bound):
        m, n = lattice.add(base_m, r), lattice.add(base_n, r)
        if lattice.degree(m) > bound or lattice.degree(n) > bound:
            continue
        if act(m, x) == act(n, y):
            return m, n
    return None


def rewitness(act: MonoidAction, a: GroupoidElement, bound: int) -> GroupoidElement | None:
    """The same element with its least witness of degree at most ``bound``, if one exists."""
    w = find_witness(act, a.x, a.g, a.y, bound)
    return None if w is None else GroupoidElement(a.x, a.g, a.y, *w)


@dataclass(frozen=True)
class Bisection:
    """The basic open set ``{(u, m - n, v) : u in U, v in V, theta_m(u) = theta_n(v)}``."""

    U: ClopenSet
    m: Element
    n: Element
    V: ClopenSet

    def image_depth(self, act: MonoidAction) -> int:
        return max(self.U.depth, self.V.depth, 1)


def injective_on(f: ProgressiveMap, region: ClopenSet, lag: int = 2) -> tuple | None:
    """None if ``f`` is injective on ``region`` at cylinder level, else a colliding pair of words."""
    if region.is_empty():
        return None
    d = region.depth
    keep = d + 1
    n = keep + lag
    seen = {}
    for u in sorted(region.words):
        for w in extensions(region.sft, u, max(f.modulus(n), keep)):
            out = f.image(w, n)
            head = w[:keep]
            prev = seen.setdefault(out, head)
            if prev != head:
                return prev, head
    return None


def bisection_check(act: MonoidAction, B: Bisection) -> list[str]:
    """Problems with ``B`` as a bisection (empty list when it is one)."""
    problems = []
    fm, fn = act.action_map(B.m), act.action_map(B.n)
    if injective_on(fm, B.U) is not None:
        problems.append("theta_m is not injective on U")
    if injective_on(fn, B.V) is not None:
        problems.append("theta_n is not injective on V")
    d = B.image_depth(act)
    if cylinder_image(fm, B.U, d) != cylinder_image(fn, B.V, d):
        problems.append("theta_m(U) differs from theta_n(V)")
    return problems


def bisection_eval(act: MonoidAction, B: Bisection, z: TruncatedPoint) -> TruncatedPoint:
    """``alpha_B(z) = (theta_m|_U)^{-1}(theta_n(z))`` for ``z`` in ``V``."""
    _require_exact(z)
    if z not in B.V:
        raise NotInV("point is not in V", witness=z.take(B.V.depth))
    t = act(B.n, z)
    pre = preimages(act.action_map(B.m), t, B.U)
    if not pre:
        raise InversionFailed("no preimage of theta_n(z) in U was found")
    if len(pre) > 1:
        raise InversionFailed("theta_m has several preimages in U", witness=pre[:2])
    return pre[0]


def bisection_element(act: MonoidAction, B: Bisection, z: TruncatedPoint) -> GroupoidElement:
    return GroupoidElement(bisection_eval(act, B, z), lattice.sub(B.m, B.n), z, B.m, B.n)


def _fmt(act, p: TruncatedPoint) -> str:
    return p.format(act.space)


def _element_label(act, a: GroupoidElement) -> dict:
    return {"x": _fmt(act, a.x), "g": list(a.g), "y": _fmt(act, a.y)}


def verify_axioms(act: MonoidAction, elements: Sequence[GroupoidElement], depth: int | None = None,
                  triples: Sequence[tuple[GroupoidElement, ...]] = ()) -> Report:
    """Groupoid laws on a finite sample.

    Checks every element's witness, then over all composable pairs of the
    sample: range/domain of products, additivity of the canonical cocycle,
    unit laws and inverse laws; and associativity over composable triples
    (all triples of the sample plus any given chains).
    """
    rep = Report("groupoid_axioms", config={"elements": len(elements)})
    elements = list(dict.fromkeys(elements))
    bad = []
    for a in elements:
        try:
            make_groupoid_element(act, a.x, a.m, a.n, a.y)
        except NotRelated:
            bad.append(_element_label(act, a))
    rep.add("witnesses", REFUTED if bad else VERIFIED, bad[0] if bad else None)

    by_range: dict[TruncatedPoint, list[GroupoidElement]] = {}
    for b in elements:
        by_range.setdefault(b.x, []).append(b)
    pairs = [(a, b) for a in elements for b in by_range.get(a.y, [])]

    def check_pair(ab):
        a, b = ab
        c = compose(act, a, b)
        errs = []
        if c.x != a.x or c.y != b.y:
            errs.append("range/domain")
        if c.g != lattice.add(a.g, b.g):
            errs.append("cocycle")
        try:
            make_groupoid_element(act, c.x, c.m, c.n, c.y)
        except NotRelated:
            errs.append("witness")
        return errs

    results = pmap(check_pair, pairs)
    for name in ("range/domain", "cocycle", "witness"):
        fails = [ab for ab, errs in zip(pairs, results) if name in errs]
        label = {"range/domain": "range_domain", "cocycle": "cocycle_additive", "witness": "product_witness"}[name]
        rep.add(label, REFUTED if fails else VERIFIED,
                [_element_label(act, fails[0][0]), _element_label(act, fails[0][1])] if fails else None,
                detail=f"{len(pairs)} composable pairs")

    unit_fail = None
    inv_fail = None
    for a in elements:
        if compose(act, unit(act, a.x), a) != a or compose(act, a, unit(act, a.y)) != a:
            unit_fail = unit_fail or _element_label(act, a)
        ai = inverse(a)
        if compose(act, a, ai) != unit(act, a.x) or compose(act, ai, a) != unit(act, a.y) or inverse(ai) != a:
            inv_fail = inv_fail or _element_label(act, a)
    rep.add("unit_laws", REFUTED if unit_fail else VERIFIED, unit_fail)
    rep.add("inverse_laws", REFUTED if inv_fail else VERIFIED, inv_fail)

    chains = list(triples)
    for a, b in pairs:
        for c in by_range.get(b.y, []):
            chains.append((a, b, c))
    assoc_fail = None
    for a, b, c in chains:
        left = compose(act, compose(act, a, b), c)
        right = compose(act, a, compose(act, b, c))
        if left != right:
            assoc_fail = assoc_fail or [_element_label(act, e) for e in (a, b, c)]
    rep.add("associativity", REFUTED if assoc_fail else VERIFIED, assoc_fail, detail=f"{len(chains)} triples")
    return rep


def random_point(act: MonoidAction, rnd: random.Random, period_bound: int = 4) -> TruncatedPoint:
    pts = list(periodic_points(act.space, (), period_bound=period_bound, connector_bound=period_bound))
    return rnd.choice(pts)


def random_element(act: MonoidAction, rnd: random.Random, x: TruncatedPoint, degree: int) -> GroupoidElement:
    """A random element with range ``x`` and witness of degree at most ``degree``."""
    elems = lattice.monoid_elements(act.rank, degree)
    for _ in range(100):
        m, n = rnd.choice(elems), rnd.choice(elems)
        t = act(m, x)
        ys = preimages(act.action_map(n), t)
        if ys:
            return make_groupoid_element(act, x, m, n, rnd.choice(ys))
    return unit(act, x)


def random_chain(act: MonoidAction, rnd: random.Random, length: int = 3, degree: int = 3,
                 period_bound: int = 4) -> list[GroupoidElement]:
    """``length`` composable elements ``a_1 a_2 ... a_length``."""
    x = random_point(act, rnd, period_bound)
    chain = []
    for _ in range(length):
        a = random_element(act, rnd, x, degree)
        chain.append(a)
        x = a.y
    return chain


def sample_elements(act: MonoidAction, count: int, degree: int = 2, seed: int = 0,
                    period_bound: int = 4) -> list[GroupoidElement]:
    """``count`` elements built as short chains, so the sample has many composable pairs."""
    rnd = random.Random(seed)
    out: list[GroupoidElement] = []
    while len(out) < count:
        for a in random_chain(act, rnd, 3, degree, period_bound):
            if a not in out and len(out) < count:
                out.append(a)
    return out


def group_case_iso(act: MonoidAction, e: GroupoidElement) -> tuple[TruncatedPoint, Element]:
    """``(x, g, y) -> (x, g)``; checks that ``y`` is recovered as the group image of ``x``."""
    if not act.by_homeomorphisms:
        raise NotHomeomorphisms(f"{act.name} is not an action by homeomorphisms")
    forward = (e.x, tuple(e.g))
    y = apply_map(extend_to_group(act, e.g), e.x)
    d = _difference(y, e.y)
    if d is not None:
        raise RoundtripFailed(f"reconstructed domain differs from y at index {d}", witness=d)
    return forward


def group_case_inverse(act: MonoidAction, x: TruncatedPoint, g) -> GroupoidElement:
    """``(x, g) -> (x, g, theta~_g(x))`` with the reduced witness."""
    y = apply_map(extend_to_group(act, g), x)
    m, n = lattice.lattice_decompose(g)
    return make_groupoid_element(act, x, m, n, y)
