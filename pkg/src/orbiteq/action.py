"""Actions of N_0^k on shift spaces by surjective local homeomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from orbiteq import lattice
from orbiteq.errors import DomainMismatch, InvalidInput, NotHomeomorphisms, Undetermined
from orbiteq.lattice import Element
from orbiteq.maps import (
    REFUTED,
    UNDETERMINED,
    VERIFIED,
    ProgressiveHomeo,
    ProgressiveMap,
    apply_map,
    check_local_homeo,
    compose_maps,
    identity_map,
    maps_equal,
)
from orbiteq.parallel import pmap
from orbiteq.report import Report, from_certificate
from orbiteq.shift import Sft, TruncatedPoint, Word, admissible_words, periodic_points


class MonoidAction:
    """A right action of N_0^k given by commuting generators.

    ``generators[i]`` is the map of the i-th unit vector.  When
    ``inverses`` is given the action is by homeomorphisms and extends to
    Z^k (see :meth:`group_map`).
    """

    def __init__(self, space: Sft, generators: Sequence[ProgressiveMap],
                 inverses: Sequence[ProgressiveMap] | None = None, name: str = ""):
        if not generators:
            raise InvalidInput("an action needs at least one generator")
        for g in generators:
            if g.domain != space or g.codomain != space:
                raise DomainMismatch(f"generator {g.label()} does not map {space.name} to itself")
        if inverses is not None:
            if len(inverses) != len(generators):
                raise InvalidInput("one inverse per generator is required")
            for g in inverses:
                if g.domain != space or g.codomain != space:
                    raise DomainMismatch(f"inverse {g.label()} does not map {space.name} to itself")
        self.space = space
        self.generators = list(generators)
        self.inverses = list(inverses) if inverses is not None else None
        self.name = name or f"action_{space.name}"
        self._maps: dict[Element, ProgressiveMap] = {}
        self._inv: dict[Element, ProgressiveMap] = {}

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def by_homeomorphisms(self) -> bool:
        return self.inverses is not None

    def shift_powers(self) -> list[int] | None:
        """Per-generator shift exponents when every generator is a shift power."""
        out = [g.shift_power() for g in self.generators]
        return None if any(p is None for p in out) else out

    def check_element(self, m) -> Element:
        m = tuple(m)
        if len(m) != self.rank or not lattice.is_monoid_element(m):
            raise InvalidInput(f"{m} is not an element of N_0^{self.rank}")
        return m

    def action_map(self, m) -> ProgressiveMap:
        """theta_m, composing generators coordinate by coordinate."""
        m = self.check_element(m)
        if m not in self._maps:
            if not any(m):
                f = identity_map(self.space)
            else:
                i = max(j for j in range(self.rank) if m[j])
                prev = list(m)
                prev[i] -= 1
                f = compose_maps(self.generators[i], self.action_map(prev))
            f.name = f"theta[{lattice.format_element(m)}]"
            self._maps[m] = f
        return self._maps[m]

    def inverse_map(self, n) -> ProgressiveMap:
        """The inverse of theta_n for an action by homeomorphisms."""
        if not self.by_homeomorphisms:
            raise NotHomeomorphisms(f"{self.name} has no tabulated inverses")
        n = self.check_element(n)
        if n not in self._inv:
            if not any(n):
                f = identity_map(self.space)
            else:
                i = max(j for j in range(self.rank) if n[j])
                prev = list(n)
                prev[i] -= 1
                f = compose_maps(self.inverse_map(prev), self.inverses[i])
            f.name = f"theta[{lattice.format_element(n)}]^-1"
            self._inv[n] = f
        return self._inv[n]

    def group_map(self, g) -> ProgressiveMap:
        return extend_to_group(self, g)

    def __call__(self, m, x: TruncatedPoint, depth: int | None = None) -> TruncatedPoint:
        return apply_map(self.action_map(m), x, depth)

    def __repr__(self):
        return f"MonoidAction({self.name!r}, rank={self.rank}, space={self.space.name!r})"


def action_map(act: MonoidAction, m) -> ProgressiveMap:
    return act.action_map(m)


def _word(sft: Sft, w: Word | None):
    return None if w is None else sft.format_word(w)


def verify_action_axioms(act: MonoidAction, depth: int) -> Report:
    """Unit law, pairwise commutation and the local homeomorphism property."""
    rep = Report("action", config={"depth": depth})
    sft = act.space
    c = maps_equal(act.action_map(lattice.zero(act.rank)), identity_map(sft), depth)
    rep.add("identity", from_certificate(c.status), _word(sft, c.witness), exact=c.exact)
    for i in range(act.rank):
        for j in range(i + 1, act.rank):
            gi, gj = act.generators[i], act.generators[j]
            c = maps_equal(compose_maps(gi, gj), compose_maps(gj, gi), depth)
            rep.add(f"commute[{i},{j}]", from_certificate(c.status), _word(sft, c.witness), exact=c.exact)
    for i, g in enumerate(act.generators):
        if not g.supports(depth + 2):
            rep.add(f"local_homeo[{i}]", UNDETERMINED, detail="generator not tabulated deep enough")
            continue
        lh = check_local_homeo(g, depth)
        if lh.partition is None:
            a, b = lh.injective_witness
            rep.add(f"injective[{i}]", REFUTED, [sft.format_word(a), sft.format_word(b)],
                    detail="distinct inputs with equal outputs")
        else:
            rep.add(f"injective[{i}]", from_certificate(VERIFIED), detail=f"partition depth {lh.partition_depth}")
        rep.add(f"surjective[{i}]", from_certificate(lh.surjective), _word(sft, lh.surjective_witness))
    if act.by_homeomorphisms:
        for i in range(act.rank):
            h = ProgressiveHomeo(act.generators[i], act.inverses[i])
            a, b = h.roundtrip(depth)
            st = from_certificate(a.status if not a.verified else b.status)
            rep.add(f"inverse[{i}]", st, _word(sft, a.witness or b.witness), exact=a.exact and b.exact)
    return rep


def one_sided_orbit(act: MonoidAction, x: TruncatedPoint, degree_bound: int, depth: int) -> list[TruncatedPoint]:
    """``{theta_m(x) : |m| <= degree_bound}``, deduplicated, in order of first appearance."""
    if not x.exact:
        raise Undetermined("orbits are computed for eventually periodic points")
    out: list[TruncatedPoint] = []
    for m in lattice.monoid_elements(act.rank, degree_bound):
        y = act(m, x, depth)
        if not y.exact:
            y = y.truncate(depth)
        if y not in out:
            out.append(y)
    return out


def _same(p: TruncatedPoint, q: TruncatedPoint, depth: int) -> bool:
    if p.exact and q.exact:
        return p == q
    return p.take(depth) == q.take(depth)


def orbit_related(act: MonoidAction, x: TruncatedPoint, y: TruncatedPoint, degree_bound: int,
                  depth: int) -> tuple[Element, Element] | None:
    """Least ``(m, n)`` with ``theta_m(x) = theta_n(y)``, or None if none within the bound.

    Pairs are tried by total degree, then by ``n``, then by ``m``.  A None
    answer only says that no pair of degree at most ``degree_bound`` works.
    """
    if not (x.exact and y.exact):
        raise Undetermined("orbit relation needs eventually periodic points")
    for m, n in lattice.ordered_pairs(act.rank, degree_bound):
        if _same(act(m, x, depth), act(n, y, depth), depth):
            return m, n
    return None


@dataclass
class FreenessCertificate:
    """Evidence about the equalizer of theta_m and theta_n.

    ``status`` is ``free_at_depth``, ``not_free`` or ``undetermined``.
    For a free pair ``witnesses`` maps each depth-``depth`` cylinder word to
    a point in it separating the two maps; for a non-free pair ``cylinder``
    is a word on which the maps agree.
    """

    m: Element
    n: Element
    status: str
    depth: int
    witnesses: dict[Word, TruncatedPoint] = field(default_factory=dict)
    cylinder: Word | None = None
    exact: bool = False

    @property
    def free(self) -> bool:
        return self.status == "free_at_depth"


def _separates(fm: ProgressiveMap, fn: ProgressiveMap, x: TruncatedPoint, depth: int) -> bool:
    a, b = fm.exact_image(x), fn.exact_image(x)
    if a is not None and b is not None:
        return a != b
    n = min(d for d in (depth + 4, fm.n_max or 10 ** 9, fn.n_max or 10 ** 9))
    return apply_map(fm, x, n).take(n) != apply_map(fn, x, n).take(n)


def equalizer_interior_empty(act: MonoidAction, m, n, depth: int, period_bound: int = 4) -> FreenessCertificate:
    """Decide whether ``{x : theta_m(x) = theta_n(x)}`` has empty interior, cylinder by cylinder.

    For actions by shift powers the answer is exact: the maps differ iff
    their exponents differ, and different exponents give an equalizer of
    eventually periodic points, which has empty interior because the space
    has no isolated points.  Otherwise every cylinder is searched for a
    separating eventually periodic point.
    """
    m, n = act.check_element(m), act.check_element(n)
    if m == n:
        raise InvalidInput("freeness is asked for distinct pairs")
    sft = act.space
    fm, fn = act.action_map(m), act.action_map(n)
    powers = act.shift_powers()
    if powers is not None:
        a = sum(c * k for c, k in zip(powers, m))
        b = sum(c * k for c, k in zip(powers, n))
        if a == b:
            return FreenessCertificate(m, n, "not_free", depth, cylinder=(), exact=True)
    witnesses = {}
    for w in admissible_words(sft, depth):
        found = None
        for x in periodic_points(sft, w, period_bound=period_bound, connector_bound=period_bound):
            if _separates(fm, fn, x, depth):
                found = x
                break
        if found is not None:
            witnesses[w] = found
            continue
        if powers is not None:
            # exact criterion says free; widen the search for a witness
            for x in periodic_points(sft, w, period_bound=2 * period_bound + sft.size,
                                     connector_bound=2 * period_bound + sft.size):
                if _separates(fm, fn, x, depth):
                    witnesses[w] = x
                    break
            else:
                return FreenessCertificate(m, n, "undetermined", depth, witnesses, exact=False)
            continue
        d = depth
        while not (fm.supports(d) and fn.supports(d)) and d > 1:
            d -= 1
        cert = maps_equal(fm, fn, d, within=w)
        if cert.verified and (cert.exact or fm.complete and fn.complete and d >= depth):
            return FreenessCertificate(m, n, "not_free", depth, witnesses, cylinder=w, exact=cert.exact)
        return FreenessCertificate(m, n, "undetermined", depth, witnesses, cylinder=w)
    return FreenessCertificate(m, n, "free_at_depth", depth, witnesses, exact=powers is not None)


def freeness_pairs(rank: int, degree_bound: int) -> list[tuple[Element, Element]]:
    """Unordered distinct pairs, as ``(m, n)`` with ``n`` before ``m`` in graded-lex order."""
    elems = lattice.monoid_elements(rank, degree_bound)
    return [(m, n) for i, m in enumerate(elems) for n in elems[:i]]


def essentially_free(act: MonoidAction, degree_bound: int, depth: int, period_bound: int = 4) -> Report:
    """Run :func:`equalizer_interior_empty` on every distinct pair up to ``degree_bound``."""
    rep = Report("freeness", config={"degree_bound": degree_bound, "depth": depth, "period_bound": period_bound})
    pairs = freeness_pairs(act.rank, degree_bound)
    certs = pmap(lambda p: equalizer_interior_empty(act, p[0], p[1], depth, period_bound), pairs)
    for cert in certs:
        name = f"free[{lattice.format_element(cert.m)}|{lattice.format_element(cert.n)}]"
        if cert.free:
            rep.add(name, from_certificate(VERIFIED), exact=cert.exact)
        elif cert.status == "not_free":
            rep.add(name, REFUTED, {"pair": [list(cert.m), list(cert.n)],
                                    "cylinder": act.space.format_word(cert.cylinder)}, exact=cert.exact)
        else:
            rep.add(name, UNDETERMINED)
    return rep


def failing_pair(rep: Report) -> tuple[Element, Element] | None:
    c = rep.first_failure()
    if c is None or not isinstance(c.witness, dict):
        return None
    m, n = c.witness["pair"]
    return tuple(m), tuple(n)


def extend_to_group(act: MonoidAction, g) -> ProgressiveMap:
    """The map of ``g`` in Z^k: ``theta_n^{-1} o theta_m`` with ``m = g v 0``, ``n = (-g) v 0``."""
    if not act.by_homeomorphisms:
        raise NotHomeomorphisms(f"{act.name} is not an action by homeomorphisms")
    g = tuple(g)
    if len(g) != act.rank:
        raise InvalidInput(f"{g} is not an element of Z^{act.rank}")
    m, n = lattice.lattice_decompose(g)
    f = compose_maps(act.inverse_map(n), act.action_map(m))
    f.name = f"theta~[{lattice.format_element(g)}]"
    return f


def check_factorization(act: MonoidAction, g, depth: int, extra=None):
    """Compare ``theta_n^{-1} theta_m`` for the reduced and a padded factorization of ``g``."""
    g = tuple(g)
    m, n = lattice.lattice_decompose(g)
    pad = tuple(extra) if extra is not None else lattice.unit(act.rank, 0)
    m2, n2 = lattice.add(m, pad), lattice.add(n, pad)
    other = compose_maps(act.inverse_map(n2), act.action_map(m2))
    return maps_equal(extend_to_group(act, g), other, depth)
