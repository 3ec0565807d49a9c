"""Cylinder pairs meeting ``X_(m,n) = {(x, y) : theta_m(x) = theta_n(y)}``.

A pair of depth-``D`` words ``(wx, wy)`` is *fibered* for ``(m, n)`` when
some ``x`` in ``[wx]`` and ``y`` in ``[wy]`` satisfy
``theta_m(x) = theta_n(y)``.  Candidates come from intersecting the sets of
output prefixes of the two cylinders; an empty intersection is a proof that
the pair is not fibered.  Each remaining candidate needs an explicit related
pair of eventually periodic points, found by inverting both maps on a
common target point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from orbiteq import lattice
from orbiteq.action import MonoidAction, extend_to_group
from orbiteq.lattice import Element
from orbiteq.maps import apply_map, preimages
from orbiteq.shift import ClopenSet, TruncatedPoint, Word, admissible_words, extensions, periodic_points, some_point

Pair = tuple[Word, Word]


@dataclass
class FiberedPairSet:
    m: Element
    n: Element
    depth: int
    pairs: dict[Pair, list[tuple[TruncatedPoint, TruncatedPoint]]] = field(default_factory=dict)
    unresolved: list[Pair] = field(default_factory=list)

    def __contains__(self, pair) -> bool:
        return tuple(map(tuple, pair)) in self.pairs

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)


def _images(f, sft, words, depth, E):
    out = {}
    m = max(depth, f.modulus(E))
    for w in words:
        out[w] = frozenset(f.image(v, E) for v in extensions(sft, w, m))
    return out


def _homeo_pairs(act: MonoidAction, m, n, depth: int, samples: int) -> FiberedPairSet:
    h = extend_to_group(act, lattice.sub(m, n))
    sft = act.space
    fps = FiberedPairSet(m, n, depth)
    L = max(depth, h.modulus(depth))
    for wx in admissible_words(sft, depth):
        for v in extensions(sft, wx, L):
            wy = h.image(v, depth)
            bucket = fps.pairs.setdefault((wx, wy), [])
            if len(bucket) >= samples:
                continue
            x = some_point(sft, v)
            y = apply_map(h, x)
            if (x, y) not in bucket:
                bucket.append((x, y))
    return fps


def _search_pairs(act: MonoidAction, m, n, depth: int, period_bound: int, samples: int) -> FiberedPairSet:
    sft = act.space
    fm, fn = act.action_map(m), act.action_map(n)
    words = admissible_words(sft, depth)
    cyl = {w: ClopenSet.cylinder(sft, w) for w in words}
    levels = [depth, depth + 1, depth + 2]
    ox = {E: _images(fm, sft, words, depth, E) for E in levels}
    oy = {E: _images(fn, sft, words, depth, E) for E in levels}
    fps = FiberedPairSet(m, n, depth)

    @lru_cache(maxsize=None)
    def pre(which: int, t: TruncatedPoint, w: Word):
        f = fm if which == 0 else fn
        return tuple(preimages(f, t, cyl[w]))

    top = levels[-1]
    for wx in words:
        for wy in words:
            if any(not (ox[E][wx] & oy[E][wy]) for E in levels):
                continue
            found: list[tuple[TruncatedPoint, TruncatedPoint]] = []
            for z in sorted(ox[top][wx] & oy[top][wy]):
                for t in periodic_points(sft, z, period_bound=period_bound, connector_bound=period_bound, limit=8):
                    xs = pre(0, t, wx)
                    if not xs:
                        continue
                    ys = pre(1, t, wy)
                    if ys:
                        pair = (xs[0], ys[0])
                        if pair not in found:
                            found.append(pair)
                        break
                if len(found) >= samples:
                    break
            if found:
                fps.pairs[(wx, wy)] = found
            else:
                fps.unresolved.append((wx, wy))
    return fps


_cache: dict = {}


def fibered_pairs(act: MonoidAction, m, n, depth: int, period_bound: int = 4, samples: int = 2) -> FiberedPairSet:
    """The fibered cylinder pairs of ``(m, n)`` at ``depth``, each with related witness points."""
    m, n = act.check_element(m), act.check_element(n)
    key = (id(act), m, n, depth, period_bound, samples)
    hit = _cache.get(key)
    if hit is not None and hit[0] is act:
        return hit[1]
    if act.by_homeomorphisms:
        fps = _homeo_pairs(act, m, n, depth, samples)
    else:
        fps = _search_pairs(act, m, n, depth, period_bound, samples)
    _cache[key] = (act, fps)
    return fps


def related(act: MonoidAction, m, n, x: TruncatedPoint, y: TruncatedPoint) -> bool:
    return act(m, x) == act(n, y)
