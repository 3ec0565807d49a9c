"""Progressive maps between shift spaces.

A progressive map ``f: X -> Y`` comes with a modulus ``n -> m(n)``: the
first ``m(n)`` symbols of ``x`` determine the first ``n`` symbols of
``f(x)``.  Four concrete kinds are provided:

* :class:`TableMap` - explicit finite tables up to a largest output depth;
* :class:`SlidingBlockMap` - a shift-commuting block code with a window;
* :class:`TransducerMap` - a finite-state letter-to-letter transducer
  (odometers and other non-shift-commuting homeomorphisms);
* :class:`ComposedMap` - a lazy composite of two maps.

Sliding block codes and transducers are determined by finite data, so they
evaluate eventually periodic points exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from orbiteq.errors import (
    BadMap,
    DepthUnsupported,
    DomainMismatch,
    InvalidInput,
    Undetermined,
)
from orbiteq.shift import (
    ClopenSet,
    Sft,
    TruncatedPoint,
    Word,
    admissible_words,
    extensions,
)

VERIFIED = "verified_at_depth"
REFUTED = "refuted"
UNDETERMINED = "undetermined"


class ProgressiveMap:
    """Base class.  Subclasses implement :meth:`modulus` and :meth:`image`."""

    kind = "abstract"
    complete = False

    def __init__(self, domain: Sft, codomain: Sft, name: str = ""):
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self._outputs: dict[int, dict[Word, Word]] = {}

    n_max: int | None = None

    def modulus(self, n: int) -> int:
        raise NotImplementedError

    def image(self, w: Sequence[int], n: int) -> Word:
        """First ``n`` output symbols for any input starting with ``w``."""
        raise NotImplementedError

    def exact_image(self, x: TruncatedPoint) -> TruncatedPoint | None:
        """Exact image of an eventually periodic point, or None if unavailable."""
        return None

    def supports(self, n: int) -> bool:
        return self.n_max is None or n <= self.n_max

    def shift_power(self) -> int | None:
        """``k`` if this map is the k-th power of the shift on its domain."""
        return None

    def outputs(self, n: int) -> dict[Word, Word]:
        """Table of all outputs of length ``n`` keyed by input words of length ``m(n)``."""
        if n not in self._outputs:
            if not self.supports(n):
                raise DepthUnsupported(f"{self.label()} is tabulated only to depth {self.n_max}")
            m = self.modulus(n)
            self._outputs[n] = {w: self.image(w, n) for w in admissible_words(self.domain, m)}
        return self._outputs[n]

    def label(self) -> str:
        return self.name or f"<{self.kind} {self.domain.name}->{self.codomain.name}>"

    def __repr__(self):
        return f"{type(self).__name__}({self.label()!r})"


def _check_input(f: ProgressiveMap, w: Sequence[int], n: int) -> Word:
    w = tuple(w)
    need = f.modulus(n)
    if len(w) < need:
        raise Undetermined(f"{f.label()}: {need} input symbols needed for output depth {n}, have {len(w)}")
    return w


class TableMap(ProgressiveMap):
    """A map given by explicit tables ``{n: {input word: output word}}``.

    ``modulus`` maps each tabulated output depth to its input depth.  Depths
    between tabulated ones are served by truncating the next tabulated one.
    """

    kind = "table"

    def __init__(self, domain, codomain, modulus: Mapping[int, int], tables: Mapping[int, Mapping[Word, Word]],
                 name: str = "", check: bool = True):
        super().__init__(domain, codomain, name)
        self._mod = dict(sorted((int(n), int(m)) for n, m in modulus.items()))
        self.tables = {int(n): {tuple(k): tuple(v) for k, v in t.items()} for n, t in tables.items()}
        if set(self._mod) != set(self.tables):
            raise BadMap(f"{self.label()}: modulus and tables list different depths")
        if not self.tables:
            raise BadMap(f"{self.label()}: no tables")
        self.depths = sorted(self.tables)
        self.n_max = self.depths[-1]
        if check:
            self._validate()

    def _validate(self):
        prev_n, prev_m = 0, 0
        for n in self.depths:
            m = self._mod[n]
            if m < prev_m or n <= prev_n and prev_n:
                raise BadMap(f"{self.label()}: modulus is not monotone at depth {n}")
            table = self.tables[n]
            words = admissible_words(self.domain, m)
            missing = [w for w in words if w not in table]
            if missing:
                raise BadMap(f"{self.label()}: no entry for {self.domain.format_word(missing[0])!r} at depth {n}")
            extra = [w for w in table if not (len(w) == m and self.domain.is_admissible(w))]
            if extra:
                raise BadMap(f"{self.label()}: entry {extra[0]!r} is not an admissible input of length {m}")
            for w, out in table.items():
                if len(out) != n or not self.codomain.is_admissible(out):
                    raise BadMap(f"{self.label()}: output for {self.domain.format_word(w)!r} is not an admissible word of length {n}")
                if prev_n and table[w][:prev_n] != self.tables[prev_n][w[:prev_m]]:
                    raise BadMap(
                        f"{self.label()}: outputs at depth {prev_n} and {n} disagree on "
                        f"{self.domain.format_word(w)!r}"
                    )
            prev_n, prev_m = n, m

    def _cover(self, n: int) -> int:
        for d in self.depths:
            if d >= n:
                return d
        raise DepthUnsupported(f"{self.label()} is tabulated only to depth {self.n_max}")

    def modulus(self, n: int) -> int:
        if n == 0:
            return 0
        return self._mod[self._cover(n)]

    def image(self, w, n):
        if n == 0:
            return ()
        w = _check_input(self, w, n)
        d = self._cover(n)
        return self.tables[d][w[: self._mod[d]]][:n]


class SlidingBlockMap(ProgressiveMap):
    """A shift-commuting block code ``f(x)_i = rule(x_i ... x_{i+w-1})``.

    The window is reduced on construction: trailing window positions the
    rule does not depend on are dropped.
    """

    kind = "sliding_block"
    complete = True

    def __init__(self, domain, codomain, window: int, rule: Mapping[Word, int], name: str = "",
                 check: bool = True):
        super().__init__(domain, codomain, name)
        if window < 1:
            raise BadMap("window must be at least 1")
        rule = {tuple(k): int(v) for k, v in rule.items()}
        if check:
            for w in admissible_words(domain, window):
                if w not in rule:
                    raise BadMap(f"{self.label()}: rule has no entry for {domain.format_word(w)!r}")
                if not 0 <= rule[w] < codomain.size:
                    raise BadMap(f"{self.label()}: rule value out of range")
            rule = {w: rule[w] for w in admissible_words(domain, window)}
        while window > 1:
            short: dict[Word, int] = {}
            ok = True
            for w, s in rule.items():
                if short.setdefault(w[:-1], s) != s:
                    ok = False
                    break
            if not ok:
                break
            rule, window = short, window - 1
        self.window = window
        self.rule = rule
        if check:
            for w in admissible_words(domain, window + 1):
                if (rule[w[:-1]], rule[w[1:]]) not in codomain.allowed:
                    raise BadMap(
                        f"{self.label()}: output of {domain.format_word(w)!r} is not admissible in {codomain.name}"
                    )

    def modulus(self, n):
        return n + self.window - 1 if n > 0 else 0

    def image(self, w, n):
        if n == 0:
            return ()
        w = _check_input(self, w, n)
        r, k = self.rule, self.window
        return tuple(r[w[i:i + k]] for i in range(n))

    def exact_image(self, x):
        if not x.exact:
            return None
        u, v = len(x.prefix), len(x.period)
        out = self.image(x.take(u + v + self.window - 1), u + v)
        return TruncatedPoint(out[:u], out[u:])

    def shift_power(self):
        if self.domain != self.codomain:
            return None
        if all(s == w[-1] for w, s in self.rule.items()):
            return self.window - 1
        return None


class TransducerMap(ProgressiveMap):
    """A letter-to-letter finite-state transducer.

    ``delta[(state, symbol)] = (next_state, output_symbol)``.  Only the
    states reachable from ``start`` are kept.
    """

    kind = "transducer"
    complete = True

    def __init__(self, domain, codomain, start, delta: Mapping, name: str = "", check: bool = True):
        super().__init__(domain, codomain, name)
        delta = {(q, int(s)): (q2, int(o)) for (q, s), (q2, o) in delta.items()}
        states = {start}
        todo = [start]
        while todo:
            q = todo.pop()
            for s in range(domain.size):
                if (q, s) in delta:
                    q2 = delta[(q, s)][0]
                    if q2 not in states:
                        states.add(q2)
                        todo.append(q2)
        self.start = start
        self.states = states
        self.delta = {k: v for k, v in delta.items() if k[0] in states}
        if check:
            self._validate()

    def _validate(self):
        # walk (state, last input, last output) along admissible inputs
        cod = self.codomain
        seen = set()
        todo = []
        for s in range(self.domain.size):
            if (self.start, s) not in self.delta:
                raise BadMap(f"{self.label()}: no transition from the start state on {self.domain.labels[s]!r}")
            q2, o = self.delta[(self.start, s)]
            if not 0 <= o < cod.size:
                raise BadMap(f"{self.label()}: output symbol out of range")
            c = (q2, s, o)
            if c not in seen:
                seen.add(c)
                todo.append(c)
        while todo:
            q, last, out = todo.pop()
            for s in self.domain.succ[last]:
                if (q, s) not in self.delta:
                    raise BadMap(f"{self.label()}: no transition from state {q!r} on {self.domain.labels[s]!r}")
                q2, o = self.delta[(q, s)]
                if (out, o) not in cod.allowed:
                    raise BadMap(f"{self.label()}: produces a forbidden block in {cod.name}")
                c = (q2, s, o)
                if c not in seen:
                    seen.add(c)
                    todo.append(c)

    def modulus(self, n):
        return n

    def run(self, w: Sequence[int], state=None):
        q = self.start if state is None else state
        out = []
        for s in w:
            q, o = self.delta[(q, s)]
            out.append(o)
        return q, tuple(out)

    def image(self, w, n):
        w = _check_input(self, w, n)
        return self.run(w[:n])[1]

    def exact_image(self, x):
        if not x.exact:
            return None
        q, head = self.run(x.prefix)
        seen = {}
        blocks = []
        while q not in seen:
            seen[q] = len(blocks)
            q, out = self.run(x.period, q)
            blocks.append(out)
        c = seen[q]
        pre = head + tuple(s for b in blocks[:c] for s in b)
        per = tuple(s for b in blocks[c:] for s in b)
        return TruncatedPoint(pre, per)


class ComposedMap(ProgressiveMap):
    """``outer o inner`` evaluated lazily."""

    kind = "composed"

    def __init__(self, outer: ProgressiveMap, inner: ProgressiveMap, name: str = ""):
        if inner.codomain != outer.domain:
            raise DomainMismatch(
                f"cannot compose {outer.label()} after {inner.label()}: "
                f"{inner.codomain.name} is not {outer.domain.name}"
            )
        super().__init__(inner.domain, outer.codomain, name)
        self.outer, self.inner = outer, inner
        self.complete = outer.complete and inner.complete
        if outer.n_max is None and inner.n_max is None:
            self.n_max = None
        else:
            n = 0
            cap = outer.n_max if outer.n_max is not None else 10 ** 6
            while n < cap and inner.supports(outer.modulus(n + 1)):
                n += 1
            self.n_max = n

    def modulus(self, n):
        return self.inner.modulus(self.outer.modulus(n))

    def image(self, w, n):
        w = _check_input(self, w, n)
        k = self.outer.modulus(n)
        return self.outer.image(self.inner.image(w, k), n)

    def exact_image(self, x):
        y = self.inner.exact_image(x)
        return None if y is None else self.outer.exact_image(y)


def identity_map(sft: Sft, name: str = "") -> SlidingBlockMap:
    return SlidingBlockMap(sft, sft, 1, {(s,): s for s in range(sft.size)}, name=name or f"id_{sft.name}")


def shift_map(sft: Sft, power: int = 1, name: str = "") -> SlidingBlockMap:
    """The ``power``-th iterate of the shift on ``sft``."""
    rule = {w: w[-1] for w in admissible_words(sft, power + 1)}
    return SlidingBlockMap(sft, sft, power + 1, rule, name=name or f"sigma^{power}_{sft.name}")


def higher_block_presentation(sft: Sft, block: int = 2, name: str | None = None) -> Sft:
    """The ``block``-block presentation: symbols are admissible words of length ``block``."""
    words = admissible_words(sft, block)
    sep = sft.separator
    labels = tuple(sep.join(sft.labels[s] for s in w) for w in words)
    index = {w: i for i, w in enumerate(words)}
    allowed = frozenset(
        (index[w[:-1]], index[w[1:]]) for w in admissible_words(sft, block + 1)
    )
    return Sft(name or f"{sft.name}^[{block}]", labels, allowed)


def higher_block_code(sft: Sft, block: int = 2, target: Sft | None = None) -> tuple[SlidingBlockMap, SlidingBlockMap]:
    """The recoding ``x -> (x_i..x_{i+block-1})_i`` and its inverse (first letter)."""
    target = target or higher_block_presentation(sft, block)
    words = admissible_words(sft, block)
    sep = sft.separator
    index = {lab: i for i, lab in enumerate(target.labels)}
    code = {w: index[sep.join(sft.labels[s] for s in w)] for w in words}
    fwd = SlidingBlockMap(sft, target, block, code, name=f"recode_{sft.name}_{block}")
    inv = SlidingBlockMap(target, sft, 1, {(code[w],): w[0] for w in words}, name=f"decode_{sft.name}_{block}")
    return fwd, inv


def _compose_sliding(f: SlidingBlockMap, g: SlidingBlockMap, name: str) -> SlidingBlockMap:
    win = f.window + g.window - 1
    rule = {w: f.rule[g.image(w, f.window)] for w in admissible_words(g.domain, win)}
    return SlidingBlockMap(g.domain, f.codomain, win, rule, name=name, check=False)


def _compose_transducers(f: TransducerMap, g: TransducerMap, name: str) -> TransducerMap:
    delta = {}
    for (qg, s), (qg2, o) in g.delta.items():
        for qf in f.states:
            if (qf, o) in f.delta:
                qf2, o2 = f.delta[(qf, o)]
                delta[((qf, qg), s)] = ((qf2, qg2), o2)
    return TransducerMap(g.domain, f.codomain, (f.start, g.start), delta, name=name, check=False)


def compose_maps(f: ProgressiveMap, g: ProgressiveMap, name: str = "") -> ProgressiveMap:
    """The composite ``f o g`` (apply ``g`` first).

    Two sliding block codes compose to a sliding block code and two
    transducers to their product transducer; other combinations stay lazy.
    """
    if g.codomain != f.domain:
        raise DomainMismatch(
            f"cannot compose {f.label()} after {g.label()}: {g.codomain.name} is not {f.domain.name}"
        )
    name = name or f"{f.label()}*{g.label()}"
    if isinstance(f, SlidingBlockMap) and isinstance(g, SlidingBlockMap):
        return _compose_sliding(f, g, name)
    if isinstance(f, TransducerMap) and isinstance(g, TransducerMap):
        return _compose_transducers(f, g, name)
    return ComposedMap(f, g, name)


def compose_all(maps: Sequence[ProgressiveMap], domain: Sft, name: str = "") -> ProgressiveMap:
    """``maps[-1] o ... o maps[0]``; the identity of ``domain`` if empty."""
    out = identity_map(domain)
    for m in maps:
        out = compose_maps(m, out)
    if name:
        out.name = name
    return out


def apply_map(f: ProgressiveMap, x: TruncatedPoint, out_depth: int | None = None) -> TruncatedPoint:
    """Evaluate ``f`` on ``x``.

    For exactly known ``x`` and a sliding block or transducer map the exact
    eventually periodic image is returned.  Otherwise the result is the
    length-``out_depth`` truncation of ``f(x)``.
    """
    if out_depth is not None and not f.supports(out_depth):
        raise DepthUnsupported(f"{f.label()} is tabulated only to depth {f.n_max}")
    if x.exact:
        y = f.exact_image(x)
        if y is not None:
            return y
    if out_depth is None:
        raise Undetermined(f"{f.label()} cannot evaluate {x} exactly; give an output depth")
    return TruncatedPoint(f.image(x.take(f.modulus(out_depth)), out_depth))


@dataclass(frozen=True)
class EqualityCertificate:
    """Outcome of comparing two maps.

    ``status`` is ``verified_at_depth``, ``refuted`` or ``undetermined``;
    ``exact`` marks a verification that holds for the maps themselves, not
    just their truncations.
    """

    status: str
    depth: int
    witness: Word | None = None
    exact: bool = False
    detail: str = ""

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


def _transducers_agree(f: TransducerMap, g: TransducerMap, prefix: Word) -> bool:
    sft = f.domain
    qf, _ = f.run(prefix)
    qg, _ = g.run(prefix)
    start = (qf, qg, prefix[-1] if prefix else None)
    seen = {start}
    todo = [start]
    while todo:
        a, b, last = todo.pop()
        for s in (range(sft.size) if last is None else sft.succ[last]):
            a2, oa = f.delta[(a, s)]
            b2, ob = g.delta[(b, s)]
            if oa != ob:
                return False
            c = (a2, b2, s)
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return True


def maps_equal(f: ProgressiveMap, g: ProgressiveMap, depth: int, within: Sequence[int] = ()) -> EqualityCertificate:
    """Compare ``f`` and ``g`` on output depth ``depth``.

    Every admissible input word of length ``max(m_f(depth), m_g(depth))``
    (restricted to the cylinder of ``within`` when given) is evaluated by
    both maps.  The witness of a refutation is the lexicographically least
    such word on which the outputs differ.

    When both maps are sliding block codes compared on the whole space, or
    both are transducers, agreement is decided for the maps themselves and
    the certificate is marked exact.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise DomainMismatch(f"{f.label()} and {g.label()} have different domains or codomains")
    within = tuple(within)
    if not (f.supports(depth) and g.supports(depth)):
        return EqualityCertificate(UNDETERMINED, depth, detail="depth beyond tabulated range")
    length = max(f.modulus(depth), g.modulus(depth), len(within))
    for w in extensions(f.domain, within, length):
        if f.image(w, depth) != g.image(w, depth):
            return EqualityCertificate(REFUTED, depth, w)
    exact = False
    if isinstance(f, SlidingBlockMap) and isinstance(g, SlidingBlockMap):
        exact = depth >= 1 and not within
    elif isinstance(f, TransducerMap) and isinstance(g, TransducerMap):
        if f.domain.is_admissible(within):
            exact = _transducers_agree(f, g, within)
    return EqualityCertificate(VERIFIED, depth, None, exact)


@dataclass
class LocalHomeoReport:
    """Injectivity partition and surjectivity status of a map at a depth."""

    depth: int
    partition: list[Word] | None
    partition_depth: int | None
    injective_witness: tuple[Word, Word] | None
    surjective: str
    surjective_witness: Word | None = None
    surjective_depth: int | None = None

    @property
    def ok(self) -> bool:
        return self.partition is not None and self.surjective == VERIFIED

    @property
    def cylinders(self) -> list[Word]:
        return [] if self.partition is None else list(self.partition)


def _injective_on(f: ProgressiveMap, u: Word, depth: int, lag: int):
    keep = len(u) + depth
    n = keep + lag
    seen: dict[Word, Word] = {}
    for w in extensions(f.domain, u, max(f.modulus(n), keep)):
        out = f.image(w, n)
        head = w[:keep]
        prev = seen.setdefault(out, head)
        if prev != head:
            return False, (prev, head)
    return True, None


def check_local_homeo(f: ProgressiveMap, depth: int, lag: int = 2) -> LocalHomeoReport:
    """Local homeomorphism test at ``depth``.

    Injectivity on a cylinder ``[u]`` is tested as: inputs in ``[u]`` whose
    outputs agree to depth ``|u| + depth + lag`` agree on their first
    ``|u| + depth`` symbols.  The partition is the coarsest uniform cylinder
    depth ``L <= depth`` on which every cylinder passes.  Surjectivity is checked on every codomain word
    up to length ``depth``; the least missing word is the witness.
    """
    if not f.supports(depth + lag):
        raise DepthUnsupported(f"{f.label()} needs depth {depth + lag}, tabulated to {f.n_max}")
    partition = None
    part_depth = None
    bad = None
    for L in range(depth + 1):
        if not f.supports(L + depth + lag):
            break
        failure = None
        for u in admissible_words(f.domain, L):
            ok, pair = _injective_on(f, u, depth, lag)
            if not ok:
                failure = pair
                break
        if failure is None:
            part_depth = L
            partition = list(admissible_words(f.domain, L))
            break
        bad = failure
    surj, wit, sdepth = VERIFIED, None, None
    for d in range(1, depth + 1):
        image = set(f.outputs(d).values())
        missing = [w for w in admissible_words(f.codomain, d) if w not in image]
        if missing:
            surj, wit, sdepth = REFUTED, missing[0], d
            break
    return LocalHomeoReport(depth, partition, part_depth, None if partition else bad, surj, wit, sdepth)


def preimages(f: ProgressiveMap, target: TruncatedPoint, region: ClopenSet | None = None,
              search_depth: int | None = None, max_period: int = 8) -> list[TruncatedPoint]:
    """Exact eventually periodic preimages of ``target`` inside ``region``.

    Shift powers are inverted directly.  Other maps are inverted by growing
    the set of input words consistent with ``target`` and testing the
    eventually periodic continuations of each such word exactly.  The search
    is bounded, so an empty answer is not a proof that no preimage exists.
    """
    if not target.exact:
        raise Undetermined("preimages are computed for exactly known points only")
    sft = f.domain
    k = f.shift_power()
    if k is not None:
        out = []
        for c in admissible_words(sft, k):
            if k and (c[-1], target.symbol(0)) not in sft.allowed:
                continue
            pt = TruncatedPoint(c + target.prefix, target.period)
            if region is None or pt in region:
                out.append(pt)
        return sorted(out, key=lambda p: p.take(k + target.horizon()))
    if search_depth is None:
        search_depth = target.horizon() + 2 * len(target.period) + f.modulus(1) + 6
    starts = [()] if region is None else sorted(region.words)
    found: list[TruncatedPoint] = []
    for n in range(1, search_depth + 1):
        m = f.modulus(n)
        goal = target.take(n)
        consistent = [w for u in starts for w in extensions(sft, u, max(m, len(u))) if f.image(w, n) == goal]
        if not consistent:
            return []
        if n < target.horizon():
            continue
        for W in consistent:
            for i in range(len(W)):
                for p in range(1, min(max_period, len(W) - i) + 1):
                    cand = TruncatedPoint(W[:i], W[i:i + p])
                    if not cand.is_admissible(sft) or cand in found:
                        continue
                    if region is not None and cand not in region:
                        continue
                    y = f.exact_image(cand)
                    if y is not None and y == target:
                        found.append(cand)
        if found:
            return sorted(found, key=lambda p: (p.horizon(), p.prefix, p.period))
    return found


class ProgressiveHomeo:
    """A homeomorphism given as a forward map with a tabulated inverse."""

    def __init__(self, forward: ProgressiveMap, inverse: ProgressiveMap, name: str = ""):
        if forward.domain != inverse.codomain or forward.codomain != inverse.domain:
            raise DomainMismatch("forward and inverse maps do not match up")
        self.forward = forward
        self.inverse = inverse
        self.name = name or forward.name

    @property
    def domain(self) -> Sft:
        return self.forward.domain

    @property
    def codomain(self) -> Sft:
        return self.forward.codomain

    def inverted(self) -> "ProgressiveHomeo":
        return ProgressiveHomeo(self.inverse, self.forward, name=f"{self.name}^-1")

    def roundtrip(self, depth: int) -> tuple[EqualityCertificate, EqualityCertificate]:
        """Certificates for ``inverse o forward = id`` and ``forward o inverse = id``."""
        a = maps_equal(compose_maps(self.inverse, self.forward), identity_map(self.domain), depth)
        b = maps_equal(compose_maps(self.forward, self.inverse), identity_map(self.codomain), depth)
        return a, b

    def __call__(self, x: TruncatedPoint, depth: int | None = None) -> TruncatedPoint:
        return apply_map(self.forward, x, depth)


def tabulate(f: ProgressiveMap, depth: int, name: str = "") -> TableMap:
    """Freeze ``f`` into a :class:`TableMap` with output depths ``1..depth``."""
    mod = {n: f.modulus(n) for n in range(1, depth + 1)}
    tables = {n: f.outputs(n) for n in range(1, depth + 1)}
    return TableMap(f.domain, f.codomain, mod, tables, name=name or f.name, check=False)


def cylinder_image(f: ProgressiveMap, region: ClopenSet, depth: int) -> ClopenSet:
    """The words of length ``depth`` hit by ``f`` on ``region``, as a clopen set.

    For a map that is open on ``region`` this is the image at cylinder level.
    """
    m = max(f.modulus(depth), region.depth)
    words = {f.image(w, depth) for u in region.at_depth(region.depth) for w in extensions(region.sft, u, m)}
    return ClopenSet.from_words(f.codomain, words) if words else ClopenSet.empty(f.codomain)


def transducer_from_table(domain: Sft, codomain: Sft, start, table: Iterable, name: str = "") -> TransducerMap:
    """Build a transducer from rows ``(state, symbol, next_state, output)``."""
    delta = {(q, s): (q2, o) for q, s, q2, o in table}
    return TransducerMap(domain, codomain, start, delta, name=name)


def odometer(sft: Sft, inverse: bool = False, name: str = "") -> TransducerMap:
    """Adding one (or subtracting one) with carry on binary sequences, least digit first."""
    if sft.size != 2 or len(sft.allowed) != 4:
        raise InvalidInput("the odometer is defined on the full 2-shift")
    one, zero = sft.labels.index("1"), sft.labels.index("0")
    a, b = (one, zero) if inverse else (zero, one)
    delta = {
        ("carry", a): ("done", b),
        ("carry", b): ("carry", a),
        ("done", zero): ("done", zero),
        ("done", one): ("done", one),
    }
    return TransducerMap(sft, sft, "carry", delta, name=name or ("odometer^-1" if inverse else "odometer"))
