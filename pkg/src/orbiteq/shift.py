"""Shift spaces of finite type, their words, points and clopen sets.

Internally every SFT is a vertex shift: symbols are ``0..A-1`` and a
sequence is admissible when each consecutive pair is an allowed 2-block.
Forbidden words longer than two symbols are removed by passing to a higher
block presentation when the space is validated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Sequence

from orbiteq.errors import (
    BadSymbol,
    EmptyShift,
    InadmissibleWord,
    InvalidInput,
    IsolatedPoints,
    Undetermined,
)

Word = tuple[int, ...]

_RESERVED = set("|,. \t\n")


@dataclass(frozen=True)
class Sft:
    """A one-sided vertex shift.

    ``labels[i]`` is the user-facing name of internal symbol ``i``.  When the
    space came from a higher block recoding, ``blocks[i]`` is the block of
    original labels that symbol ``i`` stands for.
    """

    name: str
    labels: tuple[str, ...]
    allowed: frozenset[tuple[int, int]]
    blocks: tuple[tuple[str, ...], ...] | None = None
    succ: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    pred: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)]
        for a, b in sorted(self.allowed):
            succ[a].append(b)
            pred[b].append(a)
        object.__setattr__(self, "succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "pred", tuple(tuple(p) for p in pred))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def separator(self) -> str:
        return "" if all(len(lab) == 1 for lab in self.labels) else "."

    def is_admissible(self, w: Sequence[int]) -> bool:
        if any(not 0 <= s < self.size for s in w):
            return False
        return all((w[i], w[i + 1]) in self.allowed for i in range(len(w) - 1))

    def check_word(self, w: Sequence[int]) -> Word:
        w = tuple(w)
        if not self.is_admissible(w):
            raise InadmissibleWord(f"{self.format_word(w)!r} is not admissible in {self.name}")
        return w

    def parse_word(self, text) -> Word:
        """Parse a word given as a string or a list of labels."""
        if isinstance(text, (list, tuple)):
            parts = list(text)
        elif self.separator:
            parts = text.split(self.separator) if text else []
        else:
            parts = list(text)
        index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            w = tuple(index[p] for p in parts)
        except KeyError as exc:
            raise BadSymbol(f"unknown symbol {exc.args[0]!r} in {self.name}") from None
        return self.check_word(w)

    def format_word(self, w: Sequence[int]) -> str:
        return self.separator.join(self.labels[s] for s in w)

    def decode_word(self, w: Sequence[int]) -> str:
        """Spell ``w`` in the original alphabet (undoes higher block recoding)."""
        if self.blocks is None or not w:
            return self.format_word(w)
        syms = list(self.blocks[w[0]]) + [self.blocks[s][-1] for s in w[1:]]
        sep = "" if all(len(s) == 1 for s in syms) else "."
        return sep.join(syms)

    def out_degree(self, s: int) -> int:
        return len(self.succ[s])


def _prune(n: int, allowed: set[tuple[int, int]]) -> list[int]:
    """Symbols that lie on a bi-infinite path, i.e. the essential part."""
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        for s in sorted(alive):
            has_out = any((s, t) in allowed for t in alive)
            has_in = any((t, s) in allowed for t in alive)
            if not (has_out and has_in):
                alive.discard(s)
                changed = True
    return sorted(alive)


def _contains_forbidden(word: Sequence[str], forbidden: Iterable[tuple[str, ...]]) -> bool:
    w = tuple(word)
    for f in forbidden:
        k = len(f)
        for i in range(len(w) - k + 1):
            if w[i:i + k] == f:
                return True
    return False


def validate_sft(name: str, alphabet: Sequence[str], forbidden: Iterable = ()) -> Sft:
    """Build an :class:`Sft` from an alphabet and a finite list of forbidden words.

    Forbidden words may be strings (single-character labels) or sequences of
    labels.  Raises :class:`EmptyShift`, :class:`IsolatedPoints` or
    :class:`BadSymbol`.
    """
    alphabet = [str(a) for a in alphabet]
    if not alphabet:
        raise InvalidInput("alphabet must be nonempty")
    if len(set(alphabet)) != len(alphabet):
        raise InvalidInput("alphabet has repeated symbols")
    for a in alphabet:
        if not a or set(a) & _RESERVED:
            raise InvalidInput(f"bad symbol label {a!r}")
    known = set(alphabet)
    forb: list[tuple[str, ...]] = []
    for f in forbidden:
        if isinstance(f, str):
            if all(len(a) == 1 for a in alphabet):
                parts = tuple(f)
            else:
                parts = tuple(f.split(".")) if f else ()
        else:
            parts = tuple(str(x) for x in f)
        if not parts:
            raise EmptyShift("the empty word is forbidden")
        for p in parts:
            if p not in known:
                raise BadSymbol(f"forbidden word {f!r} uses unknown symbol {p!r}")
        forb.append(parts)

    span = max([len(f) for f in forb], default=1)
    block = max(span - 1, 1)
    if block == 1:
        vertices = [(a,) for a in alphabet if (a,) not in forb]
    else:
        vertices = [w for w in product(alphabet, repeat=block) if not _contains_forbidden(w, forb)]
    edges = set()
    for i, u in enumerate(vertices):
        for j, v in enumerate(vertices):
            if u[1:] == v[:-1] and not _contains_forbidden(u + v[-1:], forb):
                edges.add((i, j))
    keep = _prune(len(vertices), edges)
    if not keep:
        raise EmptyShift(f"{name}: the forbidden words exclude every point")
    renum = {old: new for new, old in enumerate(keep)}
    allowed = frozenset((renum[a], renum[b]) for a, b in edges if a in renum and b in renum)
    kept = [vertices[i] for i in keep]
    if block == 1:
        sft = Sft(name, tuple(v[0] for v in kept), allowed)
    else:
        sep = "" if all(len(a) == 1 for a in alphabet) else "-"
        sft = Sft(name, tuple(sep.join(v) for v in kept), allowed, blocks=tuple(kept))
    _check_no_isolated_points(sft)
    return sft


def from_allowed_blocks(name: str, labels: Sequence[str], allowed: Iterable[tuple[int, int]]) -> Sft:
    """Build a vertex shift directly from its allowed 2-blocks (indices into ``labels``)."""
    allowed = set(allowed)
    keep = _prune(len(labels), allowed)
    if not keep:
        raise EmptyShift(f"{name}: no bi-extendable symbol")
    renum = {old: new for new, old in enumerate(keep)}
    sft = Sft(
        name,
        tuple(labels[i] for i in keep),
        frozenset((renum[a], renum[b]) for a, b in allowed if a in renum and b in renum),
    )
    _check_no_isolated_points(sft)
    return sft


def _check_no_isolated_points(sft: Sft) -> None:
    branching = {s for s in range(sft.size) if sft.out_degree(s) >= 2}
    # vertices that can reach a branching vertex
    good = set(branching)
    frontier = list(branching)
    while frontier:
        s = frontier.pop()
        for p in sft.pred[s]:
            if p not in good:
                good.add(p)
                frontier.append(p)
    bad = [s for s in range(sft.size) if s not in good]
    if bad:
        raise IsolatedPoints(
            f"{sft.name}: from symbol {sft.labels[bad[0]]!r} the future is forced, "
            "so the space has isolated points"
        )


@lru_cache(maxsize=4096)
def extensions(sft: Sft, prefix: Word, length: int) -> tuple[Word, ...]:
    """All admissible words of ``length`` that start with ``prefix``, in lex order."""
    if length < len(prefix):
        raise ValueError("length shorter than prefix")
    if prefix and not sft.is_admissible(prefix):
        return ()
    if length == len(prefix):
        return (prefix,)
    if not prefix:
        starts: Iterable[Word] = ((s,) for s in range(sft.size))
        if length == 1:
            return tuple(starts)
        out = []
        for s in range(sft.size):
            out.extend(extensions(sft, (s,), length))
        return tuple(out)
    out = []
    for t in sft.succ[prefix[-1]]:
        out.extend(extensions(sft, prefix + (t,), length))
    return tuple(out)


def admissible_words(sft: Sft, depth: int) -> tuple[Word, ...]:
    """All admissible words of exactly ``depth`` symbols, lexicographically sorted."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return extensions(sft, (), depth)


def count_words(sft: Sft, depth: int) -> int:
    """Number of admissible words of a given length via the transfer matrix."""
    if depth == 0:
        return 1
    vec = [1] * sft.size
    for _ in range(depth - 1):
        vec = [sum(vec[t] for t in sft.succ[s]) for s in range(sft.size)]
    return sum(vec)


def _primitive_root(v: Word) -> Word:
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return v[:p]
    return v


@dataclass(frozen=True)
class TruncatedPoint:
    """A point of a shift space, known exactly or only through a prefix.

    With a nonempty ``period`` the point is ``prefix . period . period ...``
    and is stored in canonical form (primitive period, shortest prefix), so
    two eventually periodic points are equal iff their fields are equal.
    With an empty period only ``prefix`` is known and queries beyond it raise
    :class:`Undetermined`.
    """

    prefix: Word
    period: Word = ()

    def __post_init__(self):
        prefix, period = tuple(self.prefix), tuple(self.period)
        if period:
            period = _primitive_root(period)
            while prefix and prefix[-1] == period[-1]:
                prefix = prefix[:-1]
                period = period[-1:] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def periodic(cls, prefix: Sequence[int], preperiod: Sequence[int] = (), period: Sequence[int] = ()):
        return cls(tuple(prefix) + tuple(preperiod), tuple(period))

    @property
    def exact(self) -> bool:
        return bool(self.period)

    @property
    def known_length(self) -> float:
        return float("inf") if self.period else len(self.prefix)

    def symbol(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        if not self.period:
            raise Undetermined(f"point known only to depth {len(self.prefix)}, asked for index {i}")
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def take(self, n: int) -> Word:
        if n <= len(self.prefix):
            return self.prefix[:n]
        if not self.period:
            raise Undetermined(f"point known only to depth {len(self.prefix)}, need {n}")
        extra = n - len(self.prefix)
        reps = extra // len(self.period) + 1
        return self.prefix + (self.period * reps)[:extra]

    def determined_to(self, n: int) -> bool:
        return bool(self.period) or n <= len(self.prefix)

    def shifted(self, k: int = 1) -> "TruncatedPoint":
        """The exact image under the k-th power of the shift."""
        if k <= len(self.prefix):
            return TruncatedPoint(self.prefix[k:], self.period)
        if not self.period:
            raise Undetermined("cannot shift a truncated point past its prefix")
        r = (k - len(self.prefix)) % len(self.period)
        return TruncatedPoint((), self.period[r:] + self.period[:r])

    def truncate(self, n: int) -> "TruncatedPoint":
        return TruncatedPoint(self.take(n))

    def is_admissible(self, sft: Sft) -> bool:
        if not self.period:
            return sft.is_admissible(self.prefix)
        body = self.prefix + self.period + self.period[:1]
        return sft.is_admissible(body)

    def horizon(self) -> int:
        """Length after which the point is a pure repetition of its period."""
        return len(self.prefix) + len(self.period)

    def format(self, sft: Sft) -> str:
        head = sft.format_word(self.prefix)
        if not self.period:
            return head + "..."
        return f"{head}({sft.format_word(self.period)})^inf"


def first_difference(p: TruncatedPoint, q: TruncatedPoint, depth: int | None = None) -> int | None:
    """Index of the first symbol where ``p`` and ``q`` differ.

    Exact points are compared completely; otherwise the comparison stops at
    ``depth`` (or at the shorter known prefix).  Returns None when no
    difference was found in the compared range; raises :class:`Undetermined`
    if the range cannot be compared.
    """
    if p.exact and q.exact:
        if p == q:
            return None
        la, lb = len(p.period), len(q.period)
        n = max(len(p.prefix), len(q.prefix)) + la * lb // gcd(la, lb)
        for i in range(n):
            if p.symbol(i) != q.symbol(i):
                return i
        return None  # pragma: no cover - canonical forms differ only if sequences do
    if depth is None:
        raise Undetermined("comparison of truncated points needs a depth")
    limit = min(depth, p.known_length, q.known_length)
    for i in range(int(limit)):
        if p.symbol(i) != q.symbol(i):
            return i
    if limit < depth:
        raise Undetermined(f"points known only to depth {int(limit)} < {depth}")
    return None


def points_equal(p: TruncatedPoint, q: TruncatedPoint, depth: int | None = None) -> bool:
    return first_difference(p, q, depth) is None


def periodic_points(
    sft: Sft, prefix: Word = (), period_bound: int = 4, connector_bound: int = 3, limit: int | None = None
) -> Iterator[TruncatedPoint]:
    """Eventually periodic points in the cylinder of ``prefix``.

    Points are ``prefix . c . v^inf`` with ``|c| <= connector_bound`` and
    ``|v| <= period_bound``; yielded in a deterministic order without repeats.
    """
    prefix = tuple(prefix)
    if prefix and not sft.is_admissible(prefix):
        return
    seen = set()
    count = 0
    for total in range(1, connector_bound + period_bound + 1):
        for clen in range(0, min(connector_bound, total - 1) + 1):
            vlen = total - clen
            if vlen > period_bound:
                continue
            for body in extensions(sft, prefix, len(prefix) + clen + vlen):
                v = body[len(body) - vlen:]
                if (v[-1], v[0]) not in sft.allowed:
                    continue
                pt = TruncatedPoint(body[: len(body) - vlen], v)
                if pt in seen:
                    continue
                seen.add(pt)
                yield pt
                count += 1
                if limit is not None and count >= limit:
                    return


def some_point(sft: Sft, prefix: Word = ()) -> TruncatedPoint:
    for pt in periodic_points(sft, prefix, period_bound=sft.size + 1, connector_bound=sft.size + 1):
        return pt
    raise InadmissibleWord(f"no point starts with {sft.format_word(prefix)!r}")


def _coarsen(sft: Sft, depth: int, words: frozenset[Word]) -> tuple[int, frozenset[Word]]:
    while depth > 0:
        parents = {w[:-1] for w in words}
        ok = all(
            all(e in words for e in extensions(sft, p, depth)) for p in parents
        )
        if not ok:
            break
        words = frozenset(parents)
        depth -= 1
    return depth, words


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of cylinders, stored at the least depth that describes it.

    Build instances with :meth:`from_words`; the stored form is canonical, so
    ``==`` is set equality.
    """

    sft: Sft
    depth: int
    words: frozenset[Word]

    @classmethod
    def from_words(cls, sft: Sft, words: Iterable[Sequence[int]]) -> "ClopenSet":
        ws = [tuple(w) for w in words]
        for w in ws:
            sft.check_word(w)
        if not ws:
            return cls(sft, 0, frozenset())
        d = max(len(w) for w in ws)
        refined = frozenset(e for w in ws for e in extensions(sft, w, d))
        depth, canon = _coarsen(sft, d, refined)
        return cls(sft, depth, canon)

    @classmethod
    def cylinder(cls, sft: Sft, word: Sequence[int]) -> "ClopenSet":
        return cls.from_words(sft, [tuple(word)])

    @classmethod
    def whole(cls, sft: Sft) -> "ClopenSet":
        return cls(sft, 0, frozenset({()}))

    @classmethod
    def empty(cls, sft: Sft) -> "ClopenSet":
        return cls(sft, 0, frozenset())

    def is_empty(self) -> bool:
        return not self.words

    def at_depth(self, d: int) -> frozenset[Word]:
        """The cylinder words describing this set at depth ``d >= self.depth``."""
        if d < self.depth:
            raise ValueError(f"set needs depth {self.depth}, asked for {d}")
        return frozenset(e for w in self.words for e in extensions(self.sft, w, d))

    def cylinders(self) -> list[Word]:
        return sorted(self.words)

    def _common(self, other: "ClopenSet") -> tuple[int, frozenset[Word], frozenset[Word]]:
        if other.sft != self.sft:
            raise InvalidInput("clopen sets live in different spaces")
        d = max(self.depth, other.depth)
        return d, self.at_depth(d), other.at_depth(d)

    def union(self, other: "ClopenSet") -> "ClopenSet":
        d, a, b = self._common(other)
        return ClopenSet.from_words(self.sft, a | b) if (a | b) else ClopenSet.empty(self.sft)

    def intersection(self, other: "ClopenSet") -> "ClopenSet":
        d, a, b = self._common(other)
        return ClopenSet.from_words(self.sft, a & b) if (a & b) else ClopenSet.empty(self.sft)

    def difference(self, other: "ClopenSet") -> "ClopenSet":
        d, a, b = self._common(other)
        return ClopenSet.from_words(self.sft, a - b) if (a - b) else ClopenSet.empty(self.sft)

    def complement(self) -> "ClopenSet":
        return ClopenSet.whole(self.sft).difference(self)

    def issubset(self, other: "ClopenSet") -> bool:
        d, a, b = self._common(other)
        return a <= b

    def contains_word(self, w: Sequence[int]) -> bool:
        """True if the whole cylinder of ``w`` lies in the set."""
        w = tuple(w)
        if len(w) >= self.depth:
            return w[: self.depth] in self.words
        return all(e in self.words for e in extensions(self.sft, w, self.depth))

    def __contains__(self, x: TruncatedPoint) -> bool:
        return x.take(self.depth) in self.words

    def format(self) -> list[str]:
        return [self.sft.format_word(w) for w in self.cylinders()]
