"""Locally constant maps from a shift space into a discrete group or monoid.

A :class:`CylinderTable` stores ``(key, word) -> value`` where ``word`` ranges
over depth-``D`` cylinders and ``key`` is a tuple of ints (a monoid element,
a concatenation of two elements, or the empty tuple for plain maps such as
``X -> N_0``).  A :class:`PairTable` stores values on pairs of cylinders.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from orbiteq.errors import InvalidInput, TableIncomplete
from orbiteq.shift import Sft, TruncatedPoint, Word, admissible_words, extensions

Key = tuple[int, ...]
Value = tuple[int, ...]


def _word_of(x, depth: int) -> Word:
    if isinstance(x, TruncatedPoint):
        return x.take(depth)
    x = tuple(x)
    if len(x) < depth:
        raise InvalidInput(f"word of length {len(x)} is shorter than table depth {depth}")
    return x[:depth]


class CylinderTable:
    """Values constant on the depth-``depth`` cylinders of ``sft``, one map per key."""

    def __init__(self, sft: Sft, depth: int, entries: Mapping[tuple[Key, Word], Value], name: str = ""):
        self.sft = sft
        self.depth = depth
        self.name = name
        self.entries: dict[tuple[Key, Word], Value] = {}
        for (k, w), v in entries.items():
            w = tuple(w)
            if len(w) != depth:
                raise InvalidInput(f"table {name!r}: word of length {len(w)} in a depth-{depth} table")
            self.entries[(tuple(k), w)] = tuple(v)

    @classmethod
    def from_mixed(cls, sft: Sft, entries: Mapping[tuple[Key, Word], Value], name: str = "") -> "CylinderTable":
        """Build from entries at mixed word lengths by refining everything to the largest length."""
        depth = max((len(w) for _, w in entries), default=0)
        out: dict[tuple[Key, Word], Value] = {}
        for (k, w), v in sorted(entries.items()):
            for e in extensions(sft, tuple(w), depth):
                prev = out.setdefault((tuple(k), e), tuple(v))
                if prev != tuple(v):
                    raise InvalidInput(f"table {name!r}: overlapping entries disagree on {sft.format_word(e)!r}")
        return cls(sft, depth, out, name)

    @classmethod
    def constant(cls, sft: Sft, keys: Iterable[Key], value_of, depth: int = 0, name: str = "") -> "CylinderTable":
        """``value_of(key)`` on every cylinder."""
        entries = {}
        for k in keys:
            v = tuple(value_of(tuple(k)))
            for w in admissible_words(sft, depth):
                entries[(tuple(k), w)] = v
        return cls(sft, depth, entries, name)

    def keys(self) -> list[Key]:
        return sorted({k for k, _ in self.entries})

    def get(self, key, x) -> Value:
        """Value at ``key`` on the cylinder containing ``x`` (a point or a long enough word)."""
        w = _word_of(x, self.depth)
        try:
            return self.entries[(tuple(key), w)]
        except KeyError:
            raise TableIncomplete(
                f"table {self.name!r} has no entry for key {tuple(key)} on {self.sft.format_word(w)!r}"
            ) from None

    def has(self, key, x) -> bool:
        return (tuple(key), _word_of(x, self.depth)) in self.entries

    def check_total(self, keys: Iterable[Key]) -> None:
        for k in keys:
            for w in admissible_words(self.sft, self.depth):
                if (tuple(k), w) not in self.entries:
                    raise TableIncomplete(
                        f"table {self.name!r} has no entry for key {tuple(k)} on {self.sft.format_word(w)!r}"
                    )

    def refine(self, depth: int) -> "CylinderTable":
        if depth < self.depth:
            raise ValueError("refine only to larger depth")
        out = {}
        for (k, w), v in self.entries.items():
            for e in extensions(self.sft, w, depth):
                out[(k, e)] = v
        return CylinderTable(self.sft, depth, out, self.name)

    def normalized(self) -> "CylinderTable":
        """Coarsen to the least depth on which the table is still constant and total."""
        t = self
        while t.depth > 0:
            parents: dict[tuple[Key, Word], Value] = {}
            ok = True
            for (k, w), v in t.entries.items():
                if parents.setdefault((k, w[:-1]), v) != v:
                    ok = False
                    break
            if not ok:
                break
            for (k, p) in parents:
                if any((k, e) not in t.entries for e in extensions(t.sft, p, t.depth)):
                    ok = False
                    break
            if not ok:
                break
            t = CylinderTable(t.sft, t.depth - 1, parents, t.name)
        return t

    def restrict(self, keys: Iterable[Key]) -> "CylinderTable":
        keys = {tuple(k) for k in keys}
        return CylinderTable(self.sft, self.depth, {kw: v for kw, v in self.entries.items() if kw[0] in keys},
                             self.name)

    def __eq__(self, other):
        if not isinstance(other, CylinderTable) or other.sft != self.sft:
            return NotImplemented
        d = max(self.depth, other.depth)
        return self.refine(d).entries == other.refine(d).entries

    def __repr__(self):
        return f"CylinderTable({self.name!r}, depth={self.depth}, entries={len(self.entries)})"


PairKey = tuple[Key, Key, Word, Word]


class PairTable:
    """Values on ``(m, n, wx, wy)``: two monoid elements and a pair of depth-``D`` words."""

    def __init__(self, sft: Sft, depth: int, entries: Mapping[PairKey, Value], name: str = ""):
        self.sft = sft
        self.depth = depth
        self.name = name
        self.entries: dict[PairKey, Value] = {}
        for (m, n, wx, wy), v in entries.items():
            wx, wy = tuple(wx), tuple(wy)
            if len(wx) != depth or len(wy) != depth:
                raise InvalidInput(f"table {name!r}: word pair not at depth {depth}")
            self.entries[(tuple(m), tuple(n), wx, wy)] = tuple(v)

    def get(self, m, n, x, y) -> Value:
        wx, wy = _word_of(x, self.depth), _word_of(y, self.depth)
        try:
            return self.entries[(tuple(m), tuple(n), wx, wy)]
        except KeyError:
            f = self.sft.format_word
            raise TableIncomplete(
                f"table {self.name!r} has no entry for ({tuple(m)}, {tuple(n)}, {f(wx)!r}, {f(wy)!r})"
            ) from None

    def has(self, m, n, x, y) -> bool:
        return (tuple(m), tuple(n), _word_of(x, self.depth), _word_of(y, self.depth)) in self.entries

    def pairs(self, m, n) -> list[tuple[Word, Word]]:
        m, n = tuple(m), tuple(n)
        return sorted((wx, wy) for (a, b, wx, wy) in self.entries if a == m and b == n)

    def degrees(self) -> list[tuple[Key, Key]]:
        return sorted({(m, n) for (m, n, _, _) in self.entries})

    def __eq__(self, other):
        if not isinstance(other, PairTable):
            return NotImplemented
        return self.sft == other.sft and self.depth == other.depth and self.entries == other.entries

    def __repr__(self):
        return f"PairTable({self.name!r}, depth={self.depth}, entries={len(self.entries)})"
