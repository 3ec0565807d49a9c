"""Monoid elements of N_0^k and group elements of Z^k.

Both are plain tuples of ints.  The monoid operation is componentwise
addition, the identity is the zero tuple and Z^k carries the componentwise
lattice order, so every ``g`` factors canonically as ``(g v 0) - ((-g) v 0)``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

Element = tuple[int, ...]


def zero(k: int) -> Element:
    return (0,) * k


def unit(k: int, i: int) -> Element:
    return tuple(1 if j == i else 0 for j in range(k))


def add(a: Sequence[int], b: Sequence[int]) -> Element:
    if len(a) != len(b):
        raise ValueError(f"rank mismatch: {tuple(a)} vs {tuple(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Element:
    if len(a) != len(b):
        raise ValueError(f"rank mismatch: {tuple(a)} vs {tuple(b)}")
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Sequence[int]) -> Element:
    return tuple(-x for x in a)


def join(a: Sequence[int], b: Sequence[int]) -> Element:
    return tuple(max(x, y) for x, y in zip(a, b))


def meet(a: Sequence[int], b: Sequence[int]) -> Element:
    return tuple(min(x, y) for x, y in zip(a, b))


def positive_part(g: Sequence[int]) -> Element:
    return tuple(max(x, 0) for x in g)


def negative_part(g: Sequence[int]) -> Element:
    return tuple(max(-x, 0) for x in g)


def degree(m: Sequence[int]) -> int:
    return sum(m)


def is_monoid_element(m: Sequence[int]) -> bool:
    return all(isinstance(x, int) and x >= 0 for x in m)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lattice_decompose(g: Sequence[int]) -> tuple[Element, Element]:
    """Split ``g`` into monoid elements ``(a1, b1)`` with ``g = a1 - b1``.

    ``a1 = g v 0`` and ``b1 = a1 - g``; the two parts have disjoint support.

    >>> lattice_decompose((2, -1))
    ((2, 0), (0, 1))
    """
    a1 = positive_part(g)
    return a1, sub(a1, g)


def monoid_elements(k: int, bound: int) -> list[Element]:
    """All ``m`` in N_0^k with ``|m| <= bound`` in graded-lex order."""
    out = []
    for d in range(bound + 1):
        out.extend(m for m in product(range(d + 1), repeat=k) if sum(m) == d)
    return out


def group_elements(k: int, bound: int) -> list[Element]:
    """All ``g`` in Z^k whose positive and negative parts have degree <= bound.

    These are exactly the differences ``m - n`` with ``|m|, |n| <= bound``
    when the canonical factorization is used.
    """
    out = [
        g
        for g in product(range(-bound, bound + 1), repeat=k)
        if degree(positive_part(g)) <= bound and degree(negative_part(g)) <= bound
    ]
    return sorted(out, key=lambda g: (sum(abs(x) for x in g), g))


def ordered_pairs(k: int, bound: int) -> Iterator[tuple[Element, Element]]:
    """Pairs ``(m, n)`` with ``|m|, |n| <= bound``, by total degree then ``(n, m)``."""
    elems = monoid_elements(k, bound)
    pairs = [(m, n) for m in elems for n in elems]
    pairs.sort(key=lambda p: (degree(p[0]) + degree(p[1]), p[1], p[0]))
    return iter(pairs)


def format_element(m: Sequence[int]) -> str:
    return ",".join(str(x) for x in m)


def parse_element(text, rank: int | None = None) -> Element:
    """Parse ``"1,0"``, ``3``, ``[1, 0]`` into a tuple."""
    if isinstance(text, int):
        out = (text,)
    elif isinstance(text, (list, tuple)):
        out = tuple(int(x) for x in text)
    else:
        text = str(text).strip()
        out = tuple(int(x) for x in text.split(",")) if text else ()
    if rank is not None and len(out) != rank:
        raise ValueError(f"expected rank {rank} element, got {out}")
    return out
