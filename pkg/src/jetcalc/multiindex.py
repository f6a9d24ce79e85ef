"""Multi-indices over ``m`` base variables.

A multi-index ``I`` records how many derivatives are taken in each base
direction.  Its length ``|I|`` is the total order and its weight is the
squared Euclidean norm of the entry vector.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable


from .errors import DimensionError, NotDivisibleError


class MultiIndex(tuple):
    """Immutable exponent vector ``(I(1), ..., I(m))``.

    Behaves like a tuple of non-negative integers; ``m`` is ``len(index)``.
    Ordering via ``<`` is plain tuple ordering; the canonical ordering used
    for enumeration and printing is given by :func:`sort_key`.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise DimensionError("a multi-index needs at least one entry (m >= 1)")
        if any(e < 0 for e in entries):
            raise ValueError(f"multi-index entries must be >= 0, got {entries}")
        return super().__new__(cls, entries)

    @classmethod
    def zero(cls, m: int) -> MultiIndex:
        return cls((0,) * m)

    @classmethod
    def unit(cls, m: int, i: int) -> MultiIndex:
        """The multi-index with a single 1 in (1-based) position ``i``."""
        if not 1 <= i <= m:
            raise DimensionError(f"direction {i} out of range 1..{m}")
        return cls(1 if j == i else 0 for j in range(1, m + 1))

    @property
    def m(self) -> int:
        return len(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return subtract_checked(self, other)

    def __repr__(self):
        return f"MultiIndex({list(self)})"

    def __str__(self):
        return format_index(self)


def _check_same_m(a: tuple, b: tuple) -> None:
    if len(a) != len(b):
        raise DimensionError(f"multi-indices over different m: {len(a)} vs {len(b)}")


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    _check_same_m(a, b)
    return MultiIndex(x + y for x, y in zip(a, b))


def subtract_checked(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    """Entrywise ``a - b``; raises :class:`NotDivisibleError` unless ``b <= a`` entrywise."""
    _check_same_m(a, b)
    if any(y > x for x, y in zip(a, b)):
        raise NotDivisibleError(f"{format_index(b)} does not divide {format_index(a)}")
    return MultiIndex(x - y for x, y in zip(a, b))


def length(a: tuple) -> int:
    return sum(a)


def weight(a: tuple) -> int:
    """Squared Euclidean norm of the entries."""
    return sum(e * e for e in a)


def is_pure(a: tuple) -> bool:
    """True iff exactly one entry is nonzero (so the zero multi-index is not pure)."""
    return sum(1 for e in a if e) == 1


def count(m: int, q: int) -> int:
    """Number of multi-indices of length ``q`` over ``m`` variables."""
    if m < 1:
        raise DimensionError("m must be >= 1")
    if q < 0:
        return 0
    return comb(m + q - 1, q)


@lru_cache(maxsize=None)
def _enumerate(m: int, q: int) -> tuple[MultiIndex, ...]:
    if m == 1:
        return (MultiIndex((q,)),)
    out = []
    for first in range(q, -1, -1):
        for rest in _enumerate(m - 1, q - first):
            out.append(MultiIndex((first,) + tuple(rest)))
    return tuple(out)


def enumerate_indices(m: int, q: int) -> list[MultiIndex]:
    """All multi-indices of length ``q`` over ``m`` variables.

    The order is descending lexicographic, so ``(q, 0, ..., 0)`` comes first
    and ``(0, ..., 0, q)`` last.
    """
    if m < 1:
        raise DimensionError("m must be >= 1")
    if q < 0:
        return []
    return list(_enumerate(m, q))


def position(a: MultiIndex) -> int:
    """Index of ``a`` within ``enumerate_indices(len(a), length(a))``."""
    return _positions(len(a), length(a))[a]


@lru_cache(maxsize=None)
def _positions(m: int, q: int) -> dict:
    return {idx: pos for pos, idx in enumerate(_enumerate(m, q))}


def sort_key(a: tuple) -> tuple:
    """Canonical total order across lengths: by length, then descending lex."""
    return (sum(a), tuple(-e for e in a))


def format_index(a: tuple) -> str:
    return "[" + ",".join(str(e) for e in a) + "]"


def parse_index(text: str) -> MultiIndex:
    """Inverse of :func:`format_index`, e.g. ``"[2,0]"``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"malformed multi-index {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError(f"empty multi-index {text!r}")
    try:
        return MultiIndex(int(part) for part in body.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed multi-index {text!r}: {exc}") from None
