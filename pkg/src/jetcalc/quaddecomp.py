"""Rewrite the quadratic top-order part of a Lagrangian as 2x2 determinants.

The quadratic part ``sum A u^{a1}_{H1} u^{a2}_{H2}`` (``|H1| = |H2| = k``) is
partitioned by ``H = H1 + H2`` and by the pair ``(a1, a2)``.  When the symbol
condition holds the coefficients of each partition sum to zero, so after
choosing a pivot term ``u^{a1}_{K1} u^{a2}_{K2}`` the partition equals

    sum A (u^{a1}_{H1} u^{a2}_{H2} - u^{a1}_{K1} u^{a2}_{K2}),

and every difference is a 2x2 determinant ``| u^{a}_{I_r + J_s} |`` with
``I1 = min(H1, K1)`` and ``I2 = min(H2, K2)`` taken entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .diffpoly import DiffPoly, JetVariable
from .errors import NotDecomposableError, PreconditionError
from .multiindex import MultiIndex, format_index, length, position, subtract_checked


@dataclass(frozen=True)
class QuadDecomposition:
    """One determinant ``coefficient * | u^{a1}_{I1+J1}  u^{a1}_{I1+J2} ; u^{a2}_{I2+J1}  u^{a2}_{I2+J2} |``."""

    q: int
    I1: MultiIndex
    I2: MultiIndex
    J1: MultiIndex
    J2: MultiIndex
    alphas: tuple = (1, 1)
    coefficient: DiffPoly | None = None

    @property
    def H1(self) -> MultiIndex:
        return self.I1 + self.J1

    @property
    def H2(self) -> MultiIndex:
        return self.I2 + self.J2

    @property
    def K1(self) -> MultiIndex:
        return self.I1 + self.J2

    @property
    def K2(self) -> MultiIndex:
        return self.I2 + self.J1

    def determinant(self, n: int) -> DiffPoly:
        """The bare 2x2 determinant (without the coefficient)."""
        a1, a2 = self.alphas
        m = len(self.I1)

        def u(a, I):
            return DiffPoly.variable(JetVariable(a, I), m, n)

        return u(a1, self.H1) * u(a2, self.H2) - u(a1, self.K1) * u(a2, self.K2)

    def expand(self, n: int) -> DiffPoly:
        det = self.determinant(n)
        return det if self.coefficient is None else self.coefficient * det

    def as_det_rows(self):
        """``(rows, columns, sign)`` with columns in canonical order, for :func:`det_lagrangian`."""
        rows = [(self.alphas[0], self.I1), (self.alphas[1], self.I2)]
        if position(self.J1) < position(self.J2):
            return rows, [self.J1, self.J2], 1
        return rows, [self.J2, self.J1], -1


def decompose_pair(H1, H2, K1, K2, alphas=(1, 1), coefficient=None) -> QuadDecomposition:
    """Express ``u_{H1} u_{H2} - u_{K1} u_{K2}`` as a 2x2 determinant of the (Det) form."""
    H1, H2, K1, K2 = (MultiIndex(x) for x in (H1, H2, K1, K2))
    if len({len(x) for x in (H1, H2, K1, K2)}) != 1:
        raise PreconditionError("all four multi-indices need the same m")
    if len({length(x) for x in (H1, H2, K1, K2)}) != 1:
        raise PreconditionError("all four multi-indices need the same length k")
    if H1 + H2 != K1 + K2:
        raise PreconditionError(f"H1 + H2 != K1 + K2 ({format_index(H1 + H2)} vs {format_index(K1 + K2)})")
    I1 = MultiIndex(min(a, b) for a, b in zip(H1, K1))
    I2 = MultiIndex(min(a, b) for a, b in zip(H2, K2))
    J1 = subtract_checked(H1, I1)
    J2 = subtract_checked(H2, I2)
    q = length(J1)
    assert q == length(J2) and I1 + J2 == K1 and I2 + J1 == K2
    return QuadDecomposition(q, I1, I2, J1, J2, tuple(alphas), coefficient)


@dataclass(frozen=True)
class DetSum:
    """Determinants whose expansion reproduces ``quadratic_part`` exactly."""

    quadratic_part: DiffPoly
    k: int
    terms: tuple

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return [(t.coefficient, t) for t in self.terms]

    def expand(self) -> DiffPoly:
        out = DiffPoly.zero(*self.quadratic_part.signature)
        for t in self.terms:
            out = out + t.expand(self.quadratic_part.n)
        return out


def quadratic_part(L: DiffPoly, k: int | None = None) -> DiffPoly:
    """Terms of ``L`` of degree exactly two in the length-``k`` jet variables."""
    if k is None:
        k = L.order()
    if k is None:
        return DiffPoly.zero(*L.signature)
    return L.split_by_order_degree(k).get(2, DiffPoly.zero(*L.signature))


def partitions(Q: DiffPoly, k: int) -> dict:
    """Group the quadratic part by ``(H, a1, a2)``.

    Values map ``(H1, H2)`` to the polynomial coefficient ``A`` of
    ``u^{a1}_{H1} u^{a2}_{H2}``, where the two factors appear in canonical
    variable order (so ``a1 <= a2``, and ``H1`` precedes or equals ``H2``
    when ``a1 == a2``).
    """
    m, n = Q.signature
    groups: dict = {}
    for mono in Q.terms():
        top, rest = [], {}
        for v, e in mono.factors:
            if isinstance(v, JetVariable) and length(v.index) == k:
                top.extend([v] * e)
            else:
                rest[v] = e
        (v1, v2) = top
        coeff = DiffPoly.from_terms(m, n, [(mono.coefficient, rest)])
        H = v1.index + v2.index
        group = groups.setdefault((H, v1.alpha, v2.alpha), {})
        key = (v1.index, v2.index)
        group[key] = group.get(key, DiffPoly.zero(m, n)) + coeff
    return groups


def canonical_pivot(pairs: Sequence) -> tuple:
    """Smallest ``(K1, K2)`` by canonical enumeration position of ``K1`` then ``K2``."""
    return min(pairs, key=lambda p: (position(p[0]), position(p[1])))


def decompose_quadratic(L: DiffPoly, pivot: Callable[[Sequence], tuple] | None = None) -> DetSum:
    """Decompose the quadratic top-order part of ``L`` into hyperaffine 2x2 determinants.

    ``pivot`` picks the reference pair ``(K1, K2)`` from a partition's pairs;
    any choice gives a valid decomposition and the default is
    :func:`canonical_pivot`.  Raises :class:`NotDecomposableError` naming the
    first partition (in canonical ``H`` order) whose coefficients do not
    cancel.
    """
    k = L.order()
    if k is None or k < 1:
        raise PreconditionError("decomposition needs a Lagrangian of order k >= 1")
    pivot = pivot or canonical_pivot
    Q = quadratic_part(L, k)
    groups = partitions(Q, k)
    terms = []
    for (H, a1, a2) in sorted(groups, key=lambda g: (position(g[0]), g[1], g[2])):
        group = groups[(H, a1, a2)]
        total = DiffPoly.zero(*L.signature)
        for c in group.values():
            total = total + c
        if not total.is_zero:
            raise NotDecomposableError(
                f"symbol condition fails at H={format_index(H)} for dependent pair ({a1},{a2})",
                H=H,
                alphas=(a1, a2),
            )
        K1, K2 = pivot(sorted(group, key=lambda p: (position(p[0]), position(p[1]))))
        for (H1, H2), c in sorted(group.items(), key=lambda kv: (position(kv[0][0]), position(kv[0][1]))):
            if (H1, H2) == (K1, K2):
                continue
            terms.append(decompose_pair(H1, H2, K1, K2, (a1, a2), c))
    return DetSum(Q, k, tuple(terms))
