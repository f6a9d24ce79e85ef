"""Seeded random generators for polynomials, hyperforms and test corpora.

All functions take a :class:`random.Random` instance so corpora are
reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .diffpoly import BaseVariable, DiffPoly, JetVariable
from .hyperaffine import SpecialAffineHyperform, WedgeTerm
from .multiindex import MultiIndex, count, enumerate_indices


def random_rational(rng: random.Random, size: int = 5) -> Fraction:
    """Nonzero rational with numerator in ``[-size, size]`` and denominator in ``1..3``."""
    num = 0
    while num == 0:
        num = rng.randint(-size, size)
    return Fraction(num, rng.randint(1, 3))


def random_variable(rng: random.Random, m: int, n: int, max_order: int, *, base: bool = True):
    if base and rng.random() < 0.15:
        return BaseVariable(rng.randint(1, m))
    q = rng.randint(0, max_order)
    return JetVariable(rng.randint(1, n), rng.choice(enumerate_indices(m, q)))


def random_poly(
    rng: random.Random,
    m: int,
    n: int,
    max_order: int,
    *,
    terms: int = 3,
    max_degree: int = 2,
    base: bool = True,
    exact_order: bool = False,
) -> DiffPoly:
    """Random polynomial of order at most ``max_order`` (``max_order < 0``: constants only).

    With ``exact_order`` one term is forced to contain a jet variable of
    length ``max_order``.
    """
    out = DiffPoly.zero(m, n)
    for t in range(terms):
        factors: dict = {}
        if max_order >= 0:
            for _ in range(rng.randint(0, max_degree)):
                v = random_variable(rng, m, n, max_order, base=base)
                factors[v] = factors.get(v, 0) + 1
            if exact_order and t == 0:
                v = JetVariable(rng.randint(1, n), rng.choice(enumerate_indices(m, max_order)))
                factors[v] = factors.get(v, 0) + 1
        out = out + DiffPoly.from_terms(m, n, [(random_rational(rng), factors)])
    return out


def random_coefficient(rng: random.Random, m: int, n: int, k: int) -> DiffPoly:
    """Small coefficient of order at most ``k - 1``: a rational, or a rational times one variable."""
    c = random_rational(rng)
    if rng.random() < 0.5:
        return DiffPoly.constant(c, m, n)
    v = random_variable(rng, m, n, k - 1)
    return DiffPoly.variable(v, m, n).scale(c)


def random_hyperform(
    rng: random.Random, m: int, n: int, k: int, q: int, *, linear_terms: int = 2, affine_prob: float = 0.3
) -> SpecialAffineHyperform:
    lows = enumerate_indices(m, k - q)
    linear = {}
    for _ in range(rng.randint(1, linear_terms)):
        linear[(rng.randint(1, n), rng.choice(lows))] = random_coefficient(rng, m, n, k)
    affine = {}
    for J in enumerate_indices(m, q):
        if rng.random() < affine_prob:
            affine[J] = random_coefficient(rng, m, n, k)
    return SpecialAffineHyperform(m, n, k, q, linear, affine)


def random_wedge_term(rng: random.Random, m: int, n: int, k: int, q: int, **kwargs) -> WedgeTerm:
    return WedgeTerm(tuple(random_hyperform(rng, m, n, k, q, **kwargs) for _ in range(count(m, q))))


def random_signature(rng: random.Random, max_m: int = 2, max_n: int = 3, max_k: int = 3):
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_k)
    return m, n, k


def random_hyperaffine_terms(rng: random.Random, m: int, n: int, k: int, max_terms: int = 2) -> list:
    """One or more wedge terms with independently drawn ``q`` in ``1..k``."""
    return [random_wedge_term(rng, m, n, k, rng.randint(1, k)) for _ in range(rng.randint(1, max_terms))]


def random_cancelling_quadratic(rng: random.Random, m: int, n: int, k: int, *, groups: int = 3) -> DiffPoly:
    """Random quadratic form in order-``k`` variables whose partitions cancel.

    Each group picks ``H`` and a dependent pair, draws several ``(H1, H2)``
    with ``H1 + H2 = H``, and assigns polynomial coefficients of order
    ``< k`` that sum to zero.
    """
    tops = enumerate_indices(m, k)
    out = DiffPoly.zero(m, n)
    for _ in range(groups):
        a1, a2 = sorted((rng.randint(1, n), rng.randint(1, n)))
        H1 = rng.choice(tops)
        H2 = rng.choice(tops)
        H = H1 + H2
        pairs = [
            (J, MultiIndex(h - j for h, j in zip(H, J)))
            for J in tops
            if all(j <= h for j, h in zip(J, H)) and sum(H) - sum(J) == k
        ]
        if len(pairs) < 2:
            continue
        chosen = rng.sample(pairs, rng.randint(2, min(4, len(pairs))))
        coeffs = [random_coefficient(rng, m, n, k) for _ in chosen[:-1]]
        last = DiffPoly.zero(m, n)
        for c in coeffs:
            last = last - c
        coeffs.append(last)
        for (J, K), c in zip(chosen, coeffs):
            u1 = DiffPoly.variable(JetVariable(a1, J), m, n)
            u2 = DiffPoly.variable(JetVariable(a2, K), m, n)
            out = out + c * u1 * u2
    return out
