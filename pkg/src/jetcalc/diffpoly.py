"""Exact sparse polynomials in jet coordinates ``(x^i, u^alpha_I)``.

:class:`DiffPoly` is the value type for Lagrangians, hyperform coefficients
and Euler--Lagrange components.  Coefficients are :class:`fractions.Fraction`;
floats are rejected because projectability is an exact cancellation property.

Internally each variable is stored as its canonical sort key

* base variable ``x^i``      -> ``(0, i)``
* jet variable ``u^alpha_I`` -> ``(1, alpha, |I|, (-I(1), ..., -I(m)))``

so that plain tuple comparison realises the canonical variable order: base
before jet, then by ``i`` or by ``(alpha, |I|, descending lex on I)``.  A
monomial is a sorted tuple of ``(key, exponent)`` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import DimensionError, IncompleteAssignmentError, PreconditionError
from .multiindex import MultiIndex, format_index


class BaseVariable(NamedTuple):
    """The base coordinate ``x^i`` (1-based)."""

    i: int


class JetVariable(NamedTuple):
    """The derivative coordinate ``u^alpha_I`` (``alpha`` is 1-based)."""

    alpha: int
    index: MultiIndex


Variable = Union[BaseVariable, JetVariable]
Coefficient = Union[int, Fraction]


class Monomial(NamedTuple):
    coefficient: Fraction
    factors: tuple  # ((Variable, exponent), ...) in canonical variable order


def _var_key(v) -> tuple:
    if isinstance(v, JetVariable):
        idx = v.index
        return (1, v.alpha, sum(idx), tuple(-e for e in idx))
    if isinstance(v, BaseVariable):
        return (0, v.i)
    raise TypeError(f"not a variable: {v!r}")


def _key_var(key: tuple) -> Variable:
    if key[0] == 0:
        return BaseVariable(key[1])
    return JetVariable(key[1], MultiIndex(-e for e in key[3]))


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


def _term_sort_key(item) -> tuple:
    mono = item[0]
    return (sum(e for _, e in mono), tuple((k, -e) for k, e in mono))


@dataclass(frozen=True)
class VariableNames:
    """Printable names for dependent and base variables."""

    dependent: tuple
    base: tuple

    @classmethod
    def default(cls, m: int, n: int) -> VariableNames:
        dep = ("u", "v", "w")[:n] if n <= 3 else tuple(f"u{a}" for a in range(1, n + 1))
        return cls(tuple(dep), tuple(f"x{i}" for i in range(1, m + 1)))

    def name_of(self, v: Variable) -> str:
        if isinstance(v, JetVariable):
            return self.dependent[v.alpha - 1] + format_index(v.index)
        return self.base[v.i - 1]


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class DiffPoly:
    """Canonical sparse polynomial with rational coefficients over signature ``(m, n)``.

    ``m`` is the number of base variables and ``n`` the number of dependent
    variables.  Values are immutable; arithmetic returns new objects and
    mixing signatures raises :class:`~jetcalc.errors.DimensionError`.
    Plain ints and Fractions combine with a DiffPoly as constants.
    """

    __slots__ = ("_m", "_n", "_terms", "_hash")

    def __init__(self, m: int, n: int, terms: Mapping | None = None):
        if m < 1 or n < 1:
            raise DimensionError(f"signature must have m, n >= 1, got ({m}, {n})")
        self._m = m
        self._n = n
        self._terms = {k: v for k, v in (terms or {}).items() if v != 0}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, m: int, n: int) -> DiffPoly:
        return cls(m, n)

    @classmethod
    def constant(cls, c: Coefficient, m: int, n: int) -> DiffPoly:
        return cls(m, n, {(): _coerce(c)})

    @classmethod
    def variable(cls, v: Variable, m: int, n: int) -> DiffPoly:
        _check_variable(v, m, n)
        return cls(m, n, {((_var_key(v), 1),): Fraction(1)})

    @classmethod
    def jet(cls, alpha: int, index: Iterable[int], n: int) -> DiffPoly:
        """``u^alpha_I``; ``m`` is taken from the length of ``index``."""
        index = MultiIndex(index)
        return cls.variable(JetVariable(alpha, index), len(index), n)

    @classmethod
    def base(cls, i: int, m: int, n: int) -> DiffPoly:
        return cls.variable(BaseVariable(i), m, n)

    @classmethod
    def from_terms(cls, m: int, n: int, terms: Iterable) -> DiffPoly:
        """Build from ``(coefficient, {variable: exponent})`` pairs, collecting like terms."""
        acc: dict = {}
        for c, factors in terms:
            c = _coerce(c)
            items = factors.items() if isinstance(factors, Mapping) else factors
            mono: dict = {}
            for v, e in items:
                _check_variable(v, m, n)
                if e < 0:
                    raise ValueError("exponents must be non-negative")
                if e:
                    k = _var_key(v)
                    mono[k] = mono.get(k, 0) + e
            key = tuple(sorted(mono.items()))
            acc[key] = acc.get(key, 0) + c
        return cls(m, n, acc)

    def _new(self, terms: dict) -> DiffPoly:
        out = DiffPoly.__new__(DiffPoly)
        out._m, out._n, out._hash = self._m, self._n, None
        out._terms = {k: v for k, v in terms.items() if v != 0}
        return out

    # -- inspection -------------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def signature(self) -> tuple[int, int]:
        return (self._m, self._n)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def terms(self) -> list[Monomial]:
        """Monomials in canonical (graded, then lexicographic) order."""
        return [
            Monomial(c, tuple((_key_var(k), e) for k, e in mono))
            for mono, c in sorted(self._terms.items(), key=_term_sort_key)
        ]

    def variables(self) -> set:
        return {_key_var(k) for mono in self._terms for k, _ in mono}

    def jet_variables(self) -> set:
        return {v for v in self.variables() if isinstance(v, JetVariable)}

    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    def constant_value(self) -> Fraction:
        """Constant term (the value when every variable is zero)."""
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self._terms), default=0)

    def coefficient(self, factors: Mapping) -> Fraction:
        key = tuple(sorted((_var_key(v), e) for v, e in factors.items() if e))
        return self._terms.get(key, Fraction(0))

    def order(self) -> int | None:
        """Highest derivative length among the jet variables present, or None."""
        best = None
        for mono in self._terms:
            for k, _ in mono:
                if k[0] == 1 and (best is None or k[2] > best):
                    best = k[2]
        return best

    def degree_in_order(self, k: int) -> int:
        """Polynomial degree in the jet variables of length exactly ``k``."""
        return max(
            (sum(e for key, e in mono if key[0] == 1 and key[2] == k) for mono in self._terms),
            default=0,
        )

    def top_degree(self, k: int) -> int:
        """Degree in the length-``k`` jet variables; requires ``order() <= k``."""
        o = self.order()
        if o is not None and o > k:
            raise PreconditionError(f"polynomial has order {o} > {k}")
        return self.degree_in_order(k)

    def split_by_order_degree(self, k: int) -> dict[int, DiffPoly]:
        """Homogeneous components by degree in the length-``k`` jet variables."""
        parts: dict[int, dict] = {}
        for mono, c in self._terms.items():
            d = sum(e for key, e in mono if key[0] == 1 and key[2] == k)
            parts.setdefault(d, {})[mono] = c
        return {d: self._new(t) for d, t in sorted(parts.items())}

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other) -> DiffPoly:
        if isinstance(other, DiffPoly):
            if other.signature != self.signature:
                raise DimensionError(
                    f"signature mismatch: {self.signature} vs {other.signature}"
                )
            return other
        return DiffPoly.constant(_coerce(other), self._m, self._n)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coefficient) -> DiffPoly:
        c = _coerce(c)
        if c == 0:
            return self._new({})
        return self._new({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DiffPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._lift(other)
        terms: dict = {}
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                k = _mono_mul(ka, kb)
                terms[k] = terms.get(k, 0) + ca * cb
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = DiffPoly.constant(1, self._m, self._n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- calculus ---------------------------------------------------------

    def partial(self, v: Variable) -> DiffPoly:
        """Formal partial derivative, all other coordinates held independent."""
        key = _var_key(v)
        terms: dict = {}
        for mono, c in self._terms.items():
            for pos, (k, e) in enumerate(mono):
                if k == key:
                    if e == 1:
                        new = mono[:pos] + mono[pos + 1:]
                    else:
                        new = mono[:pos] + ((k, e - 1),) + mono[pos + 1:]
                    terms[new] = terms.get(new, 0) + c * e
                    break
        return self._new(terms)

    def evaluate(self, assignment: Mapping) -> Fraction:
        """Exact value under ``assignment`` (variable -> rational)."""
        values = {_var_key(v): _coerce(x) for v, x in assignment.items()}
        total = Fraction(0)
        for mono, c in self._terms.items():
            term = c
            for k, e in mono:
                try:
                    term *= values[k] ** e
                except KeyError:
                    raise IncompleteAssignmentError(
                        f"no value for {_key_var(k)}"
                    ) from None
            total += term
        return total

    def substitute_constants(self, assignment: Mapping) -> DiffPoly:
        """Replace the variables in ``assignment`` by rationals; others stay symbolic."""
        values = {_var_key(v): _coerce(x) for v, x in assignment.items()}
        terms: dict = {}
        for mono, c in self._terms.items():
            rest = []
            for k, e in mono:
                if k in values:
                    c = c * values[k] ** e
                else:
                    rest.append((k, e))
            key = tuple(rest)
            terms[key] = terms.get(key, 0) + c
        return self._new(terms)

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.signature == other.signature and self._terms == other._terms
        try:
            c = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(): c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._m, self._n, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: VariableNames | None = None) -> str:
        """Canonical text form (the exact inverse of the expression parser)."""
        if names is None:
            names = VariableNames.default(self._m, self._n)
        if not self._terms:
            return "0"
        pieces = []
        for mono, c in sorted(self._terms.items(), key=_term_sort_key):
            factors = "*".join(
                names.name_of(_key_var(k)) + (f"^{e}" if e != 1 else "") for k, e in mono
            )
            mag = abs(c)
            if not factors:
                body = _format_coefficient(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{_format_coefficient(mag)}*{factors}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"DiffPoly(m={self._m}, n={self._n}, {self.format()!r})"


def _check_variable(v, m: int, n: int) -> None:
    if isinstance(v, JetVariable):
        if not 1 <= v.alpha <= n:
            raise DimensionError(f"dependent index {v.alpha} out of range 1..{n}")
        if len(v.index) != m:
            raise DimensionError(f"multi-index {format_index(v.index)} does not have m={m} entries")
    elif isinstance(v, BaseVariable):
        if not 1 <= v.i <= m:
            raise DimensionError(f"base index {v.i} out of range 1..{m}")
    else:
        raise TypeError(f"not a variable: {v!r}")


def raise_jet(v: JetVariable, i: int) -> JetVariable:
    """``u^alpha_I -> u^alpha_{I + 1_i}``."""
    idx = list(v.index)
    idx[i - 1] += 1
    return JetVariable(v.alpha, MultiIndex(idx))


def total_derivative_raw(p: DiffPoly, i: int) -> DiffPoly:
    """``D_i p`` on the internal representation; ``i`` is 1-based and unchecked."""
    terms: dict = {}
    pos_i = i - 1
    for mono, c in p._terms.items():
        for pos, (k, e) in enumerate(mono):
            if k[0] == 0:
                if k[1] != i:
                    continue
                raised = None
            else:
                neg = list(k[3])
                neg[pos_i] -= 1
                raised = (1, k[1], k[2] + 1, tuple(neg))
            if e == 1:
                rest = mono[:pos] + mono[pos + 1:]
            else:
                rest = mono[:pos] + ((k, e - 1),) + mono[pos + 1:]
            new = rest if raised is None else _mono_mul(rest, ((raised, 1),))
            terms[new] = terms.get(new, 0) + c * e
    return p._new(terms)
