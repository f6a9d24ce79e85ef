"""Special affine (1, q) hyperforms and the determinants they generate.

A special affine hyperform of order ``k`` has components

    theta_J = sum_{alpha, |I| = k - q} theta^I_alpha * u^alpha_{I+J} + theta_J,    |J| = q,

with every coefficient of order at most ``k - 1``.  The wedge product of
``p_q = count(m, q)`` such hyperforms has a single coefficient: the
determinant of the ``p_q x p_q`` matrix of components, columns ordered
by :func:`~jetcalc.multiindex.enumerate_indices`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .diffpoly import DiffPoly, JetVariable
from .errors import DimensionError, ParseError, PreconditionError
from .multiindex import MultiIndex, count, enumerate_indices, length, parse_index, position
from .textio import ProblemHeader, content_lines, header_from_fields, parse, parse_header_fields


def _as_poly(c, m: int, n: int) -> DiffPoly:
    if isinstance(c, DiffPoly):
        if c.signature != (m, n):
            raise DimensionError(f"coefficient signature {c.signature} != {(m, n)}")
        return c
    return DiffPoly.constant(c, m, n)


@dataclass(frozen=True)
class SpecialAffineHyperform:
    """Coefficient data ``(theta^I_alpha, theta_J)`` of a special affine (1, q) hyperform.

    Parameters
    ----------
    m, n, k, q : int
        Base dimension, number of dependent variables, order and symmetric
        degree, with ``1 <= q <= k``.
    linear_part : mapping
        ``(alpha, I) -> coefficient`` with ``|I| = k - q``.
    affine_part : mapping
        ``J -> coefficient`` with ``|J| = q``.

    Coefficients may be ints, Fractions or :class:`DiffPoly` values of order
    at most ``k - 1``; they are normalised to DiffPoly.
    """

    m: int
    n: int
    k: int
    q: int
    linear_part: Mapping = field(default_factory=dict)
    affine_part: Mapping = field(default_factory=dict)

    def __post_init__(self):
        m, n, k, q = self.m, self.n, self.k, self.q
        if not 1 <= q <= k:
            raise PreconditionError(f"need 1 <= q <= k, got q={q}, k={k}")
        linear = {}
        for (alpha, I), c in self.linear_part.items():
            I = MultiIndex(I)
            if len(I) != m or length(I) != k - q:
                raise DimensionError(f"linear key {list(I)} must have m={m} entries and length {k - q}")
            if not 1 <= alpha <= n:
                raise DimensionError(f"dependent index {alpha} out of range 1..{n}")
            c = _as_poly(c, m, n)
            _check_coefficient_order(c, k)
            if c:
                linear[(alpha, I)] = c
        affine = {}
        for J, c in self.affine_part.items():
            J = MultiIndex(J)
            if len(J) != m or length(J) != q:
                raise DimensionError(f"affine key {list(J)} must have m={m} entries and length {q}")
            c = _as_poly(c, m, n)
            _check_coefficient_order(c, k)
            if c:
                affine[J] = c
        object.__setattr__(self, "linear_part", linear)
        object.__setattr__(self, "affine_part", affine)

    @property
    def signature(self) -> tuple:
        return (self.m, self.n, self.k, self.q)

    def component(self, J) -> DiffPoly:
        """The ``dx^J`` component, affine in the length-``k`` jet variables."""
        J = MultiIndex(J)
        if len(J) != self.m or length(J) != self.q:
            raise PreconditionError(f"component index must have length q={self.q}")
        out = self.affine_part.get(J, DiffPoly.zero(self.m, self.n))
        for (alpha, I), c in self.linear_part.items():
            out = out + c * DiffPoly.variable(JetVariable(alpha, I + J), self.m, self.n)
        return out

    def components(self) -> list[DiffPoly]:
        return [self.component(J) for J in enumerate_indices(self.m, self.q)]


def _check_coefficient_order(c: DiffPoly, k: int) -> None:
    o = c.order()
    if o is not None and o > k - 1:
        raise PreconditionError(f"hyperform coefficient {c} has order {o} > k - 1 = {k - 1}")


@dataclass(frozen=True)
class WedgeTerm:
    """Wedge product of exactly ``count(m, q)`` hyperforms sharing one signature."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise PreconditionError("a wedge term needs at least one factor")
        sig = factors[0].signature
        if any(f.signature != sig for f in factors):
            raise DimensionError("all factors of a wedge term must share (m, n, k, q)")
        m, _, _, q = sig
        if len(factors) != count(m, q):
            raise PreconditionError(
                f"a ({count(m, q)}, {q}) wedge term needs {count(m, q)} factors, got {len(factors)}"
            )
        object.__setattr__(self, "factors", factors)

    @property
    def signature(self) -> tuple:
        return self.factors[0].signature

    @property
    def q(self) -> int:
        return self.signature[3]

    def matrix(self) -> list[list[DiffPoly]]:
        return [f.components() for f in self.factors]


def determinant(matrix: Sequence[Sequence[DiffPoly]]) -> DiffPoly:
    """Exact determinant by cofactor expansion along rows.

    Minors are memoised on the set of columns still available, which keeps
    the work at ``O(2^h * h)`` products instead of ``h!``.
    """
    h = len(matrix)
    if any(len(row) != h for row in matrix):
        raise DimensionError("determinant needs a square matrix")
    if h == 0:
        raise DimensionError("determinant of an empty matrix")
    m, n = matrix[0][0].signature
    one = DiffPoly.constant(1, m, n)
    memo: dict = {}

    def minor(row: int, cols: tuple) -> DiffPoly:
        if row == h:
            return one
        if cols in memo:
            return memo[cols]
        total = DiffPoly.zero(m, n)
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry.is_zero:
                continue
            rest = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if rest.is_zero:
                continue
            prod = entry * rest
            total = total - prod if pos % 2 else total + prod
        memo[cols] = total
        return total

    return minor(0, tuple(range(h)))


def wedge_coefficient(term: WedgeTerm) -> DiffPoly:
    """Coefficient of ``dx^{J_1} ^ ... ^ dx^{J_p}`` in the wedge product."""
    return determinant(term.matrix())


def det_lagrangian(rows: Sequence, columns: Sequence, n: int) -> DiffPoly:
    """The ``h x h`` determinant ``| u^{alpha_r}_{I_r + J_s} |``.

    ``rows`` are ``(alpha, I)`` pairs with a common ``|I| = k - q``;
    ``columns`` are length-``q`` multi-indices in canonical order (a
    subsequence of ``enumerate_indices(m, q)``).
    """
    rows = [(alpha, MultiIndex(I)) for alpha, I in rows]
    columns = [MultiIndex(J) for J in columns]
    if len(rows) != len(columns):
        raise DimensionError(f"{len(rows)} rows but {len(columns)} columns")
    if not rows:
        raise DimensionError("empty determinant")
    m = len(columns[0])
    if any(len(J) != m for J in columns) or any(len(I) != m for _, I in rows):
        raise DimensionError("all multi-indices must have the same m")
    q = length(columns[0])
    if any(length(J) != q for J in columns):
        raise PreconditionError("columns must all have the same length q")
    if len({length(I) for _, I in rows}) != 1:
        raise PreconditionError("row multi-indices must all have the same length k - q")
    positions = [position(J) for J in columns]
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise PreconditionError("columns must be a subsequence of the canonical enumeration")
    matrix = [
        [DiffPoly.variable(JetVariable(alpha, I + J), m, n) for J in columns]
        for alpha, I in rows
    ]
    return determinant(matrix)


def hyperaffine_lagrangian(terms: Sequence[WedgeTerm], signature: tuple | None = None) -> DiffPoly:
    """Sum of wedge coefficients; terms may have different ``q`` but share ``(m, n, k)``.

    ``signature`` = ``(m, n)`` is required only for an empty sequence.
    """
    terms = list(terms)
    if not terms:
        if signature is None:
            raise PreconditionError("signature (m, n) is required for an empty sum")
        return DiffPoly.zero(*signature)
    mnk = {t.signature[:3] for t in terms}
    if len(mnk) != 1:
        raise DimensionError(f"wedge terms with mixed (m, n, k): {sorted(mnk)}")
    m, n, _ = mnk.pop()
    out = DiffPoly.zero(m, n)
    for t in terms:
        out = out + wedge_coefficient(t)
    return out


# -- hyperform specification files ---------------------------------------


@dataclass(frozen=True)
class HyperformSpec:
    header: ProblemHeader
    k: int
    terms: tuple


def parse_hyperform_spec(text: str) -> HyperformSpec:
    """Read a hyperform specification.

    Layout::

        m=2 n=3 k=2 q=2 vars=u,v,w base=x,y
        factor
          linear alpha=u I=[0,0] coeff=1
          affine J=[0,2] coeff=1/2*x
        term q=1          # optional: start another wedge term
        factor
          ...

    ``q`` in the header opens an implicit first term.  ``coeff=`` runs to the
    end of the line and uses the expression grammar.
    """
    lines = list(content_lines(text))
    if not lines:
        raise ParseError("empty hyperform file", 1, 1)
    head_no, head_line = lines[0]
    try:
        fields = parse_header_fields(head_line)
        unknown = set(fields) - {"m", "n", "k", "q", "vars", "base"}
        if unknown:
            raise ValueError(f"unknown header fields: {sorted(unknown)}")
        header = header_from_fields({k: v for k, v in fields.items() if k not in ("k", "q")})
        k = int(fields["k"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad header: {exc}", head_no, 1) from None

    groups: list = []  # [q, [factor dicts]]
    if "q" in fields:
        groups.append([int(fields["q"]), [], head_no])

    def fail(msg, no):
        raise ParseError(msg, no, 1)

    for no, line in lines[1:]:
        stripped = line.strip()
        word = stripped.split(None, 1)[0]
        if word == "term":
            rest = stripped[len("term"):].strip()
            if not rest.startswith("q="):
                fail("expected 'term q=<q>'", no)
            groups.append([int(rest[2:]), [], no])
        elif word == "factor":
            if not groups:
                fail("factor before any 'term q=..' and no q in header", no)
            groups[-1][1].append({"linear": {}, "affine": {}, "line": no})
        elif word in ("linear", "affine"):
            if not groups or not groups[-1][1]:
                fail(f"'{word}' line outside a factor block", no)
            head, sep, coeff_text = stripped.partition("coeff=")
            if not sep:
                fail("missing coeff=", no)
            column = line.index("coeff=") + len("coeff=") + 1
            coeff = parse(header, coeff_text, line=no, column=column)
            attrs = parse_header_fields(head[len(word):])
            factor = groups[-1][1][-1]
            try:
                if word == "linear":
                    key = (header.alpha_of(attrs["alpha"]), parse_index(attrs["I"]))
                    target = factor["linear"]
                else:
                    key = parse_index(attrs["J"])
                    target = factor["affine"]
            except (KeyError, ValueError) as exc:
                fail(f"bad {word} line: {exc}", no)
            q = groups[-1][0]
            index = key[1] if word == "linear" else key
            want = k - q if word == "linear" else q
            if len(index) != header.m or length(index) != want:
                fail(f"{'I' if word == 'linear' else 'J'}={index} needs {header.m} entries "
                     f"and length {want}", no)
            if coeff.order() is not None and coeff.order() > k - 1:
                fail(f"coefficient has order {coeff.order()} > k - 1 = {k - 1}", no)
            if key in target:
                fail(f"duplicate {word} entry", no)
            target[key] = coeff
        else:
            fail(f"unexpected line {stripped!r}", no)

    terms = []
    for q, factors, no in groups:
        try:
            hyperforms = [
                SpecialAffineHyperform(header.m, header.n, k, q, f["linear"], f["affine"])
                for f in factors
            ]
            terms.append(WedgeTerm(tuple(hyperforms)))
        except (DimensionError, PreconditionError) as exc:
            fail(str(exc), no)
    if not terms:
        fail("no wedge terms", head_no)
    return HyperformSpec(header, k, tuple(terms))


def format_hyperform_spec(spec: HyperformSpec) -> str:
    """Inverse of :func:`parse_hyperform_spec` (one ``term`` block per wedge term)."""
    h = spec.header
    lines = [h.format(k=spec.k)]
    for t in spec.terms:
        lines.append(f"term q={t.q}")
        for f in t.factors:
            lines.append("factor")
            for (alpha, I), c in sorted(f.linear_part.items(), key=lambda kv: (kv[0][0], position(kv[0][1]))):
                lines.append(
                    f"  linear alpha={h.dependent[alpha - 1]} I={I} coeff={c.format(h.names)}"
                )
            for J, c in sorted(f.affine_part.items(), key=lambda kv: position(kv[0])):
                lines.append(f"  affine J={J} coeff={c.format(h.names)}")
    return "\n".join(lines) + "\n"
