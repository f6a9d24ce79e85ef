"""Expression language for jet polynomials.

Grammar (whitespace insignificant, no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | NAME ("[" INT ("," INT)* "]")? | "(" expr ")"

A dependent name without brackets denotes the zero multi-index.  Problem
files start with a header line such as ``m=2 n=1 vars=u base=x,y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction

from .diffpoly import BaseVariable, DiffPoly, JetVariable, VariableNames
from .errors import ParseError
from .multiindex import MultiIndex

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()\[\],])"
)


@dataclass(frozen=True)
class ProblemHeader:
    """Signature and variable names of a problem."""

    m: int
    n: int
    dependent: tuple
    base: tuple

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"m and n must be >= 1, got m={self.m} n={self.n}")
        if len(self.dependent) != self.n:
            raise ValueError(f"expected {self.n} dependent names, got {len(self.dependent)}")
        if len(self.base) != self.m:
            raise ValueError(f"expected {self.m} base names, got {len(self.base)}")
        names = list(self.dependent) + list(self.base)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be unique: {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"invalid variable name {name!r}")

    @classmethod
    def default(cls, m: int, n: int) -> ProblemHeader:
        names = VariableNames.default(m, n)
        return cls(m, n, names.dependent, names.base)

    @property
    def names(self) -> VariableNames:
        return VariableNames(self.dependent, self.base)

    def alpha_of(self, name: str) -> int:
        try:
            return self.dependent.index(name) + 1
        except ValueError:
            raise ValueError(f"unknown dependent variable {name!r}") from None

    def format(self, **extra) -> str:
        parts = [f"m={self.m}", f"n={self.n}"]
        parts += [f"{k}={v}" for k, v in extra.items()]
        parts.append("vars=" + ",".join(self.dependent))
        parts.append("base=" + ",".join(self.base))
        return " ".join(parts)


def parse_header_fields(line: str) -> dict:
    """Split ``key=value`` fields of a header line."""
    fields = {}
    for part in line.split():
        key, sep, value = part.partition("=")
        if not sep or not key or not value:
            raise ValueError(f"malformed header field {part!r}")
        if key in fields:
            raise ValueError(f"duplicate header field {key!r}")
        fields[key] = value
    return fields


def header_from_fields(fields: dict, overrides: dict | None = None) -> ProblemHeader:
    fields = {**fields, **{k: v for k, v in (overrides or {}).items() if v is not None}}
    try:
        m = int(fields["m"])
        n = int(fields["n"])
    except KeyError as exc:
        raise ValueError(f"header is missing {exc.args[0]!r}") from None
    dep = fields.get("vars")
    base = fields.get("base")
    default = VariableNames.default(m, n)
    return ProblemHeader(
        m,
        n,
        tuple(dep.split(",")) if dep else default.dependent,
        tuple(base.split(",")) if base else default.base,
    )


def parse_header(line: str, overrides: dict | None = None) -> ProblemHeader:
    fields = parse_header_fields(line)
    unknown = set(fields) - {"m", "n", "vars", "base"}
    if unknown:
        raise ValueError(f"unknown header fields: {sorted(unknown)}")
    return header_from_fields(fields, overrides)


class _Parser:
    def __init__(self, header: ProblemHeader, text: str, line_offset: int = 0, col_offset: int = 0):
        self.header = header
        self.tokens = []
        line, line_start = 1, 0
        pos = 0
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            col = pos - line_start + 1
            where = (line + line_offset, col + (col_offset if line == 1 else 0))
            if mt is None:
                raise ParseError(f"unexpected character {text[pos]!r}", *where)
            kind = mt.lastgroup
            if kind == "ws":
                for i, ch in enumerate(mt.group(), start=pos):
                    if ch == "\n":
                        line += 1
                        line_start = i + 1
            else:
                self.tokens.append((kind, mt.group(), where))
            pos = mt.end()
        self.end = (line + line_offset, pos - line_start + 1 + (col_offset if line == 1 else 0))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", self.end)

    def take(self, value=None, kind=None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", *tok[2])
        self.i += 1
        return tok

    def parse(self) -> DiffPoly:
        if not self.tokens:
            raise ParseError("empty expression", *self.end)
        out = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", *tok[2])
        return out

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek()[1] == "*":
            self.take()
            out = out * self.unary()
        return out

    def unary(self):
        tok = self.peek()
        if tok[1] == "-":
            self.take()
            return -self.unary()
        if tok[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            exp = self.take(kind="int")
            return base ** int(exp[1])
        return base

    def atom(self):
        h = self.header
        kind, value, where = self.peek()
        if kind == "int":
            self.take()
            num = int(value)
            if self.peek()[1] == "/":
                self.take()
                den_tok = self.take(kind="int")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("division by zero", *den_tok[2])
                return DiffPoly.constant(Fraction(num, den), h.m, h.n)
            return DiffPoly.constant(num, h.m, h.n)
        if kind == "name":
            self.take()
            if value in h.base:
                if self.peek()[1] == "[":
                    raise ParseError(f"base variable {value!r} takes no multi-index", *self.peek()[2])
                return DiffPoly.base(h.base.index(value) + 1, h.m, h.n)
            if value not in h.dependent:
                raise ParseError(f"unknown variable {value!r}", *where)
            alpha = h.dependent.index(value) + 1
            if self.peek()[1] != "[":
                return DiffPoly.variable(JetVariable(alpha, MultiIndex.zero(h.m)), h.m, h.n)
            bracket = self.take("[")[2]
            entries = [int(self.take(kind="int")[1])]
            while self.peek()[1] == ",":
                self.take()
                entries.append(int(self.take(kind="int")[1]))
            self.take("]")
            if len(entries) != h.m:
                raise ParseError(
                    f"multi-index for {value!r} has {len(entries)} entries, expected m={h.m}",
                    *bracket,
                )
            return DiffPoly.variable(JetVariable(alpha, MultiIndex(entries)), h.m, h.n)
        if value == "(":
            self.take()
            out = self.expr()
            self.take(")")
            return out
        got = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"expected a number, variable or '(', got {got}", *where)


def parse(header: ProblemHeader, text: str, *, line: int = 1, column: int = 1) -> DiffPoly:
    """Parse ``text`` into a canonical :class:`DiffPoly`.

    ``line`` and ``column`` give the position of the first character of
    ``text`` inside a larger file, for error messages.
    """
    return _Parser(header, text, line - 1, column - 1).parse()


def format_poly(p: DiffPoly, header: ProblemHeader | None = None) -> str:
    return p.format(header.names if header is not None else None)


def content_lines(text: str):
    """Yield ``(line_number, line)`` with comments stripped and blank lines skipped."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield number, line


def parse_problem(text: str, overrides: dict | None = None) -> tuple[ProblemHeader, DiffPoly]:
    """Read a problem file: a header line followed by one expression (may span lines)."""
    lines = list(content_lines(text))
    if not lines:
        raise ParseError("empty problem file", 1, 1)
    header_line_no, header_line = lines[0]
    try:
        header = parse_header(header_line, overrides)
    except ValueError as exc:
        raise ParseError(f"bad header: {exc}", header_line_no, 1) from None
    if len(lines) < 2:
        raise ParseError("missing expression after header", header_line_no + 1, 1)
    # Re-join with the original line structure so error positions stay exact.
    first = lines[1][0]
    body_lines = {no: line for no, line in lines[1:]}
    last = lines[-1][0]
    body = "\n".join(body_lines.get(no, "") for no in range(first, last + 1))
    return header, parse(header, body, line=first)


def with_overrides(header: ProblemHeader, **changes) -> ProblemHeader:
    return replace(header, **{k: v for k, v in changes.items() if v is not None})
