"""Builtin example Lagrangians and the wedge terms that generate them.

Each builtin carries its polynomial (written out term by term, independent
of any determinant construction) together with the facts that
``verify-builtin`` checks: Euler--Lagrange order, projectability and the
degree in the top-order variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diffpoly import DiffPoly
from .errors import PreconditionError
from .hyperaffine import SpecialAffineHyperform, WedgeTerm, det_lagrangian
from .multiindex import MultiIndex, count, enumerate_indices
from .textio import ProblemHeader, parse


@dataclass(frozen=True)
class Builtin:
    """A named example with its documented expectations.

    ``el_order`` is the expected order of the Euler--Lagrange system
    (``None`` for a null Lagrangian, :data:`UNKNOWN` when not recorded).
    """

    name: str
    header: ProblemHeader
    k: int
    poly: DiffPoly
    el_order: int | None | str
    top_degree: int
    projectable: bool = True

    @property
    def m(self) -> int:
        return self.header.m

    @property
    def n(self) -> int:
        return self.header.n


UNKNOWN = "unknown"

_XY = ("x", "y")

_TEXT = {
    "L1": (ProblemHeader(1, 2, ("u", "v"), ("x",)), 1, "u*v[1] - v*u[1]", 1, 1),
    # Horizontalization of the exact form u_x du_x ^ du_y, hence null.
    "L2": (ProblemHeader(2, 1, ("u",), _XY), 2, "u[1,0]*(u[2,0]*u[0,2] - u[1,1]^2)", None, 2),
    "L3": (
        ProblemHeader(2, 3, ("u", "v", "w"), _XY),
        2,
        "u[2,0]*v[1,1]*w[0,2] - u[2,0]*v[0,2]*w[1,1] + u[1,1]*v[0,2]*w[2,0]"
        " - u[1,1]*v[2,0]*w[0,2] + u[0,2]*v[2,0]*w[1,1] - u[0,2]*v[1,1]*w[2,0]",
        3,
        3,
    ),
    "L4": (
        ProblemHeader(2, 1, ("u",), _XY),
        4,
        "u[4,0]*u[2,2]*u[0,4] + 2*u[3,1]*u[2,2]*u[1,3] - u[4,0]*u[1,3]^2"
        " - u[3,1]^2*u[0,4] - u[2,2]^3",
        6,
        3,
    ),
    "L5": (ProblemHeader(2, 3, ("u", "v", "w"), _XY), 2, "w*(u[2,0]*v[0,2] - u[1,1]*v[1,1])", 3, 2),
    "L6": (ProblemHeader(2, 3, ("u", "v", "w"), _XY), 2, "w*(u[2,0]*v[1,1] - u[1,1]*v[2,0])", 3, 2),
    "null3": (ProblemHeader(2, 1, ("u",), _XY), 3, "u[3,0]*u[0,3] - u[2,1]*u[1,2]", None, 2),
}

# The sharpness determinants used in the corpus; each is a Jacobian-type
# null Lagrangian when k = 1.
SHARP_CASES = ((1, 2), (2, 2), (1, 3))
_SHARP_EL_ORDER = {(1, 2): None, (2, 2): 3, (1, 3): None}

BUILTIN_NAMES = tuple(_TEXT) + tuple(f"sharp({k},{m})" for k, m in SHARP_CASES)

_SHARP_RE = re.compile(r"sharp\((\d+),(\d+)\)")


def sharp_header(k: int, m: int) -> ProblemHeader:
    n = count(m, k)
    base = _XY if m == 2 else tuple(f"x{i}" for i in range(1, m + 1))
    return ProblemHeader(m, n, ProblemHeader.default(m, n).dependent, base)


def sharp(k: int, m: int) -> Builtin:
    """The ``p_k x p_k`` determinant ``| u^r_{J_s} |`` with ``n = p_k``."""
    if k < 1 or m < 1:
        raise PreconditionError("sharp(k, m) needs k, m >= 1")
    n = count(m, k)
    zero = MultiIndex.zero(m)
    poly = det_lagrangian([(r, zero) for r in range(1, n + 1)], enumerate_indices(m, k), n)
    return Builtin(
        f"sharp({k},{m})", sharp_header(k, m), k, poly, _SHARP_EL_ORDER.get((k, m), UNKNOWN), n
    )


def builtin(name: str) -> Builtin:
    """Look up a builtin by name: ``L1``..``L6``, ``null3`` or ``sharp(k,m)``."""
    key = name.replace(" ", "")
    mt = _SHARP_RE.fullmatch(key)
    if mt:
        return sharp(int(mt.group(1)), int(mt.group(2)))
    try:
        header, k, text, el_order, top = _TEXT[key]
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None
    return Builtin(key, header, k, parse(header, text), el_order, top)


def corpus() -> list[Builtin]:
    return [builtin(name) for name in BUILTIN_NAMES]


def _jet(alpha, index, n):
    return DiffPoly.jet(alpha, index, n)


def builtin_wedge(name: str) -> list[WedgeTerm]:
    """Wedge terms whose hyperaffine Lagrangian equals ``builtin(name).poly``."""
    key = name.replace(" ", "")
    mt = _SHARP_RE.fullmatch(key)
    if mt:
        k, m = int(mt.group(1)), int(mt.group(2))
        n = count(m, k)
        zero = MultiIndex.zero(m)
        return [
            WedgeTerm(
                tuple(SpecialAffineHyperform(m, n, k, k, {(r, zero): 1}) for r in range(1, n + 1))
            )
        ]
    if key == "L1":
        # (u v_x - v u_x) dx: one factor, q = k = 1.
        f = SpecialAffineHyperform(1, 2, 1, 1, {(2, (0,)): _jet(1, (0,), 2), (1, (0,)): -_jet(2, (0,), 2)})
        return [WedgeTerm((f,))]
    if key == "L2":
        f1 = SpecialAffineHyperform(2, 1, 2, 1, {(1, (1, 0)): _jet(1, (1, 0), 1)})
        f2 = SpecialAffineHyperform(2, 1, 2, 1, {(1, (0, 1)): 1})
        return [WedgeTerm((f1, f2))]
    if key == "L3":
        return [
            WedgeTerm(tuple(SpecialAffineHyperform(2, 3, 2, 2, {(a, (0, 0)): 1}) for a in (1, 2, 3)))
        ]
    if key == "L4":
        return [
            WedgeTerm(
                tuple(
                    SpecialAffineHyperform(2, 1, 4, 2, {(1, I): 1})
                    for I in ((2, 0), (1, 1), (0, 2))
                )
            )
        ]
    if key == "L5":
        w = _jet(3, (0, 0), 3)
        f1 = SpecialAffineHyperform(2, 3, 2, 1, {(1, (1, 0)): w})
        f2 = SpecialAffineHyperform(2, 3, 2, 1, {(2, (0, 1)): 1})
        return [WedgeTerm((f1, f2))]
    if key == "L6":
        w = _jet(3, (0, 0), 3)
        f1 = SpecialAffineHyperform(2, 3, 2, 2, {(1, (0, 0)): w})
        f2 = SpecialAffineHyperform(2, 3, 2, 2, {(2, (0, 0)): 1})
        f3 = SpecialAffineHyperform(2, 3, 2, 2, affine_part={(0, 2): 1})
        return [WedgeTerm((f1, f2, f3))]
    if key == "null3":
        # Third factor is -dx.dy: with columns (dx.dx, dx.dy, dy.dy) the
        # cofactor of the middle column carries a minus sign.
        f1 = SpecialAffineHyperform(2, 1, 3, 2, {(1, (1, 0)): 1})
        f2 = SpecialAffineHyperform(2, 1, 3, 2, {(1, (0, 1)): 1})
        f3 = SpecialAffineHyperform(2, 1, 3, 2, affine_part={(1, 1): -1})
        return [WedgeTerm((f1, f2, f3))]
    raise KeyError(f"unknown builtin {name!r}")
