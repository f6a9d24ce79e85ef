"""Symbolic variational calculus for polynomial Lagrangians in jet coordinates."""

from .multiindex import MultiIndex, enumerate_indices, count, weight, is_pure
from .diffpoly import BaseVariable, DiffPoly, JetVariable, VariableNames
from .varcalc import (
    ELSystem,
    euler_lagrange,
    is_projectable,
    iterated_total_derivative,
    symbol_condition_holds,
    symbol_matrix,
    total_derivative,
)
from .hyperaffine import (
    SpecialAffineHyperform,
    WedgeTerm,
    det_lagrangian,
    hyperaffine_lagrangian,
    wedge_coefficient,
)
from .quaddecomp import DetSum, QuadDecomposition, decompose_pair, decompose_quadratic
from .corpus import builtin, builtin_wedge, corpus
from .textio import ProblemHeader, parse, parse_problem
from .errors import JetcalcError, NotDecomposableError, ParseError, PreconditionError

__version__ = "0.1.0"
