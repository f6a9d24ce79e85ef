"""Total derivatives, the Euler--Lagrange operator and projectability.

For a Lagrangian ``L`` of order ``k`` the Euler--Lagrange components are

    eps_alpha = sum_{|I| <= k} (-1)^{|I|} D^I (dL / du^alpha_I)

with the sum over distinct multi-indices ``I``, each with coefficient 1.
The system is projectable when its order is strictly less than ``2k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .diffpoly import DiffPoly, JetVariable, total_derivative_raw
from .errors import DimensionError, PreconditionError
from .multiindex import MultiIndex, enumerate_indices, length


def total_derivative(p: DiffPoly, i: int) -> DiffPoly:
    """``D_i p = dp/dx^i + sum u^alpha_{I+1_i} dp/du^alpha_I``."""
    if not 1 <= i <= p.m:
        raise DimensionError(f"direction {i} out of range 1..{p.m}")
    return total_derivative_raw(p, i)


def iterated_total_derivative(p: DiffPoly, I) -> DiffPoly:
    """``D_1^{I(1)} ... D_m^{I(m)} p`` by repeated single derivatives."""
    if len(I) != p.m:
        raise DimensionError(f"multi-index has {len(I)} entries, expected m={p.m}")
    out = p
    for i, times in enumerate(I, start=1):
        for _ in range(times):
            if out.is_zero:
                return out
            out = total_derivative_raw(out, i)
    return out


@dataclass(frozen=True)
class ELSystem:
    """Euler--Lagrange components ``eps_1 .. eps_n`` of a Lagrangian.

    ``source_order`` is the order ``k`` of the Lagrangian (0 for a jet-constant
    one) and ``system_order`` the maximal component order, or ``None`` when
    every component is jet-constant (in particular identically zero).
    """

    components: tuple
    source_order: int
    system_order: int | None

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    @property
    def is_projectable(self) -> bool:
        return self.system_order is None or self.system_order < 2 * self.source_order


def euler_lagrange(L: DiffPoly) -> ELSystem:
    k = L.order()
    k = 0 if k is None else k
    present = L.jet_variables()
    components = []
    for alpha in range(1, L.n + 1):
        eps = DiffPoly.zero(L.m, L.n)
        for v in present:
            if v.alpha != alpha:
                continue
            term = iterated_total_derivative(L.partial(v), v.index)
            eps = eps - term if length(v.index) % 2 else eps + term
        components.append(eps)
    orders = [c.order() for c in components]
    system_order = max((o for o in orders if o is not None), default=None)
    return ELSystem(tuple(components), k, system_order)


def _require_order(L: DiffPoly) -> int:
    k = L.order()
    if k is None or k < 1:
        raise PreconditionError("projectability needs a Lagrangian of order k >= 1")
    return k


def is_projectable(L: DiffPoly) -> bool:
    """True iff the Euler--Lagrange system has order ``< 2 * order(L)``."""
    _require_order(L)
    return euler_lagrange(L).is_projectable


def symbol_matrix(L: DiffPoly, H) -> list[list[DiffPoly]]:
    """``n x n`` matrix ``sum_{J+K=H} d^2 L / du^alpha_J du^beta_K`` over ordered pairs.

    ``J`` and ``K`` range over distinct multi-indices of length ``k``; ``H``
    must have length ``2k``.
    """
    k = _require_order(L)
    H = MultiIndex(H)
    if len(H) != L.m:
        raise DimensionError(f"H has {len(H)} entries, expected m={L.m}")
    if length(H) != 2 * k:
        raise PreconditionError(f"|H| = {length(H)} but 2k = {2 * k}")
    pairs = []
    for J in enumerate_indices(L.m, k):
        if all(j <= h for j, h in zip(J, H)):
            pairs.append((J, MultiIndex(h - j for h, j in zip(H, J))))
    n = L.n
    first = {
        (alpha, J): L.partial(JetVariable(alpha, J))
        for alpha in range(1, n + 1)
        for J in {J for J, _ in pairs}
    }
    out = []
    for alpha in range(1, n + 1):
        row = []
        for beta in range(1, n + 1):
            entry = DiffPoly.zero(L.m, n)
            for J, K in pairs:
                entry = entry + first[(alpha, J)].partial(JetVariable(beta, K))
            row.append(entry)
        out.append(row)
    return out


def symbol_violations(L: DiffPoly):
    """Yield ``(H, alpha, beta, entry)`` for every nonzero symbol entry, H in canonical order."""
    k = _require_order(L)
    for H in enumerate_indices(L.m, 2 * k):
        matrix = symbol_matrix(L, H)
        for (a, row) in enumerate(matrix, start=1):
            for (b, entry) in enumerate(row, start=1):
                if not entry.is_zero:
                    yield H, a, b, entry


def symbol_condition_holds(L: DiffPoly) -> bool:
    """True iff every order-``2k`` symbol matrix vanishes; stops at the first failure."""
    for _ in symbol_violations(L):
        return False
    return True


def divergence(fields) -> DiffPoly:
    """``sum_i D_i f^i`` for a sequence of ``m`` polynomials."""
    fields = list(fields)
    if not fields:
        raise ValueError("need at least one field")
    m = fields[0].m
    if len(fields) != m:
        raise DimensionError(f"need m={m} fields, got {len(fields)}")
    out = DiffPoly.zero(*fields[0].signature)
    for i, f in enumerate(fields, start=1):
        out = out + total_derivative(f, i)
    return out


def all_jet_variables(m: int, n: int, max_order: int):
    """Every ``u^alpha_I`` with ``|I| <= max_order``, in canonical order."""
    for alpha, q in product(range(1, n + 1), range(max_order + 1)):
        for I in enumerate_indices(m, q):
            yield JetVariable(alpha, I)
