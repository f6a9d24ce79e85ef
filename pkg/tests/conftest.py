import pytest
import sympy as sp
from hypothesis import strategies as st

from jetcalc.diffpoly import BaseVariable, DiffPoly, JetVariable
from jetcalc.multiindex import enumerate_indices


def variables(m, n, max_order, base=True):
    out = [JetVariable(a, I) for a in range(1, n + 1) for q in range(max_order + 1)
           for I in enumerate_indices(m, q)]
    if base:
        out += [BaseVariable(i) for i in range(1, m + 1)]
    return out


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def polys(draw, m=2, n=2, max_order=2, max_terms=4, max_degree=3, base=True):
    vs = variables(m, n, max_order, base)
    terms = draw(st.lists(
        st.tuples(rationals, st.lists(st.sampled_from(vs), max_size=max_degree)),
        max_size=max_terms,
    ))
    items = []
    for c, factors in terms:
        mono = {}
        for v in factors:
            mono[v] = mono.get(v, 0) + 1
        items.append((c, mono))
    return DiffPoly.from_terms(m, n, items)


# -- independent oracle: jet variables as derivatives of sympy functions ----

class SympyJets:
    """Map DiffPoly values to sympy expressions in functions u_alpha(x_1..x_m)."""

    def __init__(self, m, n):
        self.m, self.n = m, n
        self.xs = sp.symbols(f"x1:{m + 1}")
        self.fs = [sp.Function(f"f{a}")(*self.xs) for a in range(1, n + 1)]

    def var(self, v):
        if isinstance(v, BaseVariable):
            return self.xs[v.i - 1]
        f = self.fs[v.alpha - 1]
        spec = [(x, e) for x, e in zip(self.xs, v.index) if e]
        return sp.Derivative(f, *spec) if spec else f

    def expr(self, p):
        total = sp.Integer(0)
        for c, factors in p.terms():
            t = sp.Rational(c.numerator, c.denominator)
            for v, e in factors:
                t *= self.var(v) ** e
            total += t
        return total

    def euler_lagrange(self, p):
        from sympy.calculus.euler import euler_equations
        # sympy discards equations that evaluate to a boolean (0 = 0, or
        # c = 0 for L linear in f); a symbolic shift z*f keeps every
        # equation alive and is removed afterwards.
        z = sp.Symbol("z_shift")
        L = self.expr(p) + z * sum(self.fs)
        eqs = euler_equations(L, self.fs, list(self.xs))
        assert len(eqs) == self.n
        return [(eq.lhs - eq.rhs).subs(z, 0) for eq in eqs]


def sympy_equal(a, b):
    return sp.expand((a - b).doit()) == 0


@pytest.fixture
def jets():
    return SympyJets


# -- acceptance summary -----------------------------------------------------

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
