import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetcalc.diffpoly import DiffPoly
from jetcalc.errors import NotDecomposableError, PreconditionError
from jetcalc.hyperaffine import det_lagrangian
from jetcalc.multiindex import MultiIndex, enumerate_indices, length
from jetcalc.quaddecomp import decompose_pair, decompose_quadratic, partitions, quadratic_part
from jetcalc.randgen import random_cancelling_quadratic, random_poly
from jetcalc.textio import ProblemHeader, parse
from jetcalc.varcalc import euler_lagrange, symbol_condition_holds

H1D = ProblemHeader(1, 1, ("u",), ("x",))
H2 = ProblemHeader(2, 1, ("u",), ("x", "y"))
H22 = ProblemHeader(2, 2, ("u", "v"), ("x", "y"))


def test_decompose_pair_example():
    d = decompose_pair((3, 0), (0, 3), (2, 1), (1, 2))
    assert (d.I1, d.I2, d.J1, d.J2, d.q) == ((2, 0), (0, 2), (1, 0), (0, 1), 1)
    assert d.determinant(1) == parse(H2, "u[3,0]*u[0,3] - u[2,1]*u[1,2]")


def test_decompose_pair_monge():
    d = decompose_pair((2, 0), (0, 2), (1, 1), (1, 1))
    assert (d.I1, d.I2, d.J1, d.J2) == ((1, 0), (0, 1), (1, 0), (0, 1))
    assert d.determinant(1) == parse(H2, "u[2,0]*u[0,2] - u[1,1]^2")


def test_decompose_pair_rejects_bad_input():
    with pytest.raises(PreconditionError):
        decompose_pair((2, 0), (0, 2), (2, 0), (1, 1))
    with pytest.raises(PreconditionError):
        decompose_pair((2, 0), (0, 1), (1, 0), (1, 1))


def _quads(m, k):
    tops = enumerate_indices(m, k)
    for H1, H2, K1 in itertools.product(tops, repeat=3):
        K2 = [a + b - c for a, b, c in zip(H1, H2, K1)]
        if min(K2) >= 0:
            yield H1, H2, K1, MultiIndex(K2)


@pytest.mark.parametrize("m,k", [(m, k) for m in (1, 2, 3) for k in (1, 2, 3)])
def test_decompose_pair_exhaustive(m, k):
    """Every admissible quadruple for small m, k satisfies the determinant identity."""
    for H1, H2, K1, K2 in _quads(m, k):
        d = decompose_pair(H1, H2, K1, K2, (1, 2))
        assert (d.H1, d.H2, d.K1, d.K2) == (H1, H2, K1, K2)
        assert length(d.J1) == length(d.J2) == d.q
        assert length(d.I1) == length(d.I2) == k - d.q
        u = lambda a, I: DiffPoly.jet(a, I, 2)  # noqa: E731
        assert d.determinant(2) == u(1, H1) * u(2, H2) - u(1, K1) * u(2, K2)
        if H1 != K1:
            rows, cols, sign = d.as_det_rows()
            assert det_lagrangian(rows, cols, 2).scale(sign) == d.determinant(2)


def test_monge_decomposition():
    ds = decompose_quadratic(parse(H2, "u[2,0]*u[0,2] - u[1,1]^2"))
    assert len(ds) == 1
    assert ds.expand() == ds.quadratic_part


def test_quadratic_part_selection():
    L = parse(H2, "u[2,0]*u[0,2] - u[1,1]^2 + x*u[2,0] + u[2,0]^3 + u[1,0]^2")
    assert quadratic_part(L) == parse(H2, "u[2,0]*u[0,2] - u[1,1]^2")
    assert quadratic_part(parse(H2, "u[1,0]")) == DiffPoly.zero(2, 1)


def test_partitions_grouping():
    L = parse(H22, "u[2,0]*v[0,2] - u[1,1]*v[1,1] + 3*u[2,0]^2")
    groups = partitions(quadratic_part(L), 2)
    assert set(groups) == {((2, 2), 1, 2), ((4, 0), 1, 1)}
    assert len(groups[((2, 2), 1, 2)]) == 2


def test_negative_control():
    with pytest.raises(NotDecomposableError) as info:
        decompose_quadratic(parse(H1D, "u[2]^2"))
    assert info.value.H == (4,) and info.value.alphas == (1, 1)


def test_not_decomposable_reports_first_group():
    # (2,2) group cancels, (4,0) does not.
    L = parse(H22, "u[2,0]*u[0,2] - u[1,1]^2 + v[2,0]*u[2,0]")
    with pytest.raises(NotDecomposableError) as info:
        decompose_quadratic(L)
    assert info.value.H == (4, 0) and info.value.alphas == (1, 2)


def test_order_precondition():
    with pytest.raises(PreconditionError):
        decompose_quadratic(DiffPoly.constant(1, 2, 1))


def _check(L, **kw):
    ds = decompose_quadratic(L, **kw)
    assert ds.expand() == ds.quadratic_part
    for t in ds:
        rows, cols, sign = t.as_det_rows()
        det = det_lagrangian(rows, cols, L.n)
        assert det.scale(sign) == t.determinant(L.n)
        assert euler_lagrange(det).is_projectable
    return ds


def test_random_cancelling_round_trip():
    rng = random.Random(21)
    for _ in range(60):
        m, n, k = rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 3)
        L = random_cancelling_quadratic(rng, m, n, k)
        if L.order() != k:
            continue
        assert symbol_condition_holds(L)
        _check(L)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_round_trip_independent_of_pivot(seed, pick):
    rng = random.Random(seed)
    m, n, k = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 3)
    L = random_cancelling_quadratic(rng, m, n, k) + random_poly(rng, m, n, k - 1, terms=2)
    if L.order() != k:
        return
    _check(L, pivot=lambda pairs: pairs[pick % len(pairs)])
