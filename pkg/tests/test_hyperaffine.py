import itertools
import random
from pathlib import Path

import pytest

from jetcalc.corpus import builtin, builtin_wedge
from jetcalc.diffpoly import DiffPoly
from jetcalc.errors import DimensionError, ParseError, PreconditionError
from jetcalc.hyperaffine import (
    SpecialAffineHyperform,
    WedgeTerm,
    det_lagrangian,
    determinant,
    format_hyperform_spec,
    hyperaffine_lagrangian,
    parse_hyperform_spec,
    wedge_coefficient,
)
from jetcalc.multiindex import count, enumerate_indices
from jetcalc.randgen import random_poly, random_wedge_term
from jetcalc.textio import ProblemHeader, parse
from jetcalc.varcalc import euler_lagrange

FIX = Path(__file__).parent / "fixtures"
H2 = ProblemHeader(2, 1, ("u",), ("x", "y"))
H23 = ProblemHeader(2, 3, ("u", "v", "w"), ("x", "y"))


def leibniz_det(M):
    """Permutation-sum determinant, the textbook oracle."""
    h = len(M)
    m, n = M[0][0].signature
    total = DiffPoly.zero(m, n)
    for perm in itertools.permutations(range(h)):
        inv = sum(1 for i in range(h) for j in range(i + 1, h) if perm[i] > perm[j])
        prod = DiffPoly.constant(1, m, n)
        for r, c in enumerate(perm):
            prod = prod * M[r][c]
        total = total - prod if inv % 2 else total + prod
    return total


def test_component_examples():
    f = SpecialAffineHyperform(2, 1, 2, 1, {(1, (1, 0)): parse(H2, "u[1,0]")}, {(0, 1): 3})
    assert f.component((1, 0)) == parse(H2, "u[1,0]*u[2,0]")
    assert f.component((0, 1)) == parse(H2, "u[1,0]*u[1,1] + 3")
    g = SpecialAffineHyperform(2, 1, 2, 2, {(1, (0, 0)): 1})
    assert g.components() == [parse(H2, t) for t in ("u[2,0]", "u[1,1]", "u[0,2]")]


def test_hyperform_validation():
    with pytest.raises(PreconditionError):
        SpecialAffineHyperform(2, 1, 2, 3)
    with pytest.raises(DimensionError):
        SpecialAffineHyperform(2, 1, 2, 1, {(1, (1, 1)): 1})
    with pytest.raises(PreconditionError):
        SpecialAffineHyperform(2, 1, 2, 1, {(1, (1, 0)): parse(H2, "u[2,0]")})
    f = SpecialAffineHyperform(2, 1, 2, 2, {(1, (0, 0)): 1})
    with pytest.raises(PreconditionError):
        WedgeTerm((f, f))
    with pytest.raises(DimensionError):
        WedgeTerm((f, f, SpecialAffineHyperform(2, 2, 2, 2)))


@pytest.mark.parametrize("name", ["L1", "L2", "L3", "L4", "L5", "L6", "null3",
                                  "sharp(1,2)", "sharp(2,2)", "sharp(1,3)"])
def test_builtin_wedges(name):
    assert hyperaffine_lagrangian(builtin_wedge(name)) == builtin(name).poly


def test_identical_factors_vanish():
    f = SpecialAffineHyperform(2, 1, 2, 1, {(1, (1, 0)): parse(H2, "u")}, {(0, 1): 1})
    assert wedge_coefficient(WedgeTerm((f, f))).is_zero


def test_determinant_matches_leibniz():
    rng = random.Random(11)
    for h in range(1, 6):
        M = [[random_poly(rng, 2, 1, 1, terms=2) for _ in range(h)] for _ in range(h)]
        assert determinant(M) == leibniz_det(M)


def test_det_lagrangian_examples():
    null3_minor = det_lagrangian([(1, (1, 0)), (1, (0, 1))], [(2, 0), (0, 2)], 1)
    assert null3_minor == builtin("null3").poly
    assert det_lagrangian([(2, (1, 0))], [(0, 1)], 3) == parse(H23, "v[1,1]")
    with pytest.raises(PreconditionError):
        det_lagrangian([(1, (0, 0)), (1, (1, 0))], [(1, 0), (0, 1)], 1)
    with pytest.raises(PreconditionError):
        det_lagrangian([(1, (0, 0)), (1, (0, 0))], [(0, 1), (1, 0)], 1)
    with pytest.raises(DimensionError):
        det_lagrangian([(1, (0, 0))], [(1, 0), (0, 1)], 1)


def test_det_lagrangian_duplicate_rows_vanish():
    rows = [(1, (1, 0)), (1, (1, 0)), (2, (0, 1))]
    assert det_lagrangian(rows, enumerate_indices(2, 2), 2).is_zero


def test_hyperaffine_lagrangian_empty():
    assert hyperaffine_lagrangian([], signature=(2, 3)) == DiffPoly.zero(2, 3)
    with pytest.raises(PreconditionError):
        hyperaffine_lagrangian([])


def test_mixed_signatures_rejected():
    a = builtin_wedge("L2")[0]
    b = builtin_wedge("null3")[0]
    with pytest.raises(DimensionError):
        hyperaffine_lagrangian([a, b])


def test_antisymmetry_and_multilinearity():
    rng = random.Random(12)
    for _ in range(30):
        m, n, k = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 3)
        q = rng.randint(1, k)
        t = random_wedge_term(rng, m, n, k, q)
        base = wedge_coefficient(t)
        fs = list(t.factors)
        if len(fs) >= 2:
            swapped = WedgeTerm((fs[1], fs[0], *fs[2:]))
            assert wedge_coefficient(swapped) == -base
        # multilinear in the first factor: the coefficient maps add
        g = random_wedge_term(rng, m, n, k, q).factors[0]
        summed = SpecialAffineHyperform(
            m, n, k, q,
            {key: fs[0].linear_part.get(key, 0) + g.linear_part.get(key, 0)
             for key in set(fs[0].linear_part) | set(g.linear_part)},
            {key: fs[0].affine_part.get(key, 0) + g.affine_part.get(key, 0)
             for key in set(fs[0].affine_part) | set(g.affine_part)},
        )
        lhs = wedge_coefficient(WedgeTerm((summed, *fs[1:])))
        rhs = base + wedge_coefficient(WedgeTerm((g, *fs[1:])))
        assert lhs == rhs


def test_degree_bound_and_projectability():
    rng = random.Random(13)
    for _ in range(40):
        m, n, k = rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 3)
        t = random_wedge_term(rng, m, n, k, rng.randint(1, k))
        L = wedge_coefficient(t)
        if L.order() != k:
            continue
        assert L.top_degree(k) <= count(m, t.q)
        assert euler_lagrange(L).is_projectable


@pytest.mark.parametrize("fname,name", [("l3.hf", "L3"), ("l4.hf", "L4"), ("l6.hf", "L6")])
def test_spec_files_reproduce_builtins(fname, name):
    spec = parse_hyperform_spec((FIX / fname).read_text())
    assert hyperaffine_lagrangian(spec.terms) == builtin(name).poly


def test_spec_with_several_terms():
    spec = parse_hyperform_spec((FIX / "sum.hf").read_text())
    assert [t.q for t in spec.terms] == [1, 2]
    # q=1: rows (u_x u_xx, u_x u_xy + x) and (u_xy, u_yy).
    first = parse(spec.header, "u[1,0]*u[2,0]*u[0,2] - (u[1,0]*u[1,1] + x)*u[1,1]")
    # q=2: rows 2/3*(u_xx, u_xy, u_yy), (0, 1, 0), (0, 0, u_y).
    second = parse(spec.header, "2/3*u[2,0]*u[0,1]")
    assert hyperaffine_lagrangian(spec.terms) == first + second


@pytest.mark.parametrize("fname", ["l3.hf", "l4.hf", "l6.hf", "sum.hf"])
def test_spec_round_trip(fname):
    spec = parse_hyperform_spec((FIX / fname).read_text())
    again = parse_hyperform_spec(format_hyperform_spec(spec))
    assert again.header == spec.header and again.k == spec.k
    assert hyperaffine_lagrangian(again.terms) == hyperaffine_lagrangian(spec.terms)


def test_spec_errors_carry_lines():
    bad = "m=2 n=1 k=2 q=1 vars=u base=x,y\nfactor\n  linear alpha=u I=[1,1] coeff=1\nfactor\n"
    with pytest.raises(ParseError) as info:
        parse_hyperform_spec(bad)
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_hyperform_spec("m=2 n=1 k=2 q=1 vars=u base=x,y\nfactor\n  affine J=[0,1] coeff=1\n")
    assert info.value.line == 1  # one factor where two are needed
    with pytest.raises(ParseError) as info:
        parse_hyperform_spec("m=2 n=1 k=2 q=1 vars=u base=x,y\nfactor\n  affine J=[0,1] coeff=u[0,2]\n"
                             "factor\n")
    assert info.value.line == 3
