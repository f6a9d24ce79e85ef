from itertools import product

import pytest
from hypothesis import given, strategies as st

from jetcalc.errors import DimensionError, NotDivisibleError
from jetcalc.multiindex import (
    MultiIndex,
    add,
    count,
    enumerate_indices,
    format_index,
    is_pure,
    length,
    parse_index,
    position,
    subtract_checked,
    weight,
)

M = MultiIndex


@pytest.mark.parametrize("a, b, expected", [
    ((2, 0), (0, 2), (2, 2)),
    ((1, 1), (1, 1), (2, 2)),
    ((1, 0, 2), (0, 3, 0), (1, 3, 2)),
])
def test_add(a, b, expected):
    assert add(M(a), M(b)) == M(expected)
    assert M(a) + M(b) == M(expected)


def test_add_mismatched_m():
    with pytest.raises(DimensionError):
        add(M((1, 0)), M((1, 0, 0)))


def test_subtract_checked():
    assert subtract_checked(M((2, 2)), M((1, 1))) == M((1, 1))
    assert subtract_checked(M((2, 0)), M((2, 0))) == M((0, 0))
    with pytest.raises(NotDivisibleError):
        subtract_checked(M((1, 0)), M((0, 1)))


def test_length_and_weight():
    assert length(M((2, 1, 1))) == 4
    assert length(M((0, 0))) == 0
    assert length(M((4, 0))) == 4
    assert weight(M((3, 0))) == 9
    assert weight(M((1, 1))) == 2
    assert weight(M((2, 1, 1))) == 6


def test_enumerate_examples():
    assert enumerate_indices(2, 2) == [M((2, 0)), M((1, 1)), M((0, 2))]
    assert enumerate_indices(1, 5) == [M((5,))]
    assert enumerate_indices(3, 1) == [M((1, 0, 0)), M((0, 1, 0)), M((0, 0, 1))]


def test_count_examples():
    for k in range(8):
        assert count(2, k) == k + 1
    for m in range(1, 7):
        assert count(m, 2) == m * (m + 1) // 2
        assert count(1, m) == 1


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("q", [0, 1, 2, 3, 4, 5])
def test_enumerate_against_brute_force(m, q):
    brute = sorted((M(e) for e in product(range(q + 1), repeat=m) if sum(e) == q), reverse=True)
    got = enumerate_indices(m, q)
    assert got == brute
    assert len(got) == count(m, q) == len(set(got))
    assert all(a > b for a, b in zip(got, got[1:]))
    assert [position(I) for I in got] == list(range(len(got)))


def test_is_pure():
    assert is_pure(M((4, 0)))
    assert not is_pure(M((1, 1)))
    assert not is_pure(M((0, 0)))


def test_negative_entries_rejected():
    with pytest.raises(ValueError):
        M((1, -1))


def test_text_form_round_trip():
    assert format_index(M((2, 0))) == "[2,0]"
    assert parse_index("[2,0]") == M((2, 0))
    assert str(M((0, 1, 3))) == "[0,1,3]"
    with pytest.raises(ValueError):
        parse_index("2,0")


indices = st.lists(st.integers(0, 5), min_size=3, max_size=3).map(M)


@given(indices, indices, indices)
def test_add_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert length(a + b) == length(a) + length(b)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_parallelogram_rule(m, k):
    # 2|J|^2 <= |K1|^2 + |K2|^2 whenever K1 + K2 = 2J, with equality only at K1 = K2 = J.
    tops = enumerate_indices(m, k)
    for K1, K2 in product(tops, repeat=2):
        s = K1 + K2
        if any(e % 2 for e in s):
            continue
        J = M(e // 2 for e in s)
        assert 2 * weight(J) <= weight(K1) + weight(K2)
        assert (2 * weight(J) == weight(K1) + weight(K2)) == (K1 == K2 == J)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_max_weight_iff_pure(m, k):
    for I in enumerate_indices(m, k):
        assert weight(I) <= k * k
        assert (weight(I) == k * k) == is_pure(I)
