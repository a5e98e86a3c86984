import pytest
from hypothesis import given, settings, strategies as st

from dnquad.arith import (
    BRUTE_FORCE_LIMIT,
    is_square,
    is_square_plain,
    isqrt,
    sqrt_residues,
    sqrt_residues_array,
)


@pytest.mark.parametrize("x, root", [(0, 0), (49, 7), (2**64, 2**32), (10**30, 10**15)])
def test_isqrt_examples(x, root):
    assert isqrt(x) == root


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**40))
def test_isqrt_brackets(x):
    r = isqrt(x)
    assert r * r <= x < (r + 1) * (r + 1)


@pytest.mark.parametrize("x, root", [(-4, None), (0, 0), (1, 1), (2304, 48), (2, None), (2**64 + 1, None)])
def test_is_square_examples(x, root):
    assert is_square(x) == root


def test_is_square_row_value():
    # 27*160 + (-2016) from a known doubly-D(n) quadruple
    assert is_square(27 * 160 - 2016) == 48


@given(st.integers(min_value=-10**6, max_value=10**30))
def test_is_square_matches_filter_free_path(x):
    assert is_square(x) == is_square_plain(x)


@given(st.integers(min_value=0, max_value=10**25))
def test_is_square_on_squares(t):
    assert is_square(t * t) == t
    # strictly between (t+1)^2 and (t+2)^2
    assert is_square(t * t + 2 * t + 2) is None


def test_is_square_dense_range():
    # every residue class of the filters, against the reference
    for x in range(-10, 200_000):
        assert is_square(x) == is_square_plain(x)


@pytest.mark.parametrize("n, k, expected", [(1, 4, [1, 3]), (2, 7, [3, 4]), (2, 5, []), (0, 1, [0]), (5, 1, [0])])
def test_sqrt_residues_examples(n, k, expected):
    assert sqrt_residues(n, k) == expected


def _brute(n, k):
    return [r for r in range(k) if (r * r - n) % k == 0]


@settings(max_examples=300)
@given(st.integers(min_value=-10**9, max_value=10**9), st.integers(min_value=1, max_value=10**4))
def test_sqrt_residues_brute_force(n, k):
    assert sqrt_residues(n, k) == _brute(n, k)
    assert sqrt_residues_array(n, k).tolist() == _brute(n, k)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=BRUTE_FORCE_LIMIT, max_value=BRUTE_FORCE_LIMIT + 5000))
def test_sqrt_residues_large_modulus_route(n, k):
    # above the threshold the result comes from modular square roots
    got = sqrt_residues(n, k)
    assert got == sorted(set(got))
    assert all((r * r - n) % k == 0 for r in got)
    assert got == _brute(n, k)
    assert sqrt_residues_array(n, k).tolist() == got


def test_sqrt_residues_rejects_bad_modulus():
    with pytest.raises(ValueError):
        sqrt_residues(1, 0)
