import random

import pytest
from hypothesis import given, settings, strategies as st

from dnquad.model import verify_dn
from dnquad.secondn import find_all_n, find_all_n_naive
from known_quadruples import DOUBLE_N_ROWS, SQUARE_ROWS


def test_examples():
    assert {128, 848} <= set(find_all_n([-1, 7, 64, 119], 1, 10**6))
    assert {0, 6720} <= set(find_all_n([1, 4, 169, 1024], 0, 10**5))
    assert {-16400, -40400} <= set(find_all_n([175, 231, 300, 396], -10**5, 0))


def test_zero_reported_unless_excluded():
    assert find_all_n([1, 4, 169, 1024], 0, 0) == [0]
    assert find_all_n([1, 4, 169, 1024], 0, 0, exclude_zero=True) == []


def test_single_n_quadruples():
    assert find_all_n([1, 33, 68, 105], -10**6, 10**6) == [256]
    assert find_all_n([1, 3, 8, 120], -10**6, 10**6) == [1]


def test_empty_window_rejected():
    with pytest.raises(ValueError):
        find_all_n([1, 3, 8, 120], 5, 4)


def test_all_products_negative():
    # max product is negative, so s starts at 0
    quad = [-3, -2, 5, 7]
    assert find_all_n(quad, -100, 2000) == find_all_n_naive(quad, -100, 2000)


@pytest.mark.parametrize("quad, ns", [(q, n) for q, n, _ in DOUBLE_N_ROWS] + SQUARE_ROWS)
def test_known_rows_recovered(quad, ns):
    lo, hi = min(ns) - 10, max(ns) + 10
    found = find_all_n(quad, lo, hi)
    assert set(ns) <= set(found)
    for x in found:
        assert verify_dn(quad, x)


def test_oracle_equivalence_random_quadruples():
    rng = random.Random(2024)
    for _ in range(100):
        quad = set()
        while len(quad) < 4:
            x = rng.randint(-300, 300)
            if x:
                quad.add(x)
        quad = sorted(quad)
        lo = rng.randint(-10**5, 10**5)
        hi = lo + 10**4
        assert find_all_n(quad, lo, hi) == find_all_n_naive(quad, lo, hi)


def test_oracle_equivalence_planted():
    # quadruples with known n's, windows placed around them
    rng = random.Random(7)
    for quad, ns, _ in DOUBLE_N_ROWS[:10]:
        for n in ns:
            lo = n - rng.randint(0, 10**4)
            assert find_all_n(quad, lo, lo + 10**4) == find_all_n_naive(quad, lo, lo + 10**4)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-500, 500).filter(bool), min_size=4, max_size=4, unique=True),
       st.integers(-5000, 5000), st.integers(0, 3000), st.integers(0, 3000))
def test_partition(quad, a, w1, w2):
    c, b = a + w1, a + w1 + w2
    whole = find_all_n(quad, a, b)
    left = find_all_n(quad, a, c)
    right = find_all_n(quad, c + 1, b) if c + 1 <= b else []
    assert whole == left + right
    assert whole == find_all_n_naive(quad, a, b)
    assert whole == sorted(set(whole))
