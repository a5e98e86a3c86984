"""All x in a window making a quadruple a D(x)-quadruple.

Only x of the form s^2 - p can work, where p is the largest pairwise
product, so s is walked instead of x.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .arith import is_square, isqrt
from .model import as_tuple

__all__ = ["find_all_n", "find_all_n_naive"]


def find_all_n(quad: Iterable[int], x_min: int, x_max: int, *,
               exclude_zero: bool = False) -> list[int]:
    """Sorted list of every x in [x_min, x_max] such that e*f + x is a square for all pairs."""
    t = as_tuple(quad)
    if x_min > x_max:
        raise ValueError(f"empty window [{x_min}, {x_max}]")
    products = sorted((e * f for e, f in combinations(t, 2)), reverse=True)
    if not products:
        return [x for x in range(x_min, x_max + 1) if not (exclude_zero and x == 0)]
    p, rest = products[0], products[1:]
    if p + x_max < 0:
        return []
    s = isqrt(max(0, p + x_min))
    if s * s < p + x_min:
        s += 1
    found = []
    while True:
        x = s * s - p
        if x > x_max:
            break
        if all(is_square(q + x) is not None for q in rest):
            if not (exclude_zero and x == 0):
                found.append(x)
        s += 1
    return found


def find_all_n_naive(quad: Iterable[int], x_min: int, x_max: int) -> list[int]:
    """Reference: test every x in the window directly."""
    t = as_tuple(quad)
    out = []
    for x in range(x_min, x_max + 1):
        ok = True
        for e, f in combinations(t, 2):
            v = e * f + x
            if v < 0 or isqrt(v) ** 2 != v:
                ok = False
                break
        if ok:
            out.append(x)
    return out
