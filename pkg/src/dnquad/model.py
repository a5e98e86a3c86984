"""D(n)-tuples: verification, scaling equivalence and canonical representatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .arith import is_square

__all__ = [
    "MalformedTupleError",
    "NotIntegralError",
    "DnWitness",
    "DnFailure",
    "QuadClass",
    "as_tuple",
    "verify_dn",
    "is_dn",
    "scale",
    "normalize",
    "equivalent",
]


class MalformedTupleError(ValueError):
    """A tuple has a zero or repeated element."""


class NotIntegralError(ValueError):
    """Scaling produced a non-integer element or n."""


def as_tuple(elements: Iterable[int]) -> tuple[int, ...]:
    """Validate and sort: elements must be distinct nonzero integers."""
    xs = [int(x) for x in elements]
    if any(x == 0 for x in xs):
        raise MalformedTupleError(f"tuple {xs} contains zero")
    if len(set(xs)) != len(xs):
        raise MalformedTupleError(f"tuple {xs} has repeated elements")
    return tuple(sorted(xs))


@dataclass(frozen=True)
class DnWitness:
    tuple: tuple[int, ...]
    n: int
    roots: tuple[tuple[int, int, int], ...]  # (i, j, root) for i < j

    def __bool__(self) -> bool:
        return True

    def root_values(self) -> list[int]:
        return [t for _, _, t in self.roots]


@dataclass(frozen=True)
class DnFailure:
    """First pair (in sorted-pair order) whose product plus n is not a square."""

    tuple: tuple[int, ...]
    n: int
    pair: tuple[int, int]
    value: int

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        i, j = self.pair
        return (f"{self.tuple[i]}*{self.tuple[j]} + {self.n} = {self.value} "
                f"is not a perfect square")


def verify_dn(elements: Iterable[int], n: int) -> DnWitness | DnFailure:
    """Check that every pairwise product plus ``n`` is a perfect square.

    Returns a :class:`DnWitness` with all C(m, 2) roots, or a falsy
    :class:`DnFailure` naming the first failing pair. Raises
    :class:`MalformedTupleError` for zero or repeated elements.
    """
    t = as_tuple(elements)
    roots = []
    for i, j in combinations(range(len(t)), 2):
        value = t[i] * t[j] + n
        root = is_square(value)
        if root is None:
            return DnFailure(t, n, (i, j), value)
        roots.append((i, j, root))
    return DnWitness(t, n, tuple(roots))


def is_dn(elements: Iterable[int], n: int) -> bool:
    return bool(verify_dn(elements, n))


def _as_fraction(u) -> Fraction:
    return u if isinstance(u, Fraction) else Fraction(u)


def scale(elements: Iterable[int], ns: Iterable[int], u) -> tuple[tuple[int, ...], list[int]]:
    """Multiply elements by ``u`` and each n by ``u**2``; all results must be integers."""
    u = _as_fraction(u)
    if u == 0:
        raise ValueError("scale factor must be nonzero")
    t = as_tuple(elements)
    out = []
    for x in t:
        y = x * u
        if y.denominator != 1:
            raise NotIntegralError(f"element {x} * {u} = {y} is not an integer")
        out.append(int(y))
    new_ns = []
    for n in ns:
        m = n * u * u
        if m.denominator != 1:
            raise NotIntegralError(f"n = {n} * ({u})^2 = {m} is not an integer")
        new_ns.append(int(m))
    return as_tuple(out), new_ns


@dataclass(frozen=True)
class QuadClass:
    quad: tuple[int, ...]
    ns: tuple[int, ...] = field(default=())


def _reducing_factor(elements: Sequence[int], ns: Sequence[int]) -> int:
    """Largest g with g | every element and g^2 | every n."""
    g_el = 0
    for x in elements:
        g_el = gcd(g_el, x)
    g_n = 0
    for n in ns:
        g_n = gcd(g_n, n)
    if g_n == 0:
        return g_el
    h = gcd(g_el, g_n)
    if h == 1:
        return 1
    from sympy import factorint

    g = 1
    for p, e in factorint(h).items():
        g *= p ** min(e, _valuation(g_n, p) // 2)
    return g


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _orientation_key(xs: Iterable[int]) -> list[int]:
    return sorted(xs, key=lambda x: (-abs(x), -x))


def normalize(elements: Iterable[int], ns: Iterable[int] = ()) -> QuadClass:
    """Canonical representative of the scaling class of (elements, ns).

    Divides out the largest g with g | elements and g^2 | ns, then flips the
    global sign so the element of largest magnitude is positive (ties broken
    by comparing the two orientations ordered by decreasing magnitude).
    """
    t = as_tuple(elements)
    ns = sorted(set(int(n) for n in ns))
    g = _reducing_factor(t, ns)
    if g > 1:
        t = tuple(x // g for x in t)
        ns = [n // (g * g) for n in ns]
    neg = tuple(-x for x in t)
    if _orientation_key(neg) > _orientation_key(t):
        t = neg
    return QuadClass(tuple(sorted(t)), tuple(ns))


def equivalent(a: tuple[Iterable[int], Iterable[int]], b: tuple[Iterable[int], Iterable[int]]) -> bool:
    """True when both (tuple, n-set) pairs have the same canonical representative."""
    return normalize(*a) == normalize(*b)
