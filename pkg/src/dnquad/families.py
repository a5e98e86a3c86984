"""Parametric families of quadruples that are D(n) for two distinct n.

* ``prop1_quadruple``: the two-parameter (v, w) family containing the pair
  ratio -1/7, with closed forms for both n values.
* ``pell_solutions`` / ``pell17_family``: integer members {-1, 7, c, d}
  obtained from solutions of v^2 - 7 w^2 = 2.
* ``dn_family_quadruple``: {a, ak^2-2k-2, a(k+1)^2-2k, a(2k+1)^2-8k-4},
  a D(2a(2k+1)+1)-quadruple.
* ``d0_quadruple``: quadruples of squares (so D(0)) that are also D(n2(r)).
* ``curve_point_check`` and helpers: exact on-curve checks for the
  elliptic curve over Q(r) behind the D(0) family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator

from .arith import is_square
from .model import QuadClass, as_tuple, normalize, verify_dn

__all__ = [
    "DegenerateParametersError",
    "PellSolution",
    "FamilyMember",
    "PROP1_EXCLUDED_RATIOS",
    "prop1_quadruple",
    "pell_solutions",
    "pell17_family",
    "pell17_stream",
    "dn_family_quadruple",
    "d0_quadruple",
    "d0_n2",
    "curve_coefficients",
    "printed_generators",
    "to_short_model",
    "curve_point_check",
    "literal_point_residuals",
    "curve_add",
    "point_to_s",
    "difference_point_s",
    "s_from_difference",
]


class DegenerateParametersError(ValueError):
    """Parameters give a zero or repeated element, or violate a stated exclusion."""


@dataclass(frozen=True)
class PellSolution:
    v: int
    w: int
    index: int


@dataclass(frozen=True)
class FamilyMember:
    raw_quad: tuple[int, ...]
    ns: tuple[int, ...]
    params: dict = field(compare=False)
    normalized: QuadClass


def _check_distinct_nonzero(elements, label) -> None:
    for i, x in enumerate(elements):
        if x == 0:
            raise DegenerateParametersError(f"{label}: element {'abcd'[i]} is zero")
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if elements[i] == elements[j]:
                raise DegenerateParametersError(
                    f"{label}: {'abcd'[i]} = {'abcd'[j]} = {elements[i]}")


def _member(elements, ns, params, label) -> FamilyMember:
    _check_distinct_nonzero(elements, label)
    if len(set(ns)) != len(ns):
        raise DegenerateParametersError(f"{label}: n values coincide ({ns})")
    for n in ns:
        w = verify_dn(elements, n)
        if not w:
            raise AssertionError(f"{label}: closed form fails verification: {w}")
    return FamilyMember(as_tuple(elements), tuple(ns), params, normalize(elements, ns))


# -- (v, w) family -------------------------------------------------------

# v/w = -1 also gives b = d; it is not listed here and is caught by the
# distinctness check after evaluation
PROP1_EXCLUDED_RATIOS = frozenset(Fraction(x) for x in (
    0, 1, 2, -2, 3, 4, -5, 7, -7,
    Fraction(7, 2), Fraction(-7, 2), Fraction(7, 3), Fraction(7, 4), Fraction(-7, 5),
))


def prop1_elements(v: int, w: int) -> tuple[list[int], int, int]:
    """Raw closed forms (a, b, c, d), n1, n2 without any checks."""
    e = -v * v + 7 * w * w
    a = -e * e
    b = 7 * e * e
    c = -(-2 * v * v + v * w + 7 * w * w) * (2 * v * v - 3 * v * w + 7 * w * w)
    d = (v * v - 3 * v * w + 14 * w * w) * (-v * v - v * w + 14 * w * w)
    n1 = 4 * e * e * (2 * v**4 - v**3 * w - 20 * v**2 * w**2 - 7 * v * w**3 + 98 * w**4)
    n2 = 4 * e * e * (2 * v * v - 7 * v * w + 14 * w * w) * (v * v + 7 * w * w)
    return [a, b, c, d], n1, n2


def prop1_quadruple(v: int, w: int) -> FamilyMember:
    """Member of the (v, w) family; D(n1) and D(n2) for the closed-form n1, n2."""
    if w == 0:
        raise DegenerateParametersError("w must be nonzero")
    if gcd(v, w) != 1:
        raise DegenerateParametersError(f"v = {v} and w = {w} are not coprime")
    ratio = Fraction(v, w)
    if ratio in PROP1_EXCLUDED_RATIOS:
        raise DegenerateParametersError(f"v/w = {ratio} is an excluded ratio")
    elements, n1, n2 = prop1_elements(v, w)
    return _member(elements, [n1, n2], {"v": v, "w": w}, f"prop1(v={v}, w={w})")


# -- Pell-driven integer family --------------------------------------------

def pell_solutions(count: int) -> list[PellSolution]:
    """First ``count`` solutions of v^2 - 7w^2 = 2 from the order-2 recurrences."""
    if count < 1:
        raise ValueError("count must be at least 1")
    vs, ws = [3, 3], [-1, 1]
    while len(vs) < count:
        vs.append(16 * vs[-1] - vs[-2])
        ws.append(16 * ws[-1] - ws[-2])
    out = []
    for i in range(count):
        v, w = vs[i], ws[i]
        assert v * v - 7 * w * w == 2, (i, v, w)
        out.append(PellSolution(v, w, i))
    return out


def pell17_family(i: int, sign: int = 1) -> FamilyMember:
    """The (v_i, sign*w_i) member; normalised it has the form {-1, 7, c, d}."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    sol = pell_solutions(i + 1)[i]
    member = prop1_quadruple(sol.v, sign * sol.w)
    params = {"i": i, "sign": sign, "v": sol.v, "w": sign * sol.w}
    return FamilyMember(member.raw_quad, member.ns, params, member.normalized)


def pell17_stream() -> Iterator[FamilyMember]:
    """Distinct valid members in (i, sign) order, skipping excluded ratios and repeats."""
    seen = set()
    i = 0
    while True:
        for sign in (1, -1):
            try:
                member = pell17_family(i, sign)
            except DegenerateParametersError:
                continue
            if member.normalized in seen:
                continue
            seen.add(member.normalized)
            yield member
        i += 1


# -- D(2a(2k+1)+1) family --------------------------------------------------

def dn_family_quadruple(a: int, k: int) -> FamilyMember:
    elements = [a, a * k * k - 2 * k - 2, a * (k + 1) ** 2 - 2 * k, a * (2 * k + 1) ** 2 - 8 * k - 4]
    n = 2 * a * (2 * k + 1) + 1
    return _member(elements, [n], {"a": a, "k": k}, f"dnfam(a={a}, k={k})")


# -- D(0) family -------------------------------------------------------------

def d0_n2(r: int) -> int:
    return (16 * r**10 + 96 * r**9 + 112 * r**8 - 192 * r**7 - 256 * r**6
            + 192 * r**5 + 112 * r**4 - 96 * r**3 + 16 * r**2)


def d0_quadruple(r: int) -> FamilyMember:
    """Four squares (hence D(0)) that also form a D(n2(r))-quadruple."""
    elements = [4 * r**4 * (r + 2) ** 2, (r**3 - 4 * r + 1) ** 2,
                (r**3 + 4 * r * r - 1) ** 2, 4 * (2 * r - 1) ** 2]
    label = f"d0(r={r})"
    _check_distinct_nonzero(elements, label)
    assert all(is_square(x) is not None for x in elements)
    return _member(elements, [0, d0_n2(r)], {"r": r}, label)


# -- elliptic curve over Q(r) -----------------------------------------------
#
# The condition "ad is a square" is the quartic Q(s) = (r-1)^2 s^4 + ...
# Mapping u = 1/s gives a quartic with square constant term, whose standard
# cubic model is  y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
# Completing the square and moving the rational 2-torsion point to 0 gives
# the short model  Y^2 = X^3 + A X^2 + B X  via
#     X = x - x0,  Y = y + (a1 x + a3) / 2.
# The printed generators are coordinates on the long model.

def _quartic_coefficients(r: int) -> tuple[int, int, int, int, int]:
    """Coefficients of Q(s), from s^4 down to s^0."""
    return (
        (r - 1) ** 2,
        8 * r**4 + 8 * r**3 - 16 * r,
        22 * r**6 + 68 * r**5 + 54 * r**4 - 40 * r**3 - 24 * r**2 + 32 * r + 32,
        24 * r**8 + 88 * r**7 - 336 * r**5 - 448 * r**4 - 192 * r**3,
        9 * r**10 + 30 * r**9 - 39 * r**8 - 248 * r**7 - 200 * r**6
        + 352 * r**5 + 752 * r**4 + 512 * r**3 + 128 * r**2,
    )


def curve_coefficients(r: int) -> tuple[int, int]:
    """(A, B) of Y^2 = X^3 + A X^2 + B X."""
    A = 4 * r**6 + 56 * r**5 + 84 * r**4 + 80 * r**3 + 48 * r**2 - 64 * r - 64
    B = (-1024 * r**9 - 2048 * r**8 + 1024 * r**7 + 5120 * r**6 + 3072 * r**5
         - 3072 * r**4 - 5120 * r**3 - 1024 * r**2 + 2048 * r + 1024)
    return A, B


def _long_model(r: int) -> dict:
    q = r - 1
    _, c4_3, c4_2, c4_1, c4_0 = _quartic_coefficients(r)
    a1 = 8 * r * (r * r + 2 * r + 2)  # = c4_3 / q
    a2 = c4_2 - a1 * a1 // 4
    a3 = 2 * q * c4_1
    a4 = -4 * q * q * c4_0
    return {"a1": a1, "a2": a2, "a3": a3, "a4": a4, "a6": a2 * a4,
            "x0": -2 * (r - 1) * (3 * r**5 + 5 * r**4 - 20 * r**2 - 32 * r - 16)}


def printed_generators(r: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """P1, P2 as printed (long-model coordinates)."""
    p1 = (-6 * r**6 - 4 * r**5 + 74 * r**4 + 168 * r**3 + 88 * r**2 - 32 * r - 32,
          -256 * r**7 - 1792 * r**6 - 4352 * r**5 - 4352 * r**4 - 1024 * r**3 + 1024 * r**2 + 512 * r)
    p2 = (-4 * r**5 + 10 * r**4 + 8 * r**3 + 24 * r**2 - 6 * r**6 - 32 * r,
          -320 * r**3 + 128 * r + 448 * r**6 - 512 * r**4 - 64 * r**2 + 128 * r**7 + 192 * r**5)
    return p1, p2


def on_long_model(point, r: int) -> bool:
    m = _long_model(r)
    x, y = point
    return (y * y + m["a1"] * x * y + m["a3"] * y
            == x**3 + m["a2"] * x * x + m["a4"] * x + m["a6"])


def to_short_model(point, r: int) -> tuple[int, int]:
    """Map a long-model point to Y^2 = X^3 + A X^2 + B X."""
    m = _long_model(r)
    x, y = point
    return x - m["x0"], y + (m["a1"] * x + m["a3"]) // 2


def _on_short(point, A, B) -> bool:
    X, Y = point
    return Y * Y == X**3 + A * X * X + B * X


def curve_point_check(r: int) -> bool:
    """[0, 0], P1 and P2 all lie on Y^2 = X^3 + A(r) X^2 + B(r) X (exact)."""
    A, B = curve_coefficients(r)
    points = [(0, 0)] + [to_short_model(p, r) for p in printed_generators(r)]
    return all(_on_short(p, A, B) for p in points)


def literal_point_residuals(r: int) -> tuple[int, int]:
    """Y^2 - (X^3 + A X^2 + B X) with the printed coordinates substituted unmapped."""
    A, B = curve_coefficients(r)
    return tuple(y * y - (x**3 + A * x * x + B * x) for x, y in printed_generators(r))


def curve_add(P, Q, r: int):
    """Group law on the short model; None is the point at infinity."""
    A, B = curve_coefficients(r)
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = map(Fraction, P)
    x2, y2 = map(Fraction, Q)
    if x1 == x2 and y1 == -y2:
        return None
    if x1 == x2:
        lam = (3 * x1 * x1 + 2 * A * x1 + B) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - A - x1 - x2
    return x3, -(y1 + lam * (x3 - x1))


def point_to_s(point, r: int) -> Fraction | None:
    """The s value on the quartic for a short-model point (None if at s = infinity)."""
    if r == 1:
        raise ValueError("the quartic degenerates at r = 1")
    m = _long_model(r)
    q = r - 1
    _, c3, c2, _, _ = _quartic_coefficients(r)
    X, Y = map(Fraction, point)
    x = X + m["x0"]
    y = Y - (m["a1"] * x + m["a3"]) / 2
    # inverse of the quartic-to-cubic map with u = 1/s
    u = (2 * q * (x + c2) - Fraction(c3 * c3, 2 * q)) / y
    return None if u == 0 else 1 / u


def s_from_difference(r: int) -> Fraction:
    """Closed form of the s coordinate of P2 - P1."""
    return Fraction(-r * (3 * r**3 + 9 * r**2 + 7 * r + 2), r * r + r - 1)


def difference_point_s(r: int) -> Fraction | None:
    """s obtained from P2 - P1 on the short model."""
    p1, p2 = (to_short_model(p, r) for p in printed_generators(r))
    diff = curve_add(p2, (p1[0], -p1[1]), r)
    return None if diff is None else point_to_s(diff, r)
