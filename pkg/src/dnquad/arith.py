"""Exact integer primitives: integer square roots, square detection, residues."""

from __future__ import annotations

from math import gcd, isqrt as _isqrt

import numpy as np

__all__ = ["isqrt", "is_square", "is_square_plain", "sqrt_residues", "gcd"]

# Moduli for the residue pre-filter. 64 catches ~81% of non-squares,
# 63 * 65 * 11 catches most of the remainder.
_FILTER_MODULI = (64, 63, 65, 11)
_QR_TABLES = {m: bytes(1 if any((x * x) % m == r for x in range(m)) else 0 for r in range(m))
              for m in _FILTER_MODULI}
_QR64, _QR63, _QR65, _QR11 = (_QR_TABLES[m] for m in _FILTER_MODULI)

BRUTE_FORCE_LIMIT = 10**6


def isqrt(x: int) -> int:
    """Return floor(sqrt(x)) for a nonnegative integer of any size."""
    if x < 0:
        raise ValueError(f"isqrt of negative number {x}")
    return _isqrt(x)


def is_square(x: int) -> int | None:
    """Return the nonnegative root of ``x`` if it is a perfect square, else None.

    Residue tables modulo 64, 63, 65 and 11 reject most non-squares before
    the integer square root is computed.
    """
    if x < 0:
        return None
    if not _QR64[x & 63]:
        return None
    r = x % 45045  # 63 * 65 * 11
    if not (_QR63[r % 63] and _QR65[r % 65] and _QR11[r % 11]):
        return None
    t = _isqrt(x)
    return t if t * t == x else None


def is_square_plain(x: int) -> int | None:
    """Filter-free reference path for :func:`is_square`."""
    if x < 0:
        return None
    t = _isqrt(x)
    return t if t * t == x else None


def _residues_bruteforce(n: int, k: int) -> np.ndarray:
    r = np.arange(k, dtype=np.int64)
    return r[(r * r) % k == n % k]


def sqrt_residues_array(n: int, k: int) -> np.ndarray:
    """Like :func:`sqrt_residues` but returns a sorted int64 array."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    if k < BRUTE_FORCE_LIMIT:
        return _residues_bruteforce(n, k)
    return np.array(sqrt_residues(n, k), dtype=np.int64)


def sqrt_residues(n: int, k: int) -> list[int]:
    """All r in [0, k) with r*r congruent to n modulo k, ascending."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    if k == 1:
        return [0]
    if k < BRUTE_FORCE_LIMIT:
        return _residues_bruteforce(n, k).tolist()
    from sympy.ntheory import sqrt_mod

    roots = sqrt_mod(n % k, k, all_roots=True) or []
    return sorted(int(r) for r in roots)
