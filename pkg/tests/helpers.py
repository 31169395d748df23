"""Shared oracles for the test suite.

Everything here is deliberately independent of the package's exact routines:
high-precision numerics via mpmath, reference polynomials via sympy, and
plain brute-force enumerations.  Expected values in the tests were frozen
from these oracles, and the equivalence tests drive both sides on random
inputs.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd

import mpmath

DPS = 60
ZERO_TOL = mpmath.mpf("1e-9")


@lru_cache(maxsize=None)
def _roots(n: int) -> tuple:
    with mpmath.workdps(DPS):
        return tuple(mpmath.expjpi(mpmath.mpf(2 * k) / n) for k in range(n))


def char_sum_numeric(coeffs, n: int, g: int):
    """sum_a coeffs[a] * exp(2 pi i a g / n) at DPS decimal digits."""
    roots = _roots(n)
    with mpmath.workdps(DPS):
        total = mpmath.mpc(0)
        for a, c in enumerate(coeffs):
            if c:
                total += c * roots[(a * g) % n]
        return total


def is_char_zero_numeric(coeffs, n: int, g: int) -> bool:
    """Declare zero when |sum| < 1e-9 * l1-norm of the coefficients."""
    scale = sum(abs(c) for c in coeffs)
    if scale == 0:
        return True
    with mpmath.workdps(DPS):
        return abs(char_sum_numeric(coeffs, n, g)) < ZERO_TOL * scale


def brute_difference_counts(elems, n: int) -> list[int]:
    counts = [0] * n
    for a in elems:
        for b in elems:
            counts[(a - b) % n] += 1
    return counts


def brute_zero_set(coeffs, n: int) -> set[int]:
    """Member-by-member numeric zero set; no divisor-class shortcut."""
    return {g for g in range(1, n) if is_char_zero_numeric(coeffs, n, g)}


def brute_spectrum_exists(size: int, zero_members, n: int) -> bool:
    """Is there B containing 0 with |B| = size and all differences in Z_A?

    Searching B up to translation is enough: differences are translation
    invariant, so some translate of any spectrum contains 0.
    """
    if size == 1:
        return True
    zs = set(zero_members)
    for rest in itertools.combinations(sorted(zs), size - 1):
        cand = (0,) + rest
        if all(
            (cand[i] - cand[j]) % n in zs
            for i in range(size)
            for j in range(i + 1, size)
        ):
            return True
    return False


def brute_tiles(elems, n: int) -> tuple[int, ...] | None:
    """Smallest complement T containing 0 with A + T an exact cover, else None."""
    elems = sorted(elems)
    s = len(elems)
    if s == 0 or n % s:
        return None
    k = n // s
    if k == 1:
        return (0,) if sorted(elems) == list(range(n)) else None
    for rest in itertools.combinations(range(1, n), k - 1):
        t_set = (0,) + rest
        seen = set()
        ok = True
        for t in t_set:
            for a in elems:
                v = (a + t) % n
                if v in seen:
                    ok = False
                    break
                seen.add(v)
            if not ok:
                break
        if ok:
            return t_set
    return None


def affine_orbit_masks(elems, n: int) -> set[int]:
    out = set()
    for u in range(1, n):
        if gcd(u, n) != 1:
            continue
        for v in range(n):
            mask = 0
            for g in elems:
                mask |= 1 << ((u * g + v) % n)
            out.add(mask)
    return out


def canonical_by_enumeration(elems, n: int) -> tuple[int, ...]:
    """Affine-orbit representative with the lexicographically least sorted tuple."""
    best = None
    for mask in affine_orbit_masks(elems, n):
        tup = tuple(g for g in range(n) if mask >> g & 1)
        if best is None or tup < best:
            best = tup
    return best
