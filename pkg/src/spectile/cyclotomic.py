"""Exact cyclotomic polynomial arithmetic over the integers.

The d-th cyclotomic polynomial Phi_d is the minimal polynomial of a primitive
d-th root of unity.  It is computed here by exact division: Phi_d equals
(x^d - 1) divided by the product of Phi_e over proper divisors e of d.  All
coefficients are plain Python integers, so nothing ever rounds or overflows
and equality tests are exact.

Two consumers drive the design.  Character values of group ring elements are
residues modulo Phi_d, represented by :class:`CyclotomicInteger`.  Vanishing
sums of p^n-th roots of unity admit a combinatorial test
(:func:`prime_power_vanishing`): the coefficient vector must be constant on
residue classes mod p^(n-1).  Both routes are kept, and the test suite pits
them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import divisors, isprime, totient

__all__ = [
    "CyclotomicPoly",
    "CyclotomicInteger",
    "cyclotomic",
    "reduce_mod_cyclotomic",
    "prime_power_vanishing",
    "euler_phi",
]


def euler_phi(n: int) -> int:
    return int(totient(n))


@dataclass(frozen=True)
class CyclotomicPoly:
    """Phi_order, ascending integer coefficients, monic of degree phi(order)."""

    order: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # Long division by a monic divisor; remainder must vanish.
    assert den[-1] == 1
    out = [0] * (len(num) - len(den) + 1)
    work = list(num)
    for i in range(len(work) - 1, len(den) - 2, -1):
        c = work[i]
        if c:
            out[i - len(den) + 1] = c
            for j, dj in enumerate(den):
                work[i - len(den) + 1 + j] -= c * dj
    if any(work):
        raise ArithmeticError("division was not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic(order: int) -> CyclotomicPoly:
    """Compute Phi_order exactly.

    Starts from x^order - 1 and divides out Phi_e for every proper divisor e,
    recursing through the cache.  Integer arithmetic throughout.
    """
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    f = [0] * (order + 1)
    f[0] = -1
    f[order] = 1
    for e in divisors(order):
        if e < order:
            f = _exact_div(f, cyclotomic(e).coeffs)
    return CyclotomicPoly(order, tuple(f))


def reduce_mod_cyclotomic(coeffs: Sequence[int], order: int) -> tuple[int, ...]:
    """Reduce an integer polynomial modulo Phi_order.

    Returns the residue as a coefficient tuple of length phi(order), exact
    because Phi_order is monic.
    """
    phi = cyclotomic(order).coeffs
    k = len(phi) - 1
    work = list(coeffs)
    if len(work) < k:
        work.extend([0] * (k - len(work)))
    for i in range(len(work) - 1, k - 1, -1):
        c = work[i]
        if c:
            base = i - k
            for j in range(k):
                work[base + j] -= c * phi[j]
            work[i] = 0
    return tuple(work[:k])


@dataclass(frozen=True)
class CyclotomicInteger:
    """An element of Z[x]/Phi_order, i.e. an algebraic integer in Q(zeta_order).

    The residue tuple has length phi(order).  Arithmetic is exact; mixing
    different orders is an error rather than an implicit embedding.
    """

    order: int
    residue: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.residue) != euler_phi(self.order):
            raise ValueError(
                f"residue length {len(self.residue)} != phi({self.order})"
            )

    @classmethod
    def from_coeffs(cls, order: int, coeffs: Sequence[int]) -> CyclotomicInteger:
        return cls(order, reduce_mod_cyclotomic(coeffs, order))

    @classmethod
    def zero(cls, order: int) -> CyclotomicInteger:
        return cls(order, (0,) * euler_phi(order))

    @property
    def is_zero(self) -> bool:
        return not any(self.residue)

    def _check(self, other: CyclotomicInteger) -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} != {other.order}")

    def __add__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        self._check(other)
        return CyclotomicInteger(
            self.order, tuple(a + b for a, b in zip(self.residue, other.residue))
        )

    def __sub__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        self._check(other)
        return CyclotomicInteger(
            self.order, tuple(a - b for a, b in zip(self.residue, other.residue))
        )

    def __neg__(self) -> CyclotomicInteger:
        return CyclotomicInteger(self.order, tuple(-a for a in self.residue))

    def scale(self, k: int) -> CyclotomicInteger:
        return CyclotomicInteger(self.order, tuple(k * a for a in self.residue))

    def __rmul__(self, k: int) -> CyclotomicInteger:
        if not isinstance(k, int):
            return NotImplemented
        return self.scale(k)

    def __mul__(self, other: CyclotomicInteger | int) -> CyclotomicInteger:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        prod = [0] * (2 * len(self.residue))
        for i, a in enumerate(self.residue):
            if a:
                for j, b in enumerate(other.residue):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicInteger.from_coeffs(self.order, prod)


def prime_power_vanishing(values: Sequence[int], p: int, n: int) -> bool:
    """Decide whether sum_i values[i] * zeta^i vanishes, zeta primitive p^n-th.

    A rational integer combination of p^n-th roots of unity vanishes exactly
    when the coefficient vector is constant on residue classes mod p^(n-1):
    the sum collapses to blocks of the form zeta^j * (1 + eta + ... + eta^(p-1))
    with eta of order p.  This is the fast route; the generic route reduces the
    polynomial modulo Phi_{p^n}.  Both must agree.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if p < 2 or not isprime(p):
        raise ValueError(f"p must be prime, got {p}")
    size = p**n
    if len(values) != size:
        raise ValueError(f"expected {size} coefficients, got {len(values)}")
    block = p ** (n - 1)
    for base in range(block):
        first = values[base]
        for t in range(1, p):
            if values[base + t * block] != first:
                return False
    return True
