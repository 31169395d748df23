"""Spectral sets in Z_N: verification, search, and affine canonical forms.

A subset A is spectral when some B of the same size has all its pairwise
differences in the zero set of A; B then indexes an orthogonal family of
characters on A.  The criterion is symmetric, so a valid pair verifies in
both orientations and the verifier checks both.

Searching for a spectrum is a clique problem.  Take the Cayley graph on Z_N
whose connection set is Z_A; spectra of size |A| are exactly the |A|-cliques,
and translation invariance pins 0 into B.  The remaining unit-scaling
symmetry is broken at the first branch level: if any spectrum exists, one
exists whose smallest nonzero element is minimal in its own unit orbit, and
the orbit minimum of g under (Z/N)^* is gcd(g, N).  The search is exact and
deterministic with an explicit node budget, and reports budget exhaustion
separately from a proven absence.

Spectrality is an affine invariant.  Orbits under x -> ux + v with u a unit
give each subset a canonical representative: the orbit element whose sorted
element tuple is lexicographically least.  That representative always
contains 0 and is what the scan harness keys records by.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .groupring import GroupRingElement, ZeroSet, as_modulus, subset, zero_set

__all__ = [
    "AffineMap",
    "SpectralVerdict",
    "SearchResult",
    "BudgetExhausted",
    "affine_image",
    "is_spectral_pair",
    "spectrum_search",
    "enumerate_spectra",
    "canonical_form",
    "affine_orbit",
]

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class AffineMap:
    """x -> scale * x + shift on Z_n, with scale a unit."""

    n: int
    scale: int
    shift: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("modulus must be >= 2")
        if gcd(self.scale % self.n, self.n) != 1:
            raise ValueError(f"scale {self.scale} is not a unit mod {self.n}")

    def __call__(self, g: int) -> int:
        return (self.scale * g + self.shift) % self.n

    def inverse(self) -> AffineMap:
        u = pow(self.scale, -1, self.n)
        return AffineMap(self.n, u, (-u * self.shift) % self.n)


def affine_image(x: GroupRingElement, f: AffineMap) -> GroupRingElement:
    if x.n != f.n:
        raise ValueError(f"map on Z_{f.n} applied to element of Z_{x.n}")
    return x.twist(f.scale).translate(f.shift)


@dataclass(frozen=True)
class SpectralVerdict:
    is_pair: bool
    size_mismatch: bool
    violation: tuple[int, int] | None  # first (b, b') with b - b' outside Z_A


def _pair_ok(
    candidates: tuple[int, ...], zs: ZeroSet
) -> tuple[bool, tuple[int, int] | None]:
    n = zs.modulus.n
    for i in range(len(candidates)):
        for j in range(i + 1, len(candidates)):
            if (candidates[j] - candidates[i]) % n not in zs.members:
                return False, (candidates[j], candidates[i])
    return True, None


def is_spectral_pair(a: GroupRingElement, b: GroupRingElement) -> SpectralVerdict:
    """Exact verification that B is a spectrum for A.

    Requires |A| = |B| and every difference of distinct elements of B to lie
    in Z_A.  The mirrored condition (differences of A inside Z_B) is a known
    equivalent; both are computed and must agree.
    """
    a._check(b)
    if not a.is_set or not b.is_set:
        raise ValueError("spectral pairs are defined for sets")
    if a.is_zero or b.is_zero:
        raise ValueError("spectral pairs are defined for nonempty sets")
    if a.mass != b.mass:
        return SpectralVerdict(False, True, None)
    ok_fwd, viol = _pair_ok(b.support, zero_set(a))
    ok_bwd, _ = _pair_ok(a.support, zero_set(b))
    if ok_fwd != ok_bwd:
        raise AssertionError(
            "orientation asymmetry in spectral verification; this is a bug"
        )
    return SpectralVerdict(ok_fwd, False, viol)


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SearchResult:
    status: str  # found | none | exhausted
    witness: GroupRingElement | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def _rot_left(mask: int, v: int, n: int) -> int:
    v %= n
    return ((mask << v) | (mask >> (n - v))) & ((1 << n) - 1)


def spectrum_search(
    a: GroupRingElement,
    budget: int | None = None,
    zeros: ZeroSet | None = None,
) -> SearchResult:
    """Find a spectrum B containing 0 for A, or prove none exists.

    Branch and bound clique search in ascending element order, so the first
    spectrum found is deterministic.  Every vertex neighborhood has size
    |Z_A|, hence no clique can beat 1 + |Z_A|; that bound doubles as the
    pruning rule.  Returns status "exhausted" with the node count when the
    budget runs out before the question is settled.
    """
    if not a.is_set:
        raise ValueError("spectrum search needs a set")
    if a.is_zero:
        raise ValueError("spectrum search needs a nonempty set")
    budget = DEFAULT_BUDGET if budget is None else budget
    n = a.n
    s = a.mass
    if s == 1:
        return SearchResult("found", subset(a.modulus, [0]), 0)
    zs = zeros if zeros is not None else zero_set(a)
    zmask = zs.mask
    zsize = len(zs)
    if zsize < s - 1:
        return SearchResult("none", None, 0)

    adj = [_rot_left(zmask, v, n) for v in range(n)]
    nodes = 0
    chosen = [0]

    def extend(cand: int) -> bool:
        nonlocal nodes
        need = s - len(chosen)
        if need == 0:
            return True
        while cand:
            if cand.bit_count() < need:
                return False
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted
            chosen.append(v)
            if extend(cand & adj[v]):
                return True
            chosen.pop()
        return False

    # first-level symmetry break: the smallest nonzero element of some
    # spectrum can be assumed orbit minimal, and orbit minima are divisors
    first_candidates = [d for d in range(1, n) if n % d == 0 and (zmask >> d) & 1]
    try:
        for m in first_candidates:
            chosen = [0, m]
            upper = zmask & adj[m] & ~((1 << (m + 1)) - 1)
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted
            if extend(upper):
                return SearchResult("found", subset(a.modulus, sorted(chosen)), nodes)
    except BudgetExhausted:
        return SearchResult("exhausted", None, nodes)
    return SearchResult("none", None, nodes)


def enumerate_spectra(
    a: GroupRingElement,
    zeros: ZeroSet | None = None,
    node_budget: int | None = None,
) -> Iterator[GroupRingElement]:
    """Yield every spectrum B containing 0, in ascending lexicographic order.

    No unit symmetry breaking here: callers get the complete list of cliques
    through 0, one per translation class of spectra.
    """
    if not a.is_set or a.is_zero:
        raise ValueError("enumeration needs a nonempty set")
    n = a.n
    s = a.mass
    if s == 1:
        yield subset(a.modulus, [0])
        return
    zs = zeros if zeros is not None else zero_set(a)
    zmask = zs.mask
    if len(zs) < s - 1:
        return
    adj = [_rot_left(zmask, v, n) for v in range(n)]
    budget = node_budget if node_budget is not None else DEFAULT_BUDGET
    nodes = 0
    chosen = [0]
    out: list[GroupRingElement] = []

    def walk(cand: int) -> Iterator[GroupRingElement]:
        nonlocal nodes
        if len(chosen) == s:
            yield subset(a.modulus, sorted(chosen))
            return
        need = s - len(chosen)
        while cand:
            if cand.bit_count() < need:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(f"enumeration exceeded {budget} nodes")
            chosen.append(v)
            yield from walk(cand & adj[v])
            chosen.pop()

    yield from walk(zmask)


# -- canonical forms under the affine action -------------------------------


def _rev_mask(mask: int, n: int) -> int:
    out = 0
    for g in range(n):
        if (mask >> g) & 1:
            out |= 1 << (n - 1 - g)
    return out


def _best_rotation_key(enc: int, n: int) -> int:
    full = (1 << n) - 1
    best = enc
    for v in range(1, n):
        cand = ((enc >> v) | (enc << (n - v))) & full
        if cand > best:
            best = cand
    return best


def canonical_form(x: GroupRingElement) -> GroupRingElement:
    """Affine-orbit representative with lexicographically least element tuple.

    Encoding a subset S by the integer with bit n-1-g set for each g in S
    makes tuple-lex comparison an integer comparison (smaller tuples encode
    higher).  Shifts act on the encoding as rotations, so the canonical form
    is the bit reversal of the maximum encoding over all unit twists and
    rotations.  The representative contains 0.
    """
    if not x.is_set or x.is_zero:
        raise ValueError("canonical form is defined for nonempty sets")
    n = x.n
    best = 0
    for u in x.modulus.units():
        enc = _rev_mask(x.twist(u).mask, n)
        cand = _best_rotation_key(enc, n)
        if cand > best:
            best = cand
    return subset(x.modulus, [g for g in range(n) if (best >> (n - 1 - g)) & 1])


def affine_orbit(x: GroupRingElement) -> Iterator[GroupRingElement]:
    """Distinct affine images of a subset, in no particular order."""
    seen: set[int] = set()
    for u in x.modulus.units():
        tw = x.twist(u)
        for v in range(x.n):
            img = tw.translate(v)
            m = img.mask
            if m not in seen:
                seen.add(m)
                yield img
