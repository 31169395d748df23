"""Vectorized batch kernels for whole-modulus scans.

Subsets of Z_n (n <= 60) travel as uint64 bit masks in numpy arrays, so the
per-class overhead of a scan is a handful of elementwise passes instead of a
Python loop.  Three families of kernels live here:

* canonicalization: the affine-orbit representative of every mask in a batch,
  bit-for-bit identical to canonical_form, via per-unit permutation tables
  acting on 10-bit chunks;
* zero-set classes: which divisor classes vanish for every mask in a batch,
  via per-class fold masks (popcounts of congruence strata) and small integer
  reduction matrices mod the relevant cyclotomic polynomial;
* verdicts: spectrum and tiling-complement status per canonical class, with
  the searches' own entry rejections applied vectorized first so the Python
  searches only ever run on masks that get past them.  The rejections mirror
  the search internals exactly, so a batch verdict equals the API verdict,
  node counts included.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclotomic import euler_phi, reduce_mod_cyclotomic
from .groupring import GroupRingElement, Modulus, ZeroSet, subset
from .spectral import canonical_form  # noqa: F401  (re-exported for callers)
from .spectral import spectrum_search
from .tiling import complement_search

__all__ = [
    "MAX_SCAN_N",
    "ModulusTables",
    "modulus_tables",
    "encode_batch",
    "rotation_max",
    "canonicalize_batch",
    "canonical_filter",
    "zero_class_matrix",
    "masks_to_sets",
    "zero_set_from_bits",
    "batch_verdicts",
    "BatchVerdict",
]

MAX_SCAN_N = 60
_CHUNK = 10  # bits per permutation-table chunk


@dataclass(frozen=True)
class ModulusTables:
    """Precomputed per-modulus data for the batch kernels.

    enc_tables[u] maps each 10-bit chunk of a mask to its contribution to the
    reversed encoding of the unit-twisted set (bit g of the mask lands on bit
    n-1-(u*g mod n) of the encoding).  rev_tables is the same gadget for the
    plain bit reversal used to decode an encoding back into a mask.
    """

    n: int
    modulus: Modulus
    units: tuple[int, ...]
    n_chunks: int
    full: int
    enc_tables: dict  # unit -> list of (1024,) uint64 arrays, one per chunk
    rev_tables: tuple  # n_chunks arrays decoding an encoding to a mask
    divisors: tuple[int, ...]  # proper divisors e of n (classes gcd(g,n)=e)
    fold_masks: dict  # e -> (d,) uint64, bits of residues i mod d, d = n//e
    reductions: dict  # e -> (d, phi(d)) int64, x^i mod Phi_d by rows
    class_members: dict  # e -> tuple of g in [1,n) with gcd(g,n)=e
    class_sizes: np.ndarray  # aligned with divisors, = phi(n//e)


def _perm_chunk_tables(n: int, targets: list[int]) -> tuple:
    """Chunk tables for the bit permutation g -> targets[g]."""
    n_chunks = (n + _CHUNK - 1) // _CHUNK
    tables = []
    for c in range(n_chunks):
        table = np.zeros(1 << _CHUNK, dtype=np.uint64)
        vals = np.arange(1 << _CHUNK, dtype=np.uint64)
        for b in range(_CHUNK):
            g = c * _CHUNK + b
            if g >= n:
                break
            bit = np.uint64(1) << np.uint64(targets[g])
            table |= ((vals >> np.uint64(b)) & np.uint64(1)) * bit
        tables.append(table)
    return tuple(tables)


@lru_cache(maxsize=None)
def modulus_tables(n: int) -> ModulusTables:
    if not 2 <= n <= MAX_SCAN_N:
        raise ValueError(f"batch kernels support 2 <= n <= {MAX_SCAN_N}, got {n}")
    m = Modulus(n)
    units = tuple(m.units())
    enc_tables = {
        u: _perm_chunk_tables(n, [n - 1 - (u * g) % n for g in range(n)])
        for u in units
    }
    rev_tables = _perm_chunk_tables(n, [n - 1 - g for g in range(n)])

    divisors = tuple(e for e in m.divisors() if e < n)
    fold_masks = {}
    reductions = {}
    class_members = {}
    sizes = []
    for e in divisors:
        d = n // e
        fm = np.zeros(d, dtype=np.uint64)
        for g in range(n):
            fm[g % d] |= np.uint64(1) << np.uint64(g)
        fold_masks[e] = fm
        rows = np.zeros((d, euler_phi(d)), dtype=np.int64)
        for i in range(d):
            mono = [0] * i + [1]
            reduced = reduce_mod_cyclotomic(mono, d)
            rows[i, : len(reduced)] = reduced
        reductions[e] = rows
        class_members[e] = tuple(g for g in range(1, n) if gcd(g, n) == e)
        sizes.append(len(class_members[e]))
    return ModulusTables(
        n=n,
        modulus=m,
        units=units,
        n_chunks=(n + _CHUNK - 1) // _CHUNK,
        full=(1 << n) - 1,
        enc_tables=enc_tables,
        rev_tables=rev_tables,
        divisors=divisors,
        fold_masks=fold_masks,
        reductions=reductions,
        class_members=class_members,
        class_sizes=np.array(sizes, dtype=np.int64),
    )


def _apply_chunks(masks: np.ndarray, tables: tuple) -> np.ndarray:
    out = tables[0][masks & np.uint64((1 << _CHUNK) - 1)]
    for c in range(1, len(tables)):
        idx = (masks >> np.uint64(c * _CHUNK)) & np.uint64((1 << _CHUNK) - 1)
        out |= tables[c][idx]
    return out


def encode_batch(masks: np.ndarray, u: int, t: ModulusTables) -> np.ndarray:
    """Reversed encodings of the unit-u twists of a mask batch."""
    return _apply_chunks(masks, t.enc_tables[u])


def rotation_max(enc: np.ndarray, n: int) -> np.ndarray:
    """Elementwise max of an encoding batch over all n rotations."""
    full = np.uint64((1 << n) - 1)
    best = enc.copy()
    for v in range(1, n):
        cand = ((enc >> np.uint64(v)) | (enc << np.uint64(n - v))) & full
        np.maximum(best, cand, out=best)
    return best


def canonicalize_batch(masks: np.ndarray, t: ModulusTables) -> np.ndarray:
    """canonical_form of every mask in the batch, as masks."""
    best = rotation_max(encode_batch(masks, 1, t), t.n)
    for u in t.units[1:]:
        np.maximum(best, rotation_max(encode_batch(masks, u, t), t.n), out=best)
    return _apply_chunks(best, t.rev_tables)


def canonical_filter(masks: np.ndarray, t: ModulusTables) -> np.ndarray:
    """Boolean mask of batch entries that already are their canonical form.

    A mask is canonical exactly when its own reversed encoding attains the
    orbit maximum.  Rotations alone eliminate all but ~1/n of a batch, so the
    all-units pass only runs on that remainder.
    """
    enc1 = encode_batch(masks, 1, t)
    keep = enc1 == rotation_max(enc1, t.n)
    if not keep.any():
        return keep
    idx = np.nonzero(keep)[0]
    sub = masks[idx]
    best = enc1[idx].copy()
    for u in t.units[1:]:
        np.maximum(best, rotation_max(encode_batch(sub, u, t), t.n), out=best)
    keep2 = enc1[idx] == best
    out = np.zeros(len(masks), dtype=bool)
    out[idx[keep2]] = True
    return out


def zero_class_matrix(masks: np.ndarray, t: ModulusTables) -> tuple:
    """Vanishing divisor classes for every mask in the batch.

    Returns (zbits, zsize): zbits has shape (len(divisors), batch) with
    zbits[j, i] true when class divisors[j] lies in the zero set of mask i,
    and zsize[i] = |Z_{mask i}| as an element count.
    """
    b = len(masks)
    zbits = np.zeros((len(t.divisors), b), dtype=bool)
    zsize = np.zeros(b, dtype=np.int64)
    for j, e in enumerate(t.divisors):
        fm = t.fold_masks[e]
        d = len(fm)
        counts = np.empty((b, d), dtype=np.int64)
        for i in range(d):
            counts[:, i] = np.bitwise_count(masks & fm[i])
        red = counts @ t.reductions[e]
        hit = (red == 0).all(axis=1)
        zbits[j] = hit
        zsize += hit * t.class_sizes[j]
    return zbits, zsize


def masks_to_sets(masks: np.ndarray, t: ModulusTables) -> list[GroupRingElement]:
    n = t.n
    return [
        subset(t.modulus, [g for g in range(n) if (int(m) >> g) & 1]) for m in masks
    ]


def zero_set_from_bits(bits: np.ndarray, t: ModulusTables) -> ZeroSet:
    """Assemble a ZeroSet from one column of zero_class_matrix output."""
    members: set[int] = set()
    classes: set[int] = set()
    for j, e in enumerate(t.divisors):
        if bits[j]:
            classes.add(e)
            members.update(t.class_members[e])
    return ZeroSet(t.modulus, frozenset(members), frozenset(classes))


@dataclass(frozen=True)
class BatchVerdict:
    """Per-class scan outcome: both searches' status and node counts."""

    mask: int
    size: int
    has_spectrum: str  # yes | no | inconclusive
    tiles: str
    spectrum_nodes: int
    tile_nodes: int
    spectrum_witness: tuple[int, ...] | None
    tile_witness: tuple[int, ...] | None


_STATUS = {"found": "yes", "none": "no", "exhausted": "inconclusive"}


def batch_verdicts(
    masks: np.ndarray, t: ModulusTables, budget: int
) -> list[BatchVerdict]:
    """Run both searches over a batch of canonical masks.

    The two entry rejections (zero set too small to host a spectrum-sized
    clique; set size not dividing n) are evaluated for the whole batch first;
    they mirror the searches' own first checks, so skipping the call changes
    nothing, node counts included.
    """
    n = t.n
    pc = np.bitwise_count(masks).astype(np.int64)
    zbits, zsize = zero_class_matrix(masks, t)
    need_spec = zsize >= pc - 1
    need_tile = (n % pc) == 0
    out = []
    for i, m in enumerate(masks):
        m = int(m)
        s = int(pc[i])
        if need_spec[i]:
            a = subset(t.modulus, [g for g in range(n) if (m >> g) & 1])
            zs = zero_set_from_bits(zbits[:, i], t)
            res = spectrum_search(a, budget=budget, zeros=zs)
            spec, snodes = _STATUS[res.status], res.nodes
            switness = res.witness.support if res.witness is not None else None
        else:
            a = None
            spec, snodes, switness = "no", 0, None
        if need_tile[i]:
            if a is None:
                a = subset(t.modulus, [g for g in range(n) if (m >> g) & 1])
            res = complement_search(a, budget=budget)
            tile, tnodes = _STATUS[res.status], res.nodes
            twitness = res.witness.support if res.witness is not None else None
        else:
            tile, tnodes, twitness = "no", 0, None
        out.append(
            BatchVerdict(m, s, spec, tile, snodes, tnodes, switness, twitness)
        )
    return out
