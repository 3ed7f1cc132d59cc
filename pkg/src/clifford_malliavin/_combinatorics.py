"""Cached index tables for subsets of slots.

A strictly increasing index tuple is stored as a bitmask (slot ``k`` -> bit ``k-1``).
Within one degree the canonical order is by increasing mask value, so lookups are a
``searchsorted``.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np


def popcount(x):
    return np.bitwise_count(np.asarray(x, dtype=np.int64)).astype(np.int64)


@lru_cache(maxsize=None)
def masks(d: int, n: int) -> np.ndarray:
    if n < 0 or n > d:
        return np.zeros(0, dtype=np.int64)
    out = [sum(1 << i for i in c) for c in itertools.combinations(range(d), n)]
    arr = np.array(sorted(out), dtype=np.int64)
    arr.flags.writeable = False
    return arr


def size(d: int, n: int) -> int:
    return math.comb(d, n) if 0 <= n <= d else 0


def index_of(d: int, n: int, mask) -> np.ndarray:
    table = masks(d, n)
    mask = np.asarray(mask, dtype=np.int64)
    if mask.size == 0:
        return np.zeros(mask.shape, dtype=np.int64)
    idx = np.searchsorted(table, mask)
    if np.any(idx >= len(table)) or np.any(table[np.minimum(idx, len(table) - 1)] != mask):
        raise KeyError("mask not present in the degree table")
    return idx


def mask_of(slots) -> int:
    """Bitmask of 0-based slot indices."""
    m = 0
    for s in slots:
        m |= 1 << int(s)
    return m


def slots_of(mask: int) -> tuple[int, ...]:
    """0-based slot indices of a mask, increasing."""
    out = []
    i = 0
    mask = int(mask)
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def combo_array(d: int, n: int) -> np.ndarray:
    """``(C(d,n), n)`` array of 0-based increasing index tuples in canonical order."""
    rows = [slots_of(m) for m in masks(d, n)]
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=None)
def permutations(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All permutations of ``range(n)`` with their signs."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    signs = np.array([_perm_sign(p) for p in perms], dtype=np.float64)
    perms.flags.writeable = False
    signs.flags.writeable = False
    return perms, signs


def _perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def inversions(a, b, d: int) -> np.ndarray:
    """Number of pairs ``(x, y)`` with ``x`` in ``a``, ``y`` in ``b`` and ``x > y``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    total = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for bit in range(d):
        total += ((b >> bit) & 1) * popcount(a >> (bit + 1))
    return total


@lru_cache(maxsize=None)
def contraction_table(d: int, p: int, q: int) -> dict[int, tuple[np.ndarray, ...]]:
    """Coefficient-level table for the antisymmetrized contraction of wedge basis elements.

    For basis elements ``e_S`` (degree p) and ``e_T`` (degree q) the contraction over
    ``r`` variables survives only when ``r == |S & T|``; the shared set ``U`` is moved
    to the back of ``S`` in reversed order and to the front of ``T``. Returns, per
    ``r``, arrays ``(i, j, out, sign)``; the weight ``r!(p-r)!(q-r)!/(p!q!)`` is applied
    by the caller.
    """
    S = masks(d, p)[:, None]
    T = masks(d, q)[None, :]
    U = S & T
    r_all = popcount(U)
    A = S & ~U
    B = T & ~U
    exponent = (r_all * (r_all - 1)) // 2 + inversions(A, U, d) + inversions(U, B, d) + inversions(A, B, d)
    sign_all = np.where(exponent % 2 == 0, 1.0, -1.0)
    out_mask = A | B
    table = {}
    for r in range(min(p, q) + 1):
        ii, jj = np.nonzero(r_all == r)
        if len(ii) == 0:
            continue
        n = p + q - 2 * r
        out = index_of(d, n, out_mask[ii, jj])
        table[r] = (ii, jj, out, sign_all[ii, jj])
    return table


@lru_cache(maxsize=None)
def slice_table(d: int, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Table for the first-argument slice ``f(k, .)`` of a degree-n tensor.

    Returns ``(src, k, dst, sign)``: coefficient ``src`` of the degree-n tensor feeds
    coefficient ``dst`` of the degree ``n-1`` slice at 0-based slot ``k`` with the sign
    of moving ``k`` to the front of the sorted tuple.
    """
    src, ks, dst, sign = [], [], [], []
    full = masks(d, n)
    for si, S in enumerate(full):
        for k in slots_of(S):
            T = int(S) & ~(1 << k)
            src.append(si)
            ks.append(k)
            dst.append(T)
            sign.append(-1.0 if bin(T & ((1 << k) - 1)).count("1") % 2 else 1.0)
    dst_idx = index_of(d, n - 1, np.array(dst, dtype=np.int64)) if dst else np.zeros(0, dtype=np.int64)
    return (
        np.array(src, dtype=np.int64),
        np.array(ks, dtype=np.int64),
        dst_idx,
        np.array(sign, dtype=np.float64),
    )
