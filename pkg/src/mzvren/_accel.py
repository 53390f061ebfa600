"""Integer kernels for the combinatorial enumerations.

Two implementations of each kernel live here: a numba ``@njit`` version and a
vectorized numpy version.  ``MZV_NUMBA=0`` in the environment forces the numpy
path; otherwise numba is used when it imports cleanly.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba as _nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    _nb = None

NUMBA_AVAILABLE = _nb is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("MZV_NUMBA", "1") not in ("0", "false", "no")

# 2**n masks are materialized as int64
MAX_LETTERS = 30


def _njit(fn):
    if NUMBA_AVAILABLE:
        return _nb.njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------- admissible


def _admissible_masks_numpy(ybits: np.ndarray) -> np.ndarray:
    n = ybits.shape[0]
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    comp = full ^ masks
    last = np.full(masks.shape, -1, dtype=np.int64)
    last_c = np.full(masks.shape, -1, dtype=np.int64)
    for i in range(n):
        last[(masks >> i) & 1 == 1] = i
        last_c[(comp >> i) & 1 == 1] = i
    yb = np.append(ybits.astype(bool), False)  # index -1 lands on the pad
    ok = ((masks == 0) | yb[last]) & ((comp == 0) | yb[last_c])
    return masks[ok]


@_njit
def _admissible_masks_numba(ybits):
    n = ybits.shape[0]
    full = (1 << n) - 1
    out = np.empty(1 << n, dtype=np.int64)
    count = 0
    for s in range(1 << n):
        c = full ^ s
        last = -1
        last_c = -1
        for i in range(n):
            if (s >> i) & 1:
                last = i
            else:
                last_c = i
        if s != 0 and ybits[last] == 0:
            continue
        if c != 0 and ybits[last_c] == 0:
            continue
        out[count] = s
        count += 1
    return out[:count]


def admissible_masks(ybits, use_numba: bool | None = None) -> np.ndarray:
    """Bitmasks S (bit i <-> letter i+1) with w_S and its complement in L*y + {1}.

    ``ybits[i]`` is 1 when letter ``i`` of the word is ``y``.  Masks come out in
    increasing numeric order.
    """
    ybits = np.asarray(ybits, dtype=np.int64)
    if ybits.shape[0] > MAX_LETTERS:
        raise ValueError(f"word too long for subset enumeration ({ybits.shape[0]} letters)")
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _admissible_masks_numba(ybits)
    return _admissible_masks_numpy(ybits)


# --------------------------------------------------------------- surjections


def _surjections_numpy(r: int, i: int) -> np.ndarray:
    # mixed-radix odometer over [0, i)^r, most significant digit first -> lexicographic
    codes = np.arange(i**r, dtype=np.int64)
    digits = np.empty((codes.shape[0], r), dtype=np.int64)
    for pos in range(r - 1, -1, -1):
        digits[:, pos] = codes % i
        codes = codes // i
    hit = np.zeros((digits.shape[0], i), dtype=bool)
    rows = np.arange(digits.shape[0])
    for pos in range(r):
        hit[rows, digits[:, pos]] = True
    return digits[hit.all(axis=1)] + 1


@_njit
def _surjections_numba(r, i):
    total = 1
    for _ in range(r):
        total *= i
    out = np.empty((total, r), dtype=np.int64)
    seq = np.zeros(r, dtype=np.int64)
    seen = np.zeros(i, dtype=np.int64)
    count = 0
    for _ in range(total):
        for v in range(i):
            seen[v] = 0
        for p in range(r):
            seen[seq[p]] = 1
        full = True
        for v in range(i):
            if seen[v] == 0:
                full = False
                break
        if full:
            for p in range(r):
                out[count, p] = seq[p] + 1
            count += 1
        # odometer step, last position fastest
        p = r - 1
        while p >= 0:
            seq[p] += 1
            if seq[p] < i:
                break
            seq[p] = 0
            p -= 1
    return out[:count]


def surjection_array(r: int, i: int, use_numba: bool | None = None) -> np.ndarray:
    """All surjections {1..r} -> {1..i} as rows of images, lexicographic."""
    if i < 1 or i > r:
        return np.empty((0, max(r, 0)), dtype=np.int64)
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _surjections_numba(r, i)
    return _surjections_numpy(r, i)
