"""Pure-numpy kernel implementations.

Chunked and vectorized: candidate points are generated 2^16 at a time as bit
patterns of an ascending counter with x[0] as the most significant bit, which
makes the visiting order lexicographic.  Fixed coordinates are excluded from
the counter and scattered back in, so the work is 2^(number of free columns).
"""
from __future__ import annotations

import numpy as np

_CHUNK_BITS = 16


def eval_batch(q: np.ndarray, c: np.ndarray, xs: np.ndarray) -> np.ndarray:
    if xs.ndim != 2:
        raise ValueError("xs must be a (k, n) array")
    return np.einsum("ki,ij,kj->k", xs, q, xs) + xs @ c


def feasible_mask(d: np.ndarray, xs: np.ndarray) -> np.ndarray:
    if d.shape[0] == 0:
        return np.ones(xs.shape[0], dtype=bool)
    cover = xs.astype(np.int64) @ d.T.astype(np.int64)
    return (cover >= 1).all(axis=1)


def _free_bit_chunks(n_free: int):
    """Yield (lo, hi) counter ranges covering 0 .. 2^n_free - 1."""
    total = 1 << n_free
    step = 1 << min(_CHUNK_BITS, n_free)
    for lo in range(0, total, step):
        yield lo, min(lo + step, total)


def _expand(lo: int, hi: int, free_idx: np.ndarray, fixed: np.ndarray) -> np.ndarray:
    """Materialize counter values lo..hi-1 as full uint8 points."""
    n = fixed.shape[0]
    count = hi - lo
    xs = np.zeros((count, n), dtype=np.uint8)
    xs[:, fixed == 1] = 1
    if free_idx.size:
        vals = np.arange(lo, hi, dtype=np.uint64)[:, None]
        shifts = np.arange(free_idx.size - 1, -1, -1, dtype=np.uint64)[None, :]
        xs[:, free_idx] = ((vals >> shifts) & 1).astype(np.uint8)
    return xs


def _family_mask(d: np.ndarray, xs: np.ndarray, kcard: int) -> np.ndarray:
    mask = feasible_mask(d, xs.astype(np.float64))
    if kcard >= 0:
        mask &= xs.sum(axis=1, dtype=np.int64) == kcard
    return mask


def _prepare(d: np.ndarray, fixed: np.ndarray):
    n = d.shape[1]
    if fixed.shape[0] != n:
        raise ValueError("fixed vector length mismatch")
    free_idx = np.flatnonzero(fixed < 0)
    return n, free_idx


def enumerate_feasible(d: np.ndarray, fixed: np.ndarray, kcard: int) -> np.ndarray:
    n, free_idx = _prepare(d, fixed)
    out = []
    for lo, hi in _free_bit_chunks(free_idx.size):
        xs = _expand(lo, hi, free_idx, fixed)
        mask = _family_mask(d, xs, kcard)
        if mask.any():
            out.append(xs[mask])
    if not out:
        return np.zeros((0, n), dtype=np.uint8)
    return np.concatenate(out, axis=0)


def brute_force_min(q, c, d, fixed, kcard):
    _, free_idx = _prepare(d, fixed)
    best_val = None
    best_x = None
    count = 0
    for lo, hi in _free_bit_chunks(free_idx.size):
        xs = _expand(lo, hi, free_idx, fixed)
        mask = _family_mask(d, xs, kcard)
        if not mask.any():
            continue
        count += int(mask.sum())
        xf = xs[mask].astype(np.float64)
        vals = eval_batch(q, c, xf)
        k = int(np.argmin(vals))
        # strict < keeps the lexicographically earliest minimizer
        if best_val is None or vals[k] < best_val:
            best_val = float(vals[k])
            best_x = xs[mask][k].copy()
    return best_val, best_x, count


def compare_on_feasible(qa, ca, qb, cb, d, tol, fixed, kcard):
    _, free_idx = _prepare(d, fixed)
    checked = 0
    for lo, hi in _free_bit_chunks(free_idx.size):
        xs = _expand(lo, hi, free_idx, fixed)
        mask = _family_mask(d, xs, kcard)
        if not mask.any():
            continue
        pts = xs[mask].astype(np.float64)
        va = eval_batch(qa, ca, pts)
        vb = eval_batch(qb, cb, pts)
        bad = np.abs(va - vb) > tol
        if bad.any():
            k = int(np.argmax(bad))
            return checked + k, xs[mask][k].copy()
        checked += pts.shape[0]
    return checked, None
