"""Hot evaluation and enumeration kernels, compiled where possible.

The compiled extension (``_fastcore``, Cython) and the pure-numpy module
(``_purecore``) implement the same contract:

    eval_batch(q, c, xs)                 objective at each row of xs
    feasible_mask(d, xs)                 covering feasibility of each row
    enumerate_feasible(d, fixed, kcard)  all feasible points, lexicographic
    brute_force_min(q, c, d, fixed, kcard)
                                         fused enumerate+evaluate+argmin
    compare_on_feasible(qa, ca, qb, cb, d, tol, fixed, kcard)
                                         first feasible point where two
                                         objectives disagree, or None

``fixed`` is an optional int8 vector (-1 free, 0/1 pinned) and ``kcard``
restricts the family to points of exactly that cardinality (-1: unrestricted),
which is how fixed-cardinality families are enumerated.

Selection happens once at import: the compiled core if it built, else the
numpy fallback.  Set QCOPREP_KERNELS=python or =compiled to force a backend
(``compiled`` raises if the extension is missing).
"""
from __future__ import annotations

import os

import numpy as np

from . import _purecore

_choice = os.environ.get("QCOPREP_KERNELS", "auto")
if _choice not in ("auto", "python", "compiled"):
    raise ValueError(f"QCOPREP_KERNELS must be auto, python or compiled, not {_choice!r}")

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = None
if _impl is None:
    _impl = _purecore

BACKEND = "compiled" if _impl is not _purecore else "python"


def _as_q(q) -> np.ndarray:
    return np.ascontiguousarray(q, dtype=np.float64)


def _as_vec(c) -> np.ndarray:
    return np.ascontiguousarray(c, dtype=np.float64)


def _as_d(d) -> np.ndarray:
    return np.ascontiguousarray(d, dtype=np.uint8)


def _as_fixed(fixed, n: int) -> np.ndarray:
    if fixed is None:
        return np.full(n, -1, dtype=np.int8)
    a = np.ascontiguousarray(fixed, dtype=np.int8)
    if a.shape != (n,):
        raise ValueError(f"fixed vector has shape {a.shape}, expected ({n},)")
    return a


def eval_batch(q, c, xs) -> np.ndarray:
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    return _impl.eval_batch(_as_q(q), _as_vec(c), xs)


def feasible_mask(d, xs) -> np.ndarray:
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    return _impl.feasible_mask(_as_d(d), xs)


def enumerate_feasible(d, fixed=None, kcard: int = -1) -> np.ndarray:
    d = _as_d(d)
    return _impl.enumerate_feasible(d, _as_fixed(fixed, d.shape[1]), int(kcard))


def brute_force_min(q, c, d, fixed=None, kcard: int = -1):
    """Returns (best_value, best_point, feasible_count).

    best_point is the lexicographically first feasible minimizer; when the
    family is empty, returns (None, None, 0).
    """
    q, c, d = _as_q(q), _as_vec(c), _as_d(d)
    return _impl.brute_force_min(q, c, d, _as_fixed(fixed, d.shape[1]), int(kcard))


def compare_on_feasible(qa, ca, qb, cb, d, tol: float, fixed=None, kcard: int = -1):
    """Returns (n_checked, counterexample-or-None) comparing two objectives."""
    d = _as_d(d)
    return _impl.compare_on_feasible(
        _as_q(qa), _as_vec(ca), _as_q(qb), _as_vec(cb), d,
        float(tol), _as_fixed(fixed, d.shape[1]), int(kcard),
    )
