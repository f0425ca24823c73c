"""Instance model for quadratic combinatorial optimization over covering families.

A problem instance is a pair (Q, c): a dense quadratic cost matrix and a linear
cost vector.  The objective at a binary point x is  c.x + x^T Q x.  Feasibility
is membership in a covering family {x binary : D x >= 1} described by a 0/1
incidence matrix D.

All types are immutable after construction and all operations are pure, so
everything here is safe to use from multiple threads without locking.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

# Generated and benchmark data is integral or half-integral and comfortably
# below this cap, which keeps every double-precision accumulation exact.
MAX_ABS_ENTRY = float(2**20)

# Canonical representation tags.
ORG = "ORG"
SYM = "SYM"
CNX = "CNX"
CNV = "CNV"
UT = "UT"
SYMI = "SYMI"
KNOWN_TAGS = (ORG, SYM, CNX, CNV, UT, SYMI)

RELAXED_TOL = 1e-9
DEFAULT_ENUM_CAP = 25


class DimensionMismatchError(ValueError):
    """Operands describe different numbers of columns."""


class InfeasibleSystemError(RuntimeError):
    """The covering system admits no feasible point."""


class EnumerationCapError(RuntimeError):
    """Exhaustive enumeration was requested beyond the configured cap."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QMatrix:
    """Dense n-by-n quadratic cost matrix."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"quadratic cost matrix must be square, got shape {a.shape}")
        if a.size and not np.isfinite(a).all():
            raise ValueError("quadratic cost matrix has non-finite entries")
        if a.size and float(np.abs(a).max()) > MAX_ABS_ENTRY:
            raise ValueError(f"entry magnitude exceeds validation cap {MAX_ABS_ENTRY:g}")
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def is_upper_triangular(self) -> bool:
        """Strictly upper triangular: zero diagonal and zero below it."""
        return bool(np.array_equal(np.triu(self.entries, 1), self.entries))


@dataclass(frozen=True, eq=False)
class LinearCost:
    """Linear cost vector of length n."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 1:
            raise ValueError(f"linear cost must be a vector, got shape {a.shape}")
        if a.size and not np.isfinite(a).all():
            raise ValueError("linear cost has non-finite entries")
        if a.size and float(np.abs(a).max()) > MAX_ABS_ENTRY:
            raise ValueError(f"entry magnitude exceeds validation cap {MAX_ABS_ENTRY:g}")
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class Representation:
    """A (Q, c) pair plus a tag recording how it was produced.

    Tags UT and SYM carry structural promises that are checked here: a UT
    matrix is strictly upper triangular and a SYM matrix equals its transpose
    entrywise.  Any other string is accepted as a custom label.
    """

    q: QMatrix
    c: LinearCost
    tag: str = ORG

    def __post_init__(self):
        if self.q.n != self.c.n:
            raise DimensionMismatchError(
                f"quadratic part is {self.q.n}-dimensional but linear part is {self.c.n}"
            )
        if not isinstance(self.tag, str) or not self.tag:
            raise ValueError("tag must be a non-empty string")
        if self.tag == UT and not self.q.is_upper_triangular():
            raise ValueError("tag UT requires a strictly upper triangular matrix")
        if self.tag == SYM and not self.q.is_symmetric():
            raise ValueError("tag SYM requires a symmetric matrix")

    @property
    def n(self) -> int:
        return self.q.n


def representation(q, c, tag: str = ORG) -> Representation:
    """Convenience constructor from raw array-likes."""
    return Representation(QMatrix(q), LinearCost(c), tag)


@dataclass(frozen=True, eq=False)
class CoverSystem:
    """0/1 incidence matrix D of an m-element, n-subset covering family.

    d[i, j] == 1 iff element i belongs to subset j.  A row of zeros makes the
    family empty; that condition is detected at construction and recorded in
    ``feasible`` rather than repaired.  All-zero columns (empty subsets) are
    legal and retained.
    """

    d: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.d)
        if a.ndim != 2:
            raise ValueError(f"incidence matrix must be 2-d, got shape {a.shape}")
        if a.size and not np.isin(a, (0, 1)).all():
            raise ValueError("incidence matrix entries must be 0 or 1")
        a = a.astype(np.uint8)
        a.setflags(write=False)
        object.__setattr__(self, "d", a)

    @property
    def m(self) -> int:
        return self.d.shape[0]

    @property
    def n(self) -> int:
        return self.d.shape[1]

    @property
    def feasible(self) -> bool:
        """True iff no row is all zeros (the all-ones point is then a cover)."""
        if self.m == 0:
            return True
        return bool(self.d.sum(axis=1).min() >= 1)


@dataclass(frozen=True, eq=False)
class QscpInstance:
    """A covering family paired with one representation of its objective."""

    cover: CoverSystem
    rep: Representation

    def __post_init__(self):
        if self.cover.n != self.rep.n:
            raise DimensionMismatchError(
                f"cover system has {self.cover.n} columns but objective has {self.rep.n}"
            )

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def m(self) -> int:
        return self.cover.m

    def with_rep(self, rep: Representation) -> "QscpInstance":
        return QscpInstance(self.cover, rep)


def check_binary_point(x, n: int) -> np.ndarray:
    """Validate and return x as a float64 vector with entries exactly 0 or 1."""
    a = np.asarray(x, dtype=np.float64)
    if a.shape != (n,):
        raise DimensionMismatchError(f"point has shape {a.shape}, expected ({n},)")
    if a.size and not np.isin(a, (0.0, 1.0)).all():
        raise ValueError("binary point has entries other than 0 and 1")
    return a


def check_relaxed_point(x, n: int, tol: float = RELAXED_TOL) -> np.ndarray:
    """Validate and return x as a float64 vector inside [0, 1] up to tol."""
    a = np.asarray(x, dtype=np.float64)
    if a.shape != (n,):
        raise DimensionMismatchError(f"point has shape {a.shape}, expected ({n},)")
    if a.size and (a.min() < -tol or a.max() > 1.0 + tol):
        raise ValueError("relaxed point leaves [0, 1] beyond tolerance")
    return a


def evaluate(rep: Representation, x) -> float:
    """Objective value c.x + x^T Q x at a binary point."""
    xf = check_binary_point(x, rep.n)
    return float(xf @ rep.q.entries @ xf + rep.c.entries @ xf)


def evaluate_relaxed(rep: Representation, x) -> float:
    """Objective value at a point of the box relaxation, no rounding applied."""
    xf = check_relaxed_point(x, rep.n)
    return float(xf @ rep.q.entries @ xf + rep.c.entries @ xf)


def is_feasible(sys: CoverSystem, x) -> bool:
    """True iff every element is covered: D x >= 1 rowwise."""
    xf = check_binary_point(x, sys.n)
    if sys.m == 0:
        return True
    return bool((sys.d.astype(np.int64) @ xf.astype(np.int64) >= 1).all())


def enumerate_feasible(sys: CoverSystem, limit: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """All feasible binary points in lexicographic order, as a (count, n) 0/1 array.

    Lexicographic means x[0] is the most significant coordinate.  Intended for
    oracles and equivalence checks, so the dimension is capped; raise the cap
    explicitly if you accept the 2^n cost, or use sampling instead.
    """
    if sys.n > limit:
        raise EnumerationCapError(
            f"n={sys.n} exceeds the enumeration cap {limit}; use sampled verification"
        )
    return kernels.enumerate_feasible(sys.d)
