# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: depth-first enumeration over binary points.

The search walks the binary tree of assignments in lexicographic order
(x[0] chosen first, 0-branch before 1-branch) and keeps the objective and the
row-coverage counters incrementally.  Incremental float updates are undone in
exact reverse order; for integral and half-integral data every intermediate
value is a dyadic rational far below 2**53, so the arithmetic is exact.  For
real-valued data the residual drift is ~1e-12, well under every tolerance used
by callers, and reported optima are re-evaluated from scratch by the caller.

Subtrees are pruned when an uncovered row has no remaining column that could
cover it, and under a cardinality restriction when the target count is no
longer reachable.
"""
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

import numpy as np


cdef struct SS:
    int n
    int m
    int kcard
    double* q
    double* c
    unsigned char* d
    signed char* fixed
    int* covercnt
    int* suffcov      # (n+1) stride per row: columns >= p that may still be 1
    int* maxadd       # columns >= p not fixed to 0
    double* inter     # inter[j] = sum over chosen i of q[i,j] + q[j,i]
    unsigned char* x
    int uncovered
    int pop
    double val
    # second objective for comparisons
    double* q2
    double* c2
    double* inter2
    double val2
    # outputs / controls
    long long count
    double best
    int has_best
    unsigned char* bestx
    double tol
    int stop
    unsigned char* out      # enumeration fill target
    long long out_pos


cdef inline void _set(SS* s, int i) noexcept nogil:
    cdef int j, r
    s.val += s.c[i] + s.q[i * s.n + i] + s.inter[i]
    for j in range(s.n):
        s.inter[j] += s.q[i * s.n + j] + s.q[j * s.n + i]
    if s.q2 != NULL:
        s.val2 += s.c2[i] + s.q2[i * s.n + i] + s.inter2[i]
        for j in range(s.n):
            s.inter2[j] += s.q2[i * s.n + j] + s.q2[j * s.n + i]
    for r in range(s.m):
        if s.d[r * s.n + i]:
            if s.covercnt[r] == 0:
                s.uncovered -= 1
            s.covercnt[r] += 1
    s.x[i] = 1
    s.pop += 1


cdef inline void _unset(SS* s, int i) noexcept nogil:
    cdef int j, r
    s.x[i] = 0
    s.pop -= 1
    for r in range(s.m):
        if s.d[r * s.n + i]:
            s.covercnt[r] -= 1
            if s.covercnt[r] == 0:
                s.uncovered += 1
    if s.q2 != NULL:
        for j in range(s.n):
            s.inter2[j] -= s.q2[i * s.n + j] + s.q2[j * s.n + i]
        s.val2 -= s.c2[i] + s.q2[i * s.n + i] + s.inter2[i]
    for j in range(s.n):
        s.inter[j] -= s.q[i * s.n + j] + s.q[j * s.n + i]
    s.val -= s.c[i] + s.q[i * s.n + i] + s.inter[i]


cdef inline int _dead(SS* s, int pos) noexcept nogil:
    cdef int r
    if s.kcard >= 0:
        if s.pop > s.kcard:
            return 1
        if s.pop + s.maxadd[pos] < s.kcard:
            return 1
    for r in range(s.m):
        if s.covercnt[r] == 0 and s.suffcov[r * (s.n + 1) + pos] == 0:
            return 1
    return 0


cdef void _dfs(SS* s, int pos, int mode) noexcept nogil:
    # mode 0: count; 1: count+min; 2: compare; 3: fill enumeration output
    if s.stop:
        return
    if _dead(s, pos):
        return
    if pos == s.n:
        if s.uncovered != 0:
            return
        if s.kcard >= 0 and s.pop != s.kcard:
            return
        s.count += 1
        if mode == 1:
            if not s.has_best or s.val < s.best:
                s.best = s.val
                s.has_best = 1
                memcpy(s.bestx, s.x, s.n)
        elif mode == 2:
            if s.val - s.val2 > s.tol or s.val2 - s.val > s.tol:
                memcpy(s.bestx, s.x, s.n)
                s.has_best = 1
                s.stop = 1
        elif mode == 3:
            memcpy(s.out + s.out_pos * s.n, s.x, s.n)
            s.out_pos += 1
        return
    if s.fixed[pos] != 1:
        _dfs(s, pos + 1, mode)
    if s.fixed[pos] != 0:
        _set(s, pos)
        _dfs(s, pos + 1, mode)
        _unset(s, pos)


cdef int _init_state(SS* s, double[:, ::1] q, double[::1] c,
                     unsigned char[:, ::1] d, signed char[::1] fixed,
                     int kcard) except -1:
    cdef int n = d.shape[1], m = d.shape[0]
    cdef int r, p
    memset(s, 0, sizeof(SS))
    s.n = n
    s.m = m
    s.kcard = kcard
    s.q = &q[0, 0] if q.size else NULL
    s.c = &c[0] if c.size else NULL
    s.d = &d[0, 0] if d.size else NULL
    s.fixed = &fixed[0] if fixed.size else NULL
    s.covercnt = <int*> malloc(sizeof(int) * (m if m else 1))
    s.suffcov = <int*> malloc(sizeof(int) * (m if m else 1) * (n + 1))
    s.maxadd = <int*> malloc(sizeof(int) * (n + 1))
    s.inter = <double*> malloc(sizeof(double) * (n if n else 1))
    s.x = <unsigned char*> malloc(n if n else 1)
    s.bestx = <unsigned char*> malloc(n if n else 1)
    if (s.covercnt == NULL or s.suffcov == NULL or s.maxadd == NULL
            or s.inter == NULL or s.x == NULL or s.bestx == NULL):
        raise MemoryError()
    memset(s.covercnt, 0, sizeof(int) * (m if m else 1))
    memset(s.inter, 0, sizeof(double) * (n if n else 1))
    memset(s.x, 0, n if n else 1)
    s.uncovered = m
    s.maxadd[n] = 0
    for p in range(n - 1, -1, -1):
        s.maxadd[p] = s.maxadd[p + 1] + (1 if s.fixed[p] != 0 else 0)
    for r in range(m):
        s.suffcov[r * (n + 1) + n] = 0
        for p in range(n - 1, -1, -1):
            s.suffcov[r * (n + 1) + p] = s.suffcov[r * (n + 1) + p + 1] + (
                1 if (s.d[r * n + p] and s.fixed[p] != 0) else 0)
    return 0


cdef void _free_state(SS* s) noexcept:
    free(s.covercnt)
    free(s.suffcov)
    free(s.maxadd)
    free(s.inter)
    free(s.x)
    free(s.bestx)


def eval_batch(double[:, ::1] q, double[::1] c, double[:, ::1] xs):
    cdef Py_ssize_t k = xs.shape[0], n = xs.shape[1]
    cdef Py_ssize_t t, i, j
    cdef double acc, row
    out = np.empty(k, dtype=np.float64)
    cdef double[::1] ov = out
    for t in range(k):
        acc = 0.0
        for i in range(n):
            if xs[t, i] == 0.0:
                continue
            row = c[i]
            for j in range(n):
                if xs[t, j] != 0.0:
                    row += q[i, j] * xs[t, j]
            acc += row * xs[t, i]
        ov[t] = acc
    return out


def feasible_mask(unsigned char[:, ::1] d, double[:, ::1] xs):
    cdef Py_ssize_t k = xs.shape[0], m = d.shape[0], n = d.shape[1]
    cdef Py_ssize_t t, r, j
    cdef double s
    cdef int ok
    out = np.empty(k, dtype=bool)
    cdef unsigned char[::1] ov = np.frombuffer(out, dtype=np.uint8)
    for t in range(k):
        ok = 1
        for r in range(m):
            s = 0.0
            for j in range(n):
                if d[r, j]:
                    s += xs[t, j]
            if s < 1.0:
                ok = 0
                break
        ov[t] = ok
    return out


def enumerate_feasible(unsigned char[:, ::1] d, signed char[::1] fixed, int kcard):
    cdef SS s
    cdef int n = d.shape[1]
    if n == 0:
        if d.shape[0] == 0 and kcard <= 0:
            return np.zeros((1, 0), dtype=np.uint8)
        return np.zeros((0, 0), dtype=np.uint8)
    cdef double[:, ::1] q0 = np.zeros((n, n), dtype=np.float64)
    cdef double[::1] c0 = np.zeros(n, dtype=np.float64)
    _init_state(&s, q0, c0, d, fixed, kcard)
    try:
        with nogil:
            _dfs(&s, 0, 0)
        out = np.zeros((s.count, n), dtype=np.uint8)
        if s.count:
            s.out = <unsigned char*> np.PyArray_DATA(out)
    finally:
        pass
    cdef unsigned char[:, ::1] ov
    if s.count:
        ov = out
        s.out = &ov[0, 0]
        s.out_pos = 0
        s.count = 0
        with nogil:
            _dfs(&s, 0, 3)
    _free_state(&s)
    return out


def brute_force_min(double[:, ::1] q, double[::1] c, unsigned char[:, ::1] d,
                    signed char[::1] fixed, int kcard):
    cdef SS s
    cdef int n = d.shape[1]
    if n == 0:
        if d.shape[0] == 0 and kcard <= 0:
            return 0.0, np.zeros(0, dtype=np.uint8), 1
        return None, None, 0
    _init_state(&s, q, c, d, fixed, kcard)
    with nogil:
        _dfs(&s, 0, 1)
    if not s.has_best:
        _free_state(&s)
        return None, None, 0
    bx = np.empty(n, dtype=np.uint8)
    cdef unsigned char[::1] bv = bx
    memcpy(&bv[0], s.bestx, n)
    val = s.best
    cnt = s.count
    _free_state(&s)
    return val, bx, cnt


def compare_on_feasible(double[:, ::1] qa, double[::1] ca,
                        double[:, ::1] qb, double[::1] cb,
                        unsigned char[:, ::1] d, double tol,
                        signed char[::1] fixed, int kcard):
    cdef SS s
    cdef int n = d.shape[1]
    if n == 0:
        return (1 if d.shape[0] == 0 and kcard <= 0 else 0), None
    cdef double[::1] inter2 = np.zeros(n, dtype=np.float64)
    _init_state(&s, qa, ca, d, fixed, kcard)
    s.q2 = &qb[0, 0]
    s.c2 = &cb[0]
    s.inter2 = &inter2[0]
    s.tol = tol
    with nogil:
        _dfs(&s, 0, 2)
    if s.stop:
        bx = np.empty(n, dtype=np.uint8)
        bv = np.frombuffer(bx, dtype=np.uint8)
        memcpy(<void*> np.PyArray_DATA(bx), s.bestx, n)
        cnt = s.count
        _free_state(&s)
        return cnt, bx
    cnt = s.count
    _free_state(&s)
    return cnt, None
