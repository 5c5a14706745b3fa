# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels on 64-bit integers with 128-bit intermediates.

Same algorithms as ``_pykernels``.  Every product is formed in 128 bits and
checked on the way back to 64; if anything does not fit, OverflowError is
raised and the dispatcher reruns the call in pure Python.
"""
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <limits.h>
    typedef __int128 ick_i128;

    static int ick_fits(ick_i128 v) {
        return v <= (ick_i128)LLONG_MAX && v > (ick_i128)LLONG_MIN;
    }
    /* (p*v - f*w) / d, exact; returns 1 on overflow */
    static int ick_bareiss(long long p, long long v, long long f, long long w,
                           long long d, long long *out) {
        ick_i128 t = (ick_i128)p * v - (ick_i128)f * w;
        t /= d;
        if (!ick_fits(t)) return 1;
        *out = (long long)t;
        return 0;
    }
    /* a*x <  b*y  -> -1, == -> 0, > -> 1 */
    static int ick_cmp_cross(long long a, long long x, long long b, long long y) {
        ick_i128 l = (ick_i128)a * x, r = (ick_i128)b * y;
        return (l > r) - (l < r);
    }
    static int ick_lincomb(long long a, long long x, long long b, long long y,
                           long long *out) {
        ick_i128 t = (ick_i128)a * x + (ick_i128)b * y;
        if (!ick_fits(t)) return 1;
        *out = (long long)t;
        return 0;
    }
    """
    int ick_bareiss(long long p, long long v, long long f, long long w,
                    long long d, long long *out)
    int ick_cmp_cross(long long a, long long x, long long b, long long y)
    int ick_lincomb(long long a, long long x, long long b, long long y,
                    long long *out)

OPTIMAL, UNBOUNDED, INFEASIBLE = 0, 1, 2

# keeps the phase-one row sums well inside 64 bits
cdef long long INPUT_LIMIT = 1099511627776  # 2**40


cdef inline long long _abs(long long v):
    return -v if v < 0 else v


cdef long long _gcd(long long a, long long b):
    a = _abs(a)
    b = _abs(b)
    while b:
        a, b = b, a % b
    return a


cdef int _pivot(long long *T, int width, int r, int col, long long D,
                int nrows) except -1:
    cdef long long *Tr = T + r * width
    cdef long long p = Tr[col]
    cdef long long f, v
    cdef long long *Ti
    cdef int i, j
    for i in range(nrows):
        if i == r:
            continue
        Ti = T + i * width
        f = Ti[col]
        if f == 0:
            if p != D:
                for j in range(width):
                    if Ti[j] != 0:
                        if ick_bareiss(p, Ti[j], 0, 0, D, &v):
                            raise OverflowError("simplex entry exceeds 64 bits")
                        Ti[j] = v
        else:
            for j in range(width):
                if ick_bareiss(p, Ti[j], f, Tr[j], D, &v):
                    raise OverflowError("simplex entry exceeds 64 bits")
                Ti[j] = v
    return 0


cdef int _ratio_row(long long *T, int width, int *basis, int m, int col, int rhs):
    cdef int best = -1
    cdef long long bn = 0, bd = 0, a, v
    cdef int i, c
    for i in range(m):
        a = T[i * width + col]
        if a > 0:
            v = T[i * width + rhs]
            if best < 0:
                best = i
                bn = v
                bd = a
                continue
            c = ick_cmp_cross(v, bd, bn, a)
            if c < 0 or (c == 0 and basis[i] < basis[best]):
                best = i
                bn = v
                bd = a
    return best


def simplex(A, b, c):
    """Maximize c.x s.t. A x <= b, x >= 0 (integer data)."""
    cdef int m = len(b), n = len(c)
    cdef int na = 0, i, j, k, col, r, mm, wr
    for v in b:
        if v < 0:
            na += 1
    cdef int ns = n + m
    cdef int nc = n + m + na
    cdef int rhs = nc
    cdef int width = nc + 1
    cdef int nrows = m + 2
    cdef long long *T = <long long *> malloc(nrows * width * sizeof(long long))
    cdef int *basis = <int *> malloc((m + 1) * sizeof(int))
    cdef long long *row
    cdef long long D = 1
    if T == NULL or basis == NULL:
        free(T)
        free(basis)
        raise MemoryError()
    try:
        for i in range(nrows * width):
            T[i] = 0
        k = 0
        for i in range(m):
            row = T + i * width
            Ai = A[i]
            for j in range(n):
                row[j] = Ai[j]
                if _abs(row[j]) > INPUT_LIMIT:
                    raise OverflowError("input entry too large")
            row[n + i] = 1
            row[rhs] = b[i]
            if _abs(row[rhs]) > INPUT_LIMIT:
                raise OverflowError("input entry too large")
            if row[rhs] < 0:
                for j in range(width):
                    row[j] = -row[j]
                row[n + m + k] = 1
                basis[i] = n + m + k
                k += 1
            else:
                basis[i] = n + i
        row = T + m * width
        for j in range(n):
            row[j] = -c[j]
            if _abs(row[j]) > INPUT_LIMIT:
                raise OverflowError("input entry too large")
        mm = m
        if na:
            wr = m + 1
            row = T + wr * width
            for j in range(n + m, nc):
                row[j] = 1
            for i in range(m):
                if basis[i] >= n + m:
                    for j in range(width):
                        row[j] -= T[i * width + j]
            while True:
                row = T + wr * width
                col = -1
                for j in range(n + m):
                    if row[j] < 0:
                        col = j
                        break
                if col < 0:
                    break
                r = _ratio_row(T, width, basis, m, col, rhs)
                _pivot(T, width, r, col, D, m + 2)
                D = T[r * width + col]
                basis[r] = col
            if T[wr * width + rhs] < 0:
                return INFEASIBLE, 0, 1, None
            keep = []
            for i in range(m):
                if basis[i] < n + m:
                    keep.append(i)
                    continue
                row = T + i * width
                col = -1
                for j in range(n + m):
                    if row[j] != 0:
                        col = j
                        break
                if col < 0:
                    continue
                keep.append(i)
                if row[col] < 0:
                    for j in range(width):
                        row[j] = -row[j]
                _pivot(T, width, i, col, D, m + 2)
                D = row[col]
                basis[i] = col
            if len(keep) < m:
                # compact kept rows, then the objective row
                mm = 0
                for i in keep:
                    if i != mm:
                        for j in range(width):
                            T[mm * width + j] = T[i * width + j]
                        basis[mm] = basis[i]
                    mm += 1
                for j in range(width):
                    T[mm * width + j] = T[m * width + j]
        while True:
            row = T + mm * width
            col = -1
            for j in range(ns):
                if row[j] < 0:
                    col = j
                    break
            if col < 0:
                break
            r = _ratio_row(T, width, basis, mm, col, rhs)
            if r < 0:
                return UNBOUNDED, 0, 1, None
            _pivot(T, width, r, col, D, mm + 1)
            D = T[r * width + col]
            basis[r] = col
        x = [0] * n
        for i in range(mm):
            if basis[i] < n:
                x[basis[i]] = T[i * width + rhs]
        return OPTIMAL, T[mm * width + rhs], D, x
    finally:
        free(T)
        free(basis)


def combine_pairs(rows, pairs, int col):
    """Fourier-Motzkin pair combinations; output rows are primitive."""
    cdef int nr = len(rows)
    if nr == 0:
        return []
    cdef int width = len(rows[0])
    cdef long long *M = <long long *> malloc(nr * width * sizeof(long long))
    cdef long long *buf = <long long *> malloc(width * sizeof(long long))
    cdef long long a, bb, g, v
    cdef long long *p
    cdef long long *q
    cdef int i, j, t
    if M == NULL or buf == NULL:
        free(M)
        free(buf)
        raise MemoryError()
    try:
        for i in range(nr):
            ri = rows[i]
            for t in range(width):
                M[i * width + t] = ri[t]
        out = []
        for i, j in pairs:
            p = M + i * width
            q = M + j * width
            a = -q[col]
            bb = p[col]
            g = 0
            for t in range(width):
                if ick_lincomb(a, p[t], bb, q[t], &v):
                    raise OverflowError("combination exceeds 64 bits")
                buf[t] = v
                if v != 0 and g != 1:
                    g = _gcd(g, v)
            if g > 1:
                for t in range(width):
                    buf[t] = buf[t] // g
            out.append(tuple([buf[t] for t in range(width)]))
        return out
    finally:
        free(M)
        free(buf)
