"""Pure-Python reference kernels.

Both routines work on plain Python integers and are mirrored line for line
by the compiled module ``_ckernels``.  Any divergence between the two is a
bug; ``tests/test_kernels.py`` runs them side by side.
"""
from math import gcd

OPTIMAL, UNBOUNDED, INFEASIBLE = 0, 1, 2


def _pivot(T, r, col, D, nrows):
    # Integer-preserving (Bareiss) pivot: every division below is exact.
    Tr = T[r]
    p = Tr[col]
    for i in range(nrows):
        if i == r:
            continue
        Ti = T[i]
        f = Ti[col]
        if f == 0:
            if p != D:
                T[i] = [p * v // D for v in Ti]
        else:
            T[i] = [(p * v - f * w) // D for v, w in zip(Ti, Tr)]
    return p


def _ratio_row(T, basis, m, col, rhs):
    # Minimum ratio test; ties go to the smallest basic variable (Bland).
    best = -1
    bn = bd = 0
    for i in range(m):
        a = T[i][col]
        if a > 0:
            v = T[i][rhs]
            if best < 0:
                best, bn, bd = i, v, a
                continue
            lhs, rhs_ = v * bd, bn * a
            if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
                best, bn, bd = i, v, a
    return best


def simplex(A, b, c):
    """Maximize ``c.x`` subject to ``A x <= b`` and ``x >= 0``.

    All inputs are integers.  Returns ``(status, num, den, xnum)`` where the
    optimum is ``num/den`` and the primal solution is ``xnum[j]/den``.
    Bland's rule throughout, so the result is deterministic.
    """
    m, n = len(b), len(c)
    ns = n + m
    na = sum(1 for v in b if v < 0)
    nc = n + m + na
    rhs = nc
    T, basis = [], []
    k = 0
    for i in range(m):
        row = [0] * (nc + 1)
        row[:n] = A[i]
        row[n + i] = 1
        row[rhs] = b[i]
        if b[i] < 0:
            row = [-v for v in row]
            row[n + m + k] = 1
            basis.append(n + m + k)
            k += 1
        else:
            basis.append(n + i)
        T.append(row)
    obj = [0] * (nc + 1)
    for j in range(n):
        obj[j] = -c[j]
    T.append(obj)
    D = 1

    if na:
        w = [0] * (nc + 1)
        for a in range(n + m, nc):
            w[a] = 1
        for i in range(m):
            if basis[i] >= n + m:
                Ti = T[i]
                w = [x - y for x, y in zip(w, Ti)]
        T.append(w)
        wr = m + 1
        while True:
            W = T[wr]
            col = -1
            for j in range(n + m):
                if W[j] < 0:
                    col = j
                    break
            if col < 0:
                break
            r = _ratio_row(T, basis, m, col, rhs)
            # phase one is bounded, so r >= 0 here
            D = _pivot(T, r, col, D, m + 2)
            basis[r] = col
        if T[wr][rhs] < 0:
            return INFEASIBLE, 0, 1, None
        # drive remaining artificials out of the basis
        drop = []
        for i in range(m):
            if basis[i] < n + m:
                continue
            Ti = T[i]
            col = -1
            for j in range(n + m):
                if Ti[j] != 0:
                    col = j
                    break
            if col < 0:
                drop.append(i)
                continue
            if Ti[col] < 0:
                T[i] = [-v for v in Ti]
            D = _pivot(T, i, col, D, m + 2)
            basis[i] = col
        T.pop()
        if drop:
            keep = [i for i in range(m) if i not in drop]
            T = [T[i] for i in keep] + [T[m]]
            basis = [basis[i] for i in keep]
            m = len(keep)

    while True:
        Z = T[m]
        col = -1
        for j in range(ns):
            if Z[j] < 0:
                col = j
                break
        if col < 0:
            break
        r = _ratio_row(T, basis, m, col, rhs)
        if r < 0:
            return UNBOUNDED, 0, 1, None
        D = _pivot(T, r, col, D, m + 1)
        basis[r] = col

    x = [0] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][rhs]
    return OPTIMAL, T[m][rhs], D, x


def combine_pairs(rows, pairs, col):
    """Fourier-Motzkin combinations of ``rows`` on column ``col``.

    ``pairs`` lists ``(i, j)`` with ``rows[i][col] > 0 > rows[j][col]``.
    Each output row is primitive (gcd of all entries is 1).
    """
    out = []
    for i, j in pairs:
        p, q = rows[i], rows[j]
        a, b = -q[col], p[col]
        new = [a * x + b * y for x, y in zip(p, q)]
        g = 0
        for v in new:
            if v:
                g = gcd(g, v)
                if g == 1:
                    break
        if g > 1:
            new = [v // g for v in new]
        out.append(tuple(new))
    return out
