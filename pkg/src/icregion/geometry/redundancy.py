"""Redundancy tests and irredundant normal forms."""
from __future__ import annotations

from math import gcd

from .inequality import LinearInequality, nonneg_var
from .lp import INFEASIBLE, UNBOUNDED, solve_rows, solve_split
from .polyhedron import Polyhedron


def row_implied(rows, n, row) -> bool:
    """True iff ``rows`` imply ``row`` (vacuously when ``rows`` is empty)."""
    res = solve_rows(rows, n, row[:-1])
    if res.status == INFEASIBLE:
        return True
    if res.status == UNBOUNDED:
        return False
    return res.value <= row[-1]


def is_redundant(poly: Polyhedron, ineq: LinearInequality) -> bool:
    """Whether ``ineq`` follows from the other inequalities of ``poly``."""
    row = Polyhedron.from_inequalities(poly.variables, [ineq]).rows
    if not row:  # always true
        return True
    row = row[0]
    others = [r for r in poly.rows if r != row]
    return row_implied(others, poly.dim, row)


def _direction_dedupe(rows):
    # For each coefficient direction keep only the tightest bound.
    best = {}
    for r in rows:
        g = gcd(*r[:-1])
        key = tuple(c // g for c in r[:-1]) if g > 1 else r[:-1]
        cur = best.get(key)
        # r[-1]/g < cur_rhs/cur_g, with both g positive
        if cur is None or r[-1] * cur[0] < cur[1][-1] * g:
            best[key] = (g, r)
    keep = {r for _, r in best.values()}
    return [r for r in rows if r in keep]


def _dominated(rows, nonneg_cols):
    """Rows implied by a single other row plus sign constraints (cheap pass)."""
    out = set()
    body = [r for r in rows if nonneg_var(r) is None]
    for a in body:
        for b in body:
            if a is b or b in out:
                continue
            if b[-1] > a[-1]:
                continue
            ok = True
            for j in range(len(a) - 1):
                d = b[j] - a[j]
                if d < 0 or (d > 0 and j not in nonneg_cols):
                    ok = False
                    break
            if ok:
                out.add(a)
                break
    return out


def remove_redundant(poly: Polyhedron, candidates=None) -> Polyhedron:
    """Irredundant description of the same set.

    Rows are tested one at a time in canonical order, so the result does not
    depend on how the input was ordered.  With ``candidates`` only those rows
    are tested and the rest are assumed necessary.  An empty polyhedron comes
    back as the single row ``0 <= -1``.
    """
    if poly.is_trivially_empty():
        return poly
    n = poly.dim
    rows = list(poly.rows)
    if solve_rows(rows, n, [0] * n).status == INFEASIBLE:
        return Polyhedron.empty(poly.variables)
    rows = _direction_dedupe(rows)
    test = set(rows) if candidates is None else set(candidates) & set(rows)
    sign_cols = poly.nonneg_columns()
    drop = _dominated(rows, sign_cols) & test
    kept = [r for r in rows if r not in drop]
    # sign rows stay in force while they are tested themselves
    sign = {r: nonneg_var(r) for r in kept}
    for r in list(kept):
        if r not in test:
            continue
        others = [s for s in kept if s is not r]
        cols = {sign[s] for s in others if sign[s] is not None}
        body = [s for s in others if sign[s] is None]
        res = solve_split(body, n, cols, r[:-1], want_point=False)
        if res.status == INFEASIBLE or (res.status != UNBOUNDED and res.value <= r[-1]):
            kept = others
    return Polyhedron._trusted(poly.variables, tuple(kept))
