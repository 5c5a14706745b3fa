"""Exact linear programming on Polyhedron rows."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .. import _kernels
from .inequality import is_infeasible_row, nonneg_var
from .polyhedron import Polyhedron

OPTIMAL, UNBOUNDED, INFEASIBLE = "optimal", "unbounded", "infeasible"
_STATUS = {_kernels.OPTIMAL: OPTIMAL, _kernels.UNBOUNDED: UNBOUNDED, _kernels.INFEASIBLE: INFEASIBLE}

# running count of simplex calls, reported in statistics
counters = {"lp": 0}


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    point: tuple | None = None  # primal solution in column order

    @property
    def optimum(self) -> Fraction | None:
        return self.value if self.status == OPTIMAL else None


def _int_objective(obj: Sequence) -> tuple:
    if all(type(c) is int for c in obj):
        return list(obj), 1
    vals = [Fraction(c) for c in obj]
    scale = lcm(*(v.denominator for v in vals)) if vals else 1
    return [int(v * scale) for v in vals], scale


def solve_rows(rows: Sequence[Sequence[int]], n: int, objective: Sequence,
               extra_nonneg: frozenset = frozenset()) -> LPResult:
    """Maximize ``objective . x`` over integer rows ``(a, b)`` meaning ``a.x <= b``.

    Columns carrying a ``-x <= 0`` row (or listed in ``extra_nonneg``) are
    passed to the simplex as sign-constrained; the rest are split into a
    difference of two nonnegative columns.
    """
    nonneg = set(extra_nonneg)
    body = []
    for r in rows:
        if is_infeasible_row(r):
            counters["lp"] += 1
            return LPResult(INFEASIBLE)
        j = nonneg_var(r)
        if j is not None:
            nonneg.add(j)
        else:
            body.append(r)
    return solve_split(body, n, nonneg, objective)


def solve_split(body: Sequence[Sequence[int]], n: int, nonneg, objective: Sequence,
                want_point: bool = True) -> LPResult:
    """:func:`solve_rows` with sign rows already separated out: ``body`` holds
    the remaining rows (none of them ``0 <= negative``) and ``nonneg`` the
    sign-constrained columns.  ``want_point=False`` skips building the
    primal solution when only the optimum matters."""
    counters["lp"] += 1
    # column layout: nonneg columns once, free columns as (+, -)
    layout = []
    for j in range(n):
        layout.append((j, 1))
        if j not in nonneg:
            layout.append((j, -1))
    c_int, scale = _int_objective(objective)
    if len(layout) == n:  # every column sign-constrained: no splitting needed
        A = [list(r[:-1]) for r in body]
        c = c_int
    else:
        A = [[s * r[j] for j, s in layout] for r in body]
        c = [s * c_int[j] for j, s in layout]
    b = [r[-1] for r in body]
    status, num, den, xnum = _kernels.simplex(A, b, c)
    status = _STATUS[status]
    if status != OPTIMAL:
        return LPResult(status)
    if not want_point:
        return LPResult(OPTIMAL, Fraction(num, den * scale))
    x = [0] * n
    for (j, s), v in zip(layout, xnum):
        if v:
            x[j] += s * v
    x = [Fraction(v, den) for v in x]
    return LPResult(OPTIMAL, Fraction(num, den * scale), tuple(x))


def lp_max(poly: Polyhedron, objective: Mapping) -> LPResult:
    """Maximize a linear objective ``{VarId: rational}`` over ``poly``."""
    obj = [Fraction(0)] * poly.dim
    for v, c in objective.items():
        obj[poly.column(v)] += Fraction(c)
    return solve_rows(poly.rows, poly.dim, obj)


def point_dict(poly: Polyhedron, res: LPResult) -> dict:
    return dict(zip(poly.variables, res.point)) if res.point is not None else {}
