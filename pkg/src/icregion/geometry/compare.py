"""Set relations between polyhedra, and point membership."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .lp import INFEASIBLE, UNBOUNDED, solve_rows
from .polyhedron import Polyhedron


def _aligned(a: Polyhedron, b: Polyhedron) -> Polyhedron:
    if a.variables == b.variables:
        return b
    if set(a.variables) != set(b.variables):
        raise ValueError("polyhedra are over different variables")
    return b.reorder(a.variables)


def violated_row(a: Polyhedron, b: Polyhedron):
    """First row of ``b`` not implied by ``a`` with a point of ``a`` outside it.

    Returns ``None`` when ``a`` is a subset of ``b``.  When the violation is
    an unbounded direction no witness point is available and the point slot
    is ``None``.
    """
    b = _aligned(a, b)
    if a.is_trivially_empty():
        return None
    for row in b.rows:
        res = solve_rows(a.rows, a.dim, row[:-1])
        if res.status == INFEASIBLE:
            return None
        if res.status == UNBOUNDED:
            return row, None
        if res.value > row[-1]:
            return row, res.point
    return None


def poly_subset(a: Polyhedron, b: Polyhedron) -> bool:
    """``a`` is contained in ``b`` (every row of ``b`` is valid on ``a``)."""
    return violated_row(a, b) is None


def poly_equal(a: Polyhedron, b: Polyhedron) -> bool:
    return poly_subset(a, b) and poly_subset(b, a)


def as_point(poly: Polyhedron, point) -> tuple:
    if isinstance(point, Mapping):
        return tuple(Fraction(point.get(v, 0)) for v in poly.variables)
    pt = tuple(Fraction(v) for v in point)
    if len(pt) != poly.dim:
        raise ValueError(f"point has {len(pt)} coordinates, expected {poly.dim}")
    return pt


def contains_point(poly: Polyhedron, point: Sequence | Mapping) -> bool:
    """Membership by direct substitution."""
    pt = as_point(poly, point)
    return all(sum(c * x for c, x in zip(r[:-1], pt)) <= r[-1] for r in poly.rows)
