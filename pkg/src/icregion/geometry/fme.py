"""Fourier-Motzkin elimination with history-based pruning."""
from __future__ import annotations

from .. import _kernels
from .lp import OPTIMAL, solve_rows
from .polyhedron import Polyhedron
from .redundancy import remove_redundant

DEFAULT_FME_CAP = 20_000


class ProjectionLimitError(RuntimeError):
    """Raised when an intermediate system grows past the configured cap."""


def is_full_dimensional(rows, n) -> bool:
    """Whether ``{x : rows}`` has an interior point (max slack t > 0)."""
    if not rows:
        return True
    slack = [tuple(r[:-1]) + (1, r[-1]) for r in rows]
    cap = (0,) * n + (1, 1)  # t <= 1 keeps the LP bounded
    res = solve_rows(slack + [cap], n + 1, [0] * n + [1])
    return res.status == OPTIMAL and res.value > 0


def fme_eliminate(poly: Polyhedron, drop, *, cap: int = DEFAULT_FME_CAP,
                  stats: dict | None = None) -> Polyhedron:
    """Project ``poly`` onto the variables not in ``drop``.

    The next variable to eliminate minimizes ``#upper * #lower`` (ties go to
    the smaller VarId).  After each step the system is made irredundant
    again; for a full-dimensional input only the freshly combined rows need
    LP checks.  Ancestor-count pruning is not used: it is unsound once
    redundant rows are dropped between steps.
    """
    drop = set(drop)
    unknown = drop - set(poly.variables)
    if unknown:
        raise ValueError(f"cannot eliminate unknown variables {sorted(unknown)}")
    keep = [v for v in poly.variables if v not in drop]
    if not drop:
        return remove_redundant(poly)
    p = remove_redundant(poly)
    if p.is_trivially_empty():
        return Polyhedron.empty(keep)
    n = p.dim
    rows = list(p.rows)
    full_dim = is_full_dimensional(rows, n)
    remaining = {p.column(v) for v in drop}
    steps = 0
    while remaining:
        best = None
        for j in remaining:
            npos = sum(1 for r in rows if r[j] > 0)
            nneg = sum(1 for r in rows if r[j] < 0)
            key = (npos * nneg, p.variables[j])
            if best is None or key < best[0]:
                best = (key, j)
        j = best[1]
        remaining.discard(j)
        pos = [k for k, r in enumerate(rows) if r[j] > 0]
        neg = [k for k, r in enumerate(rows) if r[j] < 0]
        zero = [rows[k] for k, r in enumerate(rows) if r[j] == 0]
        pairs = [(a, b) for a in pos for b in neg]
        combined = _kernels.combine_pairs(rows, pairs, j) if pairs else []
        seen = set(zero)
        fresh = []
        for row in combined:
            if not any(row[:-1]):
                if row[-1] < 0:
                    return Polyhedron.empty(keep)
                continue
            if row in seen:
                continue
            seen.add(row)
            fresh.append(row)
        if len(zero) + len(fresh) > cap:
            raise ProjectionLimitError(
                f"elimination produced {len(zero) + len(fresh)} inequalities (cap {cap})"
            )
        q = remove_redundant(Polyhedron(p.variables, zero + fresh),
                             candidates=fresh if full_dim else None)
        if q.is_trivially_empty():
            return Polyhedron.empty(keep)
        rows = list(q.rows)
        steps += 1
    if stats is not None:
        stats["fme_steps"] = stats.get("fme_steps", 0) + steps
    return Polyhedron(p.variables, rows).drop_columns(keep)
