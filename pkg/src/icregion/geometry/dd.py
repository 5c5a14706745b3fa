"""Double description: vertices of polytopes and facets of point hulls."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .inequality import primitive
from .lp import UNBOUNDED, solve_rows
from .polyhedron import Polyhedron, RegionUnion
from .redundancy import remove_redundant


class UnboundedError(ValueError):
    pass


def _rref(rows, ncols):
    """Reduced row echelon form over Fractions; returns (rows, pivots)."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [v / pv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _int_vec(vec) -> tuple:
    den = lcm(*(Fraction(v).denominator for v in vec)) if vec else 1
    return primitive([int(Fraction(v) * den) for v in vec])


def nullspace(rows, ncols) -> list:
    """Integer basis of ``{y : rows . y = 0}``."""
    R, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        y = [Fraction(0)] * ncols
        y[f] = Fraction(1)
        for i, c in enumerate(pivots):
            y[c] = -R[i][f]
        basis.append(_int_vec(y))
    return basis


def _independent_rows(rows, ncols):
    """Indices of a maximal linearly independent subset, greedily in order."""
    basis = []  # echelon rows with their pivot
    chosen = []
    for k, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        for piv, b in basis:
            if v[piv] != 0:
                f = v[piv] / b[piv]
                v = [a - f * c for a, c in zip(v, b)]
        piv = next((c for c in range(ncols) if v[c] != 0), None)
        if piv is not None:
            basis.append((piv, v))
            chosen.append(k)
            if len(chosen) == ncols:
                break
    return chosen


def _solve_square(M, rhs_cols):
    """Inverse-like solve: returns columns of M^{-1} (as Fraction lists)."""
    n = len(M)
    aug = [[Fraction(v) for v in M[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, _ = _rref(aug, n)
    return [[R[i][n + j] for i in range(n)] for j in range(n)]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _pointed_rays(M, r):
    """Extreme rays of the pointed cone ``{z : M z <= 0}`` with rank ``r``."""
    first = _independent_rows(M, r)
    inv_cols = _solve_square([M[i] for i in first], None)
    rays = []  # (vector, zero-set bitmask over row indices)
    for k in range(r):
        vec = _int_vec([-x for x in inv_cols[k]])
        z = 0
        for t, i in enumerate(first):
            if t != k:
                z |= 1 << i
        rays.append((vec, z))
    done = set(first)
    processed = 0
    for i in first:
        processed |= 1 << i
    for h in range(len(M)):
        if h in done:
            continue
        row = M[h]
        pos, zer, neg = [], [], []
        for vec, z in rays:
            s = _dot(row, vec)
            if s > 0:
                pos.append((vec, z, s))
            elif s < 0:
                neg.append((vec, z, s))
            else:
                zer.append((vec, z | (1 << h)))
        processed |= 1 << h
        if not pos:
            rays = [(v, z) for v, z, _ in neg] + zer
            continue
        new = []
        allz = [z for _, z, _ in pos] + [z for _, z, _ in neg] + [z for _, z in zer]
        for pv, pz, ps in pos:
            for nv, nz, ns in neg:
                common = pz & nz
                if _popcount(common) < r - 2:
                    continue
                adjacent = True
                for z in allz:
                    if z != pz and z != nz and (z & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vec = primitive([ps * a - ns * b for a, b in zip(nv, pv)])
                new.append((vec, common | (1 << h)))
        rays = [(v, z) for v, z, _ in neg] + zer + new
    return [v for v, _ in rays]


def cone_generators(M, dim):
    """Generators of ``{y : M y <= 0}``: (extreme rays, lineality basis)."""
    M = [list(r) for r in M if any(r)]
    lineality = nullspace(M, dim) if M else [_int_vec([int(i == j) for j in range(dim)]) for i in range(dim)]
    if not M:
        return [], lineality
    if not lineality:
        return sorted(set(map(tuple, _pointed_rays(M, dim)))), []
    # quotient by the lineality space: coordinates in the row space of M
    rank_rows = [M[i] for i in _independent_rows(M, dim)]
    r = len(rank_rows)
    Mz = [[_dot(row, b) for b in rank_rows] for row in M]
    rays = []
    for z in _pointed_rays(Mz, r):
        y = [sum(z[k] * rank_rows[k][c] for k in range(r)) for c in range(dim)]
        rays.append(primitive(y))
    return sorted(set(rays)), lineality


def _check_bounded(poly: Polyhedron):
    n = poly.dim
    for j in range(n):
        for s in (1, -1):
            obj = [0] * n
            obj[j] = s
            if solve_rows(poly.rows, n, obj).status == UNBOUNDED:
                raise UnboundedError(f"polyhedron is unbounded along {poly.variables[j]}")


def vertices(poly: Polyhedron, *, check_bounded: bool = True) -> list:
    """Vertex list of a polytope, as sorted tuples of Fractions."""
    n = poly.dim
    if poly.is_trivially_empty():
        return []
    if solve_rows(poly.rows, n, [0] * n).status == "infeasible":
        return []
    if check_bounded:
        _check_bounded(poly)
    # homogenize: a.x <= b  ->  a.x - b t <= 0, plus -t <= 0
    M = [list(r[:-1]) + [-r[-1]] for r in poly.rows]
    M.append([0] * n + [-1])
    rays, lin = cone_generators(M, n + 1)
    if lin:
        raise UnboundedError("polyhedron contains a line")
    pts = set()
    for y in rays:
        t = y[-1]
        if t == 0:
            raise UnboundedError("polyhedron has a recession direction")
        pts.add(tuple(Fraction(v, t) for v in y[:-1]))
    return sorted(pts)


def hull_of_points(points, variables) -> Polyhedron:
    """Facet description of the convex hull of finitely many points."""
    variables = tuple(variables)
    n = len(variables)
    pts = sorted(set(tuple(Fraction(v) for v in p) for p in points))
    if not pts:
        return Polyhedron.empty(variables)
    # (a, beta) with a.p - beta <= 0 for every point p
    M = []
    for p in pts:
        den = lcm(*(v.denominator for v in p)) if p else 1
        M.append([int(v * den) for v in p] + [-den])
    rays, lin = cone_generators(M, n + 1)
    rows = [tuple(y) for y in rays]
    for y in lin:
        rows.append(tuple(y))
        rows.append(tuple(-v for v in y))
    poly = Polyhedron(variables, rows)
    if lin:
        poly = remove_redundant(poly)
    return poly


def project_by_vertices(poly: Polyhedron, keep) -> Polyhedron:
    """Projection via the vertex set (alternative backend to FME)."""
    keep = [v for v in poly.variables if v in set(keep)]
    idx = [poly.column(v) for v in keep]
    verts = vertices(poly)
    if not verts:
        return Polyhedron.empty(keep)
    return hull_of_points({tuple(p[i] for i in idx) for p in verts}, keep)


def hull_of_union(u) -> Polyhedron:
    """Convex hull of the union of bounded polyhedra (empty ones ignored)."""
    members = list(u.members if isinstance(u, RegionUnion) else u)
    if not members:
        raise ValueError("hull of an empty collection")
    variables = members[0].variables
    pts = set()
    for m in members:
        if m.variables != variables:
            m = m.reorder(variables)
        pts.update(vertices(m))
    return hull_of_points(pts, variables)
