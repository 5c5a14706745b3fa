"""Independent reference implementations and generators used by the tests.

Everything here is deliberately naive: brute force over bases, permutations
or subsets, in plain Fractions, sharing no code with the package beyond the
data types needed to hand results back.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from icregion.geometry import Polyhedron, VarId
from icregion.geometry.lp import solve_rows
from icregion.instance import Instance

# -- building polyhedra from text ---------------------------------------------

_TERM = re.compile(r"([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z][\w{},\[\]^]*)")


def var(name: str) -> VarId:
    return VarId.parse(name)


def parse_ineq(text: str):
    """``"2 x + y <= 3"`` or ``"x >= 1"`` -> ({name: Fraction}, rhs) as a <= row."""
    if "<=" in text:
        lhs, rhs, sign = *text.split("<="), 1
    else:
        lhs, rhs, sign = *text.split(">="), -1
    coeffs = {}
    pos = 0
    lhs = lhs.strip()
    while pos < len(lhs):
        m = _TERM.match(lhs, pos)
        if not m:
            raise ValueError(f"cannot parse {lhs[pos:]!r}")
        c = Fraction(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        coeffs[m.group(3)] = coeffs.get(m.group(3), 0) + sign * c
        pos = m.end()
        while pos < len(lhs) and lhs[pos] == " ":
            pos += 1
    return coeffs, sign * Fraction(rhs.strip())


def poly(names, *ineqs, nonneg: bool = True) -> Polyhedron:
    """Polyhedron over ``names`` (list or comma string) from inequality strings."""
    if isinstance(names, str):
        names = [s.strip() for s in names.split(",")]
    vs = [var(n) for n in names]
    rows = []
    for text in ineqs:
        coeffs, rhs = parse_ineq(text)
        rows.append([coeffs.get(n, 0) for n in names] + [rhs])
    p = Polyhedron(vs, rows)
    return p.with_nonnegativity() if nonneg else p


def rates(n: int, *ineqs) -> Polyhedron:
    return poly([f"R{j}" for j in range(1, n + 1)], *ineqs)


def facet_strings(p: Polyhedron) -> set:
    """Nontrivial rows as sets of (name, coeff) plus rhs; order-free comparison key."""
    out = set()
    for r in p.rows:
        nz = [(v.name, c) for v, c in zip(p.variables, r[:-1]) if c]
        if len(nz) == 1 and nz[0][1] < 0 and r[-1] == 0:
            continue
        out.add((frozenset(nz), r[-1]))
    return out


# -- brute-force linear algebra -------------------------------------------------

def solve_square(M, rhs):
    """Gauss-Jordan over Fractions; None if singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(M, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[r][n] for r in range(n)]


def brute_vertices(rows, n: int) -> set:
    """All vertices of {x : a.x <= b} by trying every n-subset of rows."""
    out = set()
    for idx in combinations(range(len(rows)), n):
        x = solve_square([rows[i][:n] for i in idx], [rows[i][n] for i in idx])
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(r[:n], x)) <= r[n] for r in rows):
            out.add(tuple(x))
    return out


def brute_lp(A, b, c):
    """max c.x over A x <= b, x >= 0 when that set is bounded; None if empty."""
    n = len(c)
    rows = [list(a) + [bb] for a, bb in zip(A, b)]
    rows += [[-1 if i == j else 0 for j in range(n)] + [0] for i in range(n)]
    verts = brute_vertices(rows, n)
    if not verts:
        return None
    return max(sum(ci * xi for ci, xi in zip(c, x)) for x in verts)


def feasible_with_fixed(p: Polyhedron, keep, point) -> bool:
    """Is there a completion of ``point`` (over ``keep``) inside ``p``?"""
    cols = [p.column(v) for v in keep]
    free = [j for j in range(p.dim) if j not in cols]
    rows = []
    for r in p.rows:
        rhs = Fraction(r[-1]) - sum(Fraction(r[j]) * x for j, x in zip(cols, point))
        rows.append([Fraction(r[j]) for j in free] + [rhs])
    if not free:
        return all(r[-1] >= 0 for r in rows)
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    int_rows = [tuple(int(x * den) for x in r) for r in rows]
    return solve_rows(int_rows, len(free), [0] * len(free)).status == "optimal"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- acyclicity ----------------------------------------------------------------

def acyclic_by_ordering(arcs, s) -> bool:
    """S is acyclic iff some ordering of S has every internal arc pointing forward."""
    s = sorted(s)
    inner = [(i, j) for i, j in arcs if i in s and j in s]
    for order in permutations(s):
        pos = {v: k for k, v in enumerate(order)}
        if all(pos[i] < pos[j] for i, j in inner):
            return True
    return False


# -- generators ------------------------------------------------------------------

def random_instance(rng: random.Random, max_n: int = 4, max_k: int = 3) -> Instance:
    n = rng.randint(1, max_n)
    all_sets = [frozenset(c) for r in range(1, n + 1) for c in combinations(range(1, n + 1), r)]
    while True:
        k = rng.randint(1, min(max_k, len(all_sets)))
        sets = rng.sample(all_sets, k)
        if frozenset().union(*sets) == frozenset(range(1, n + 1)):
            break
    caps = [rng.choice([Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2)]) for _ in sets]
    side = {}
    for j in range(1, n + 1):
        others = [i for i in range(1, n + 1) if i != j]
        side[j] = sorted(i for i in others if rng.random() < 0.5)
    return Instance.build(n, [(sorted(s), c) for s, c in zip(sets, caps)], side, name="random")


def random_bounded_system(rng: random.Random, max_vars: int = 6, max_rows: int = 15) -> Polyhedron:
    """A random polytope inside the nonnegative orthant, at most ``max_rows`` rows in all."""
    n = rng.randint(2, max_vars)
    budget = max_rows - n  # nonnegativity rows count towards the total
    rows = [[1] * n + [rng.randint(2, 12)]]  # keeps everything bounded
    for _ in range(rng.randint(1, budget - 1)):
        coeffs = [rng.choice([-2, -1, 0, 0, 1, 1, 2, 3]) for _ in range(n)]
        if not any(coeffs):
            coeffs[rng.randrange(n)] = 1
        rows.append(coeffs + [rng.randint(-1, 8)])
    vs = [VarId.named(f"x{i}") for i in range(1, n + 1)]
    return Polyhedron(vs, rows).with_nonnegativity()


def sample_points(rng: random.Random, dim: int, anchors, count: int) -> list:
    """Mix of points near the anchors (often on or close to faces) and box points."""
    anchors = list(anchors)
    hi = max((max(a) for a in anchors if a), default=Fraction(4)) + 1
    pts = []
    for i in range(count):
        if anchors and i % 3 == 0:
            a, b = rng.choice(anchors), rng.choice(anchors)
            t = Fraction(rng.randint(0, 4), 4)
            pts.append(tuple(t * x + (1 - t) * y for x, y in zip(a, b)))
        elif anchors and i % 3 == 1:
            a = rng.choice(anchors)
            pts.append(tuple(x + Fraction(rng.randint(-2, 2), 8) for x in a))
        else:
            pts.append(tuple(Fraction(rng.randint(-2, int(4 * hi)), 4) for _ in range(dim)))
    return pts


# -- cached scheme hulls (shared by the chain tests and the acceptance run) ------

@lru_cache(maxsize=None)
def scheme_report(entry_name: str, scheme: str):
    from icregion.composite import scheme_region
    from icregion.corpus import entry

    return scheme_region(entry(entry_name).instance, scheme)


@lru_cache(maxsize=None)
def mais_of(entry_name: str):
    from icregion.corpus import entry
    from icregion.outer import mais_region

    return mais_region(entry(entry_name).instance)
