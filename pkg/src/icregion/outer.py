"""Outer bounds: the acyclic-set (MAIS) bound and externally supplied regions."""
from __future__ import annotations

from .geometry import Polyhedron, load_region, remove_redundant
from .geometry.variables import rate_vars
from .instance import Instance, SideInfoDigraph, derive_digraph

DEFAULT_ACYCLIC_LIMIT = 20


class EnumerationLimitError(RuntimeError):
    pass


def is_acyclic(g: SideInfoDigraph, s) -> bool:
    """Whether the subgraph induced by ``s`` has no directed cycle."""
    s = set(s)
    succ = {v: [w for w in sorted(g.successors(v)) if w in s] for v in s}
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(s, WHITE)
    for root in sorted(s):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = GREY
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = BLACK
                stack.pop()
            elif color[w] == GREY:
                return False
            elif color[w] == WHITE:
                color[w] = GREY
                stack.append((w, iter(succ[w])))
    return True


def _closes_cycle(succ, members: set, x: int) -> bool:
    # Is x reachable from itself inside members | {x}?  (members is acyclic)
    seen = set()
    stack = [w for w in succ[x] if w in members or w == x]
    while stack:
        v = stack.pop()
        if v == x:
            return True
        if v in seen:
            continue
        seen.add(v)
        stack.extend(w for w in succ[v] if w == x or (w in members and w not in seen))
    return False


def enumerate_acyclic_sets(g: SideInfoDigraph, limit: int = DEFAULT_ACYCLIC_LIMIT) -> list:
    """All nonempty acyclic vertex sets, ordered by size then lexicographically.

    Acyclicity is inherited by subsets, so every acyclic set is an acyclic
    set plus its largest element; the search extends sets upward only.
    """
    n = g.num_vertices
    if n > limit:
        raise EnumerationLimitError(f"{n} messages exceeds the acyclic-set limit {limit}")
    succ = {v: sorted(g.successors(v)) for v in range(1, n + 1)}
    level = [(v,) for v in range(1, n + 1)]
    out = []
    while level:
        out.extend(level)
        nxt = []
        for s in level:
            members = set(s)
            for x in range(s[-1] + 1, n + 1):
                if not _closes_cycle(succ, members, x):
                    nxt.append(s + (x,))
        level = nxt
    return [frozenset(s) for s in out]


def mais_inequalities(inst: Instance, limit: int = DEFAULT_ACYCLIC_LIMIT) -> list:
    """One ``(S, rhs)`` per acyclic S: sum of R_j over S <= covering capacity."""
    out = []
    for s in enumerate_acyclic_sets(derive_digraph(inst), limit):
        rhs = sum(sd.capacity for sd in inst.senders if sd.messages & s)
        out.append((s, rhs))
    return out


def mais_region(inst: Instance, limit: int = DEFAULT_ACYCLIC_LIMIT) -> Polyhedron:
    """The acyclic-set outer bound as an irredundant polyhedron over R_1..R_N."""
    R = rate_vars(inst.num_messages)
    ineqs = [({R[j - 1]: 1 for j in s}, rhs) for s, rhs in mais_inequalities(inst, limit)]
    return remove_redundant(Polyhedron.from_inequalities(R, ineqs).with_nonnegativity())


def load_outer_region(path) -> Polyhedron:
    """Read an outer region file (nonnegativity implied) in canonical form."""
    return load_region(path)
