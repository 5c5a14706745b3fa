"""Group regions, their unions over decoding choices, and plan combination."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

from ..geometry import (
    Polyhedron,
    ProjectionLimitError,
    RegionUnion,
    fme_eliminate,
    hull_of_points,
    poly_subset,
    project_by_vertices,
    vertices,
)
from ..geometry.fme import DEFAULT_FME_CAP
from ..geometry.variables import VarId, rate_vars
from ..instance import Instance
from .constraints import lifted_system
from .groups import (
    DEFAULT_CHOICE_CAP,
    ChoiceLimitError,
    DecodingChoice,
    Group,
    GroupingPlan,
    enumerate_decoding_choices,
)

DEFAULT_TUPLE_CAP = 10_000


@dataclass
class Caps:
    """Resource limits; every one is exposed as a CLI flag."""

    choices: int = DEFAULT_CHOICE_CAP
    fme: int = DEFAULT_FME_CAP
    tuples: int = DEFAULT_TUPLE_CAP
    plans: int = 1_000
    lifted: int = 256  # lifted systems in one verify-mode certificate


def project(poly: Polyhedron, drop, caps: Caps | None = None, stats: dict | None = None) -> Polyhedron:
    """FME, falling back to vertex projection when the cap is hit (bounded only)."""
    caps = caps or Caps()
    try:
        return fme_eliminate(poly, drop, cap=caps.fme, stats=stats)
    except ProjectionLimitError:
        if stats is not None:
            stats["vertex_fallbacks"] = stats.get("vertex_fallbacks", 0) + 1
        keep = [v for v in poly.variables if v not in set(drop)]
        return project_by_vertices(poly, keep)


def group_region(group: Group, d: DecodingChoice, compression: str,
                 caps: Caps | None = None, stats: dict | None = None) -> Polyhedron:
    """Region of one group and decoding choice, over its group rates (and
    split capacities when symbolic); all composite rates projected out."""
    d.validate(group)
    lifted, v = lifted_system(group, d, compression)
    return project(lifted, v.variables, caps, stats)


def group_region_union(group: Group, compression: str, choice_filter=None,
                       caps: Caps | None = None, stats: dict | None = None) -> RegionUnion:
    """One member per decoding choice (all of them unless ``choice_filter``).

    ``choice_filter`` is either a predicate on DecodingChoice or an explicit
    list of choices.
    """
    caps = caps or Caps()
    choices = _choices(group, choice_filter, caps)
    members = [group_region(group, d, compression, caps, stats) for d in choices]
    return RegionUnion(members, labels=choices)


def _choices(group: Group, choice_filter, caps: Caps) -> list:
    if choice_filter is None:
        return enumerate_decoding_choices(group, caps.choices)
    if callable(choice_filter):
        return [d for d in enumerate_decoding_choices(group, caps.choices) if choice_filter(d)]
    out = list(choice_filter)
    for d in out:
        d.validate(group)
    return out


def _search_order(choices):
    # Larger decoding sets first: they tend to give the big regions early,
    # which lets the containment test skip more of the rest.
    return sorted(choices, key=lambda d: -d.total_size())


def _lifted_inside(lifted: Polyhedron, region: Polyhedron) -> bool:
    """Whether the projection of ``lifted`` lies in ``region`` (LP per facet)."""
    return poly_subset(lifted, region.embed(lifted.variables))


@dataclass
class GroupHull:
    group: Group
    hull: Polyhedron
    members: list  # [(DecodingChoice, Polyhedron)] that were projected
    skipped: int = 0
    total: int = 0
    contributors: list = field(default_factory=list)


def group_hull(group: Group, compression: str, choice_filter=None,
               caps: Caps | None = None, stats: dict | None = None) -> GroupHull:
    """Convex hull of the group's union over decoding choices (fixed capacities).

    A choice is projected only if its lifted system is not already inside the
    running hull, so the result equals the hull of the full union.
    """
    if group.symbolic:
        raise ValueError("group_hull needs fixed capacities")
    caps = caps or Caps()
    choices = _choices(group, choice_filter, caps)
    members = []
    pts = set()
    hull = None
    skipped = 0
    for d in _search_order(choices):
        lifted, v = lifted_system(group, d, compression)
        if hull is not None and _lifted_inside(lifted, hull):
            skipped += 1
            continue
        region = project(lifted, v.variables, caps, stats)
        members.append((d, region))
        pts.update(vertices(region))
        hull = hull_of_points(pts, region.variables)
        pts = set(vertices(hull, check_bounded=False))
    if hull is None:
        rates = [group.rate_var(j) for j in group.receivers]
        hull = Polyhedron.empty(rates)
    contributors = [d for d, reg in members if set(vertices(reg, check_bounded=False)) & pts]
    return GroupHull(group, hull, members, skipped, len(choices), contributors)


def symbolic_members(group: Group, compression: str, choice_filter=None,
                     caps: Caps | None = None, stats: dict | None = None) -> list:
    """Projected members over (group rates, split capacities), with members
    contained in another member removed.  Returns ``[(choice, polyhedron)]``."""
    caps = caps or Caps()
    kept = []
    for d in _search_order(_choices(group, choice_filter, caps)):
        lifted, v = lifted_system(group, d, compression)
        if any(_lifted_inside(lifted, reg) for _, reg in kept):
            continue
        region = project(lifted, v.variables, caps, stats)
        kept = [(e, reg) for e, reg in kept if not poly_subset(reg, region)]
        kept.append((d, region))
    return kept


def _coupled_variables(inst: Instance, groups) -> tuple:
    R = list(rate_vars(inst.num_messages))
    local = [g.rate_var(j) for g in groups for j in g.receivers]
    splits = [VarId.split(k, g.senders) for g in groups if g.symbolic for k in g.senders]
    return R, local, splits


def combine_members(inst: Instance, groups, members, caps: Caps | None = None,
                    stats: dict | None = None) -> Polyhedron:
    """Conjoin one polyhedron per group, split each R_j across the groups
    holding message j, impose admissibility of split capacities, and project
    onto R_1..R_N."""
    R, local, splits = _coupled_variables(inst, groups)
    variables = R + local + splits
    col = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    rows = []
    for m in members:
        idx = [col[v] for v in m.variables]
        for r in m.rows:
            row = [0] * (n + 1)
            for i, c in zip(idx, r[:-1]):
                row[i] = c
            row[-1] = r[-1]
            rows.append(row)
    # substitute the first group's share: r_{j,P1} = R_j - sum of other shares
    holders = {}
    for g in groups:
        for j in g.receivers:
            holders.setdefault(j, []).append(g.rate_var(j))
    for j, shares in holders.items():
        head, rest = col[shares[0]], [col[s] for s in shares[1:]]
        rj = col[R[j - 1]]
        for row in rows:
            c = row[head]
            if c:
                row[head] = 0
                row[rj] += c
                for t in rest:
                    row[t] -= c
    # admissibility of split capacities
    for k in range(1, inst.num_senders + 1):
        mine = [col[VarId.split(k, g.senders)] for g in groups if g.symbolic and k in g.senders]
        if mine:
            row = [0] * (n + 1)
            for t in mine:
                row[t] = 1
            row[-1] = inst.C(k)
            rows.append(row)
            for t in mine:
                neg = [0] * (n + 1)
                neg[t] = -1
                rows.append(neg)
    for v in R:
        neg = [0] * (n + 1)
        neg[col[v]] = -1
        rows.append(neg)
    poly = Polyhedron(variables, rows)
    heads = {h[0] for h in holders.values()}
    poly = poly.drop_columns([v for v in variables if v not in heads])
    drop = [v for v in local if v not in heads] + splits
    return project(poly, drop, caps, stats)


def lifted_plan(inst: Instance, groups, choices, compression: str) -> Polyhedron:
    """One lifted system for a whole plan and one decoding choice per group.

    Lives over R_1..R_N plus every group's rates, composite rates and split
    capacities; the coupling R_j = sum of shares is imposed as two rows and
    split capacities get their admissibility rows.  Nothing is projected.
    """
    systems = [lifted_system(g, d, compression)[0] for g, d in zip(groups, choices)]
    R = list(rate_vars(inst.num_messages))
    variables = R + [v for p in systems for v in p.variables]
    col = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    rows = []
    for p in systems:
        idx = [col[v] for v in p.variables]
        for r in p.rows:
            row = [0] * (n + 1)
            for i, c in zip(idx, r[:-1]):
                row[i] = c
            row[-1] = r[-1]
            rows.append(row)
    for j in range(1, inst.num_messages + 1):
        row = [0] * (n + 1)
        row[col[R[j - 1]]] = 1
        for g in groups:
            if j in g.messages:
                row[col[g.rate_var(j)]] = -1
        rows.append(row)
        rows.append([-c for c in row])
    for k in range(1, inst.num_senders + 1):
        mine = [col[VarId.split(k, g.senders)] for g in groups if g.symbolic and k in g.senders]
        if mine:
            row = [0] * (n + 1)
            for t in mine:
                row[t] = 1
            row[-1] = inst.C(k)
            rows.append(row)
    return Polyhedron(variables, rows).with_nonnegativity()


def combine_groups(plan: GroupingPlan, unions, inst: Instance,
                   caps: Caps | None = None, stats: dict | None = None) -> RegionUnion:
    """One region over R_1..R_N per tuple of members (one member per group)."""
    caps = caps or Caps()
    groups = plan.group_objects(inst)
    unions = [list(u.members if isinstance(u, RegionUnion) else u) for u in unions]
    if len(unions) != len(groups):
        raise ValueError("need one union per group")
    count = prod(len(u) for u in unions)
    if count > caps.tuples:
        raise ChoiceLimitError(f"{count} member combinations exceed the cap {caps.tuples}")
    out, labels = [], []
    for idx in itertools.product(*(range(len(u)) for u in unions)):
        members = [u[i] for u, i in zip(unions, idx)]
        out.append(combine_members(inst, groups, members, caps, stats))
        labels.append(idx)
    return RegionUnion(out, labels)
