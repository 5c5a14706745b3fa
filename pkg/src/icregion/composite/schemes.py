"""The six coding schemes: compression mode crossed with grouping mode."""
from __future__ import annotations

import itertools
import time
from math import prod

from ..analysis import RegionReport, verify_region_equals
from ..geometry import hull_of_union, vertices
from ..geometry.lp import counters
from ..geometry.variables import rate_vars
from ..instance import Instance
from .groups import (
    ALL_IN_ONE,
    COOPERATIVE,
    LINK_SENDER,
    NONCOOPERATIVE,
    SENDER_PARTITION,
    ChoiceLimitError,
    GroupingPlan,
    enumerate_decoding_choices,
    all_in_one,
    enumerate_link_sender_plans,
    enumerate_sender_partitions,
)
from .regions import (
    Caps,
    combine_groups,
    combine_members,
    group_hull,
    lifted_plan,
    symbolic_members,
)

SCHEMES = {
    "dcc-a": (NONCOOPERATIVE, ALL_IN_ONE),
    "dcc": (NONCOOPERATIVE, SENDER_PARTITION),
    "mdcc": (NONCOOPERATIVE, LINK_SENDER),
    "ccc-a": (COOPERATIVE, ALL_IN_ONE),
    "ccc-s": (COOPERATIVE, SENDER_PARTITION),
    "ccc-ls": (COOPERATIVE, LINK_SENDER),
}


def scheme_spec(scheme: str) -> tuple:
    try:
        return SCHEMES[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}") from None


def auto_plans(inst: Instance, scheme: str, caps: Caps | None = None,
               policy: str = "default") -> tuple:
    """Plans searched when none are given: ``(plans, covers_whole_family)``."""
    caps = caps or Caps()
    _, grouping = scheme_spec(scheme)
    K = inst.num_senders
    if grouping == ALL_IN_ONE:
        return [all_in_one(K)], True
    if grouping == SENDER_PARTITION:
        parts = enumerate_sender_partitions(K)
        if len(parts) > caps.plans:
            raise ChoiceLimitError(f"{len(parts)} sender partitions exceed the cap {caps.plans}")
        return [GroupingPlan(ALL_IN_ONE if len(p) == 1 else SENDER_PARTITION, p) for p in parts], True
    plans = enumerate_link_sender_plans(K, policy, caps.plans)
    return plans, policy == "exhaustive"


def _plan_for_scheme(plan: GroupingPlan, grouping: str) -> GroupingPlan:
    # Plans may be written with a scheme name or a loose mode; settle the mode
    # from the groups so validation applies the right rules.
    if len(plan.groups) == 1:
        return GroupingPlan(ALL_IN_ONE, plan.groups)
    if grouping == LINK_SENDER:
        return GroupingPlan(LINK_SENDER, plan.groups)
    return GroupingPlan(SENDER_PARTITION, plan.groups)


class _Evaluator:
    def __init__(self, inst, compression, decoding, caps, stats):
        self.inst = inst
        self.compression = compression
        self.decoding = decoding or {}
        self.caps = caps
        self.stats = stats
        self.hulls = {}
        self.symbolic = {}

    def choices_for(self, group):
        return self.decoding.get(group.senders)

    def hull(self, group):
        if group.senders not in self.hulls:
            gh = group_hull(group, self.compression, self.choices_for(group), self.caps, self.stats)
            self.stats["choices_total"] = self.stats.get("choices_total", 0) + gh.total
            self.stats["choices_projected"] = self.stats.get("choices_projected", 0) + len(gh.members)
            self.hulls[group.senders] = gh
        return self.hulls[group.senders]

    def sym_members(self, group):
        if group.senders not in self.symbolic:
            mem = symbolic_members(group, self.compression, self.choices_for(group), self.caps, self.stats)
            self.symbolic[group.senders] = mem
        return self.symbolic[group.senders]

    def evaluate(self, plan: GroupingPlan):
        groups = plan.group_objects(self.inst)
        info = {"plan": str(plan), "mode": plan.mode, "groups": []}
        if not any(g.symbolic for g in groups):
            hulls = [self.hull(g) for g in groups]
            region = combine_members(self.inst, groups, [h.hull for h in hulls], self.caps, self.stats)
            for h in hulls:
                info["groups"].append({
                    "senders": list(h.group.senders),
                    "choices": h.total,
                    "projected": len(h.members),
                    "skipped": h.skipped,
                    "contributors": [str(d) for d in h.contributors],
                })
            return region, info
        members = [self.sym_members(g) for g in groups]
        union = combine_groups(plan, [[m for _, m in mem] for mem in members],
                               self.inst, self.caps, self.stats)
        region = hull_of_union(union)
        for g, mem in zip(groups, members):
            info["groups"].append({
                "senders": list(g.senders),
                "symbolic": True,
                "members": len(mem),
                "choices": [str(d) for d, _ in mem],
            })
        return region, info


def scheme_region(inst: Instance, scheme: str, plans="auto", decoding=None,
                  caps: Caps | None = None, policy: str = "default",
                  outer=None, outer_name: str = "mais") -> RegionReport:
    """Inner-bound region of ``scheme`` as the hull over all searched plans.

    ``plans`` is ``"auto"`` or a list of GroupingPlans.  ``decoding`` maps a
    sender tuple to the decoding choices allowed for that group (groups not
    listed are searched exhaustively).  If ``outer`` is given, the report
    carries a verdict against it.
    """
    compression, _ = scheme_spec(scheme)
    caps = caps or Caps()
    t0 = time.perf_counter()
    lp0 = counters["lp"]
    stats = {}
    plan_list, exhaustive = _plan_list(inst, scheme, plans, caps, policy)
    ev = _Evaluator(inst, compression, decoding, caps, stats)
    regions, infos = [], []
    for plan in plan_list:
        try:
            region, info = ev.evaluate(plan)
        except ChoiceLimitError as exc:
            exhaustive = False
            infos.append({"plan": str(plan), "mode": plan.mode, "status": f"skipped: {exc}",
                          "contributed": False})
            continue
        info["status"] = "ok"
        regions.append(region)
        infos.append(info)
    if not regions:
        raise ChoiceLimitError("every plan exceeded the enumeration caps")
    hull = hull_of_union(regions) if len(regions) > 1 else regions[0]
    hull_pts = set(vertices(hull, check_bounded=False))
    k = 0
    for info in infos:
        if info["status"] == "ok":
            info["contributed"] = bool(set(vertices(regions[k], check_bounded=False)) & hull_pts)
            k += 1
    stats["plans"] = len(plan_list)
    stats["plans_evaluated"] = len(regions)
    stats["facets"] = len(hull.facet_rows())
    stats["lp_calls"] = counters["lp"] - lp0
    stats["elapsed_seconds"] = time.perf_counter() - t0
    rep = RegionReport(inst.name or "instance", scheme, hull, infos, exhaustive, stats=stats)
    if outer is not None:
        rep.assess(outer, outer_name)
    return rep


def _plan_list(inst, scheme, plans, caps, policy):
    _, grouping = scheme_spec(scheme)
    if plans == "auto":
        plan_list, exhaustive = auto_plans(inst, scheme, caps, policy)
    else:
        plan_list = [_plan_for_scheme(p, grouping) for p in plans]
        exhaustive = True
    for p in plan_list:
        p.validate(inst.num_senders)
    return plan_list, exhaustive


def scheme_verify(inst: Instance, scheme: str, target, plans="auto", decoding=None,
                  caps: Caps | None = None, policy: str = "default",
                  outer=None, outer_name: str = "mais") -> RegionReport:
    """Certify that the scheme's hull equals ``target`` without projecting.

    Every plan and every tuple of decoding choices (one per group) yields one
    lifted system; the target is certified against the hull of all of them.
    """
    compression, _ = scheme_spec(scheme)
    caps = caps or Caps()
    decoding = decoding or {}
    t0 = time.perf_counter()
    lp0 = counters["lp"]
    plan_list, exhaustive = _plan_list(inst, scheme, plans, caps, policy)
    members, infos = [], []
    for plan in plan_list:
        groups = plan.group_objects(inst)
        per = []
        for g in groups:
            given = decoding.get(g.senders)
            per.append(given if given is not None else enumerate_decoding_choices(g, caps.choices))
        count = prod(len(c) for c in per)
        if len(members) + count > caps.lifted:
            raise ChoiceLimitError(
                f"{len(members) + count} lifted systems exceed the cap {caps.lifted}"
            )
        for combo in itertools.product(*per):
            members.append(lifted_plan(inst, groups, combo, compression))
        infos.append({"plan": str(plan), "mode": plan.mode, "status": "ok",
                      "lifted_systems": count, "contributed": True,
                      "groups": [{"senders": list(g.senders), "symbolic": g.symbolic,
                                  "choices": [str(d) for d in c]} for g, c in zip(groups, per)]})
    rates = tuple(rate_vars(inst.num_messages))
    if set(target.variables) != set(rates):
        raise ValueError("target region must be over R1..RN")
    target = target.reorder(rates)
    ok, certs = verify_region_equals(members, target)
    stats = {
        "plans": len(plan_list),
        "lifted_systems": len(members),
        "lifted_columns": max(m.dim for m in members),
        "certificates": len(certs),
        "facets": len(target.facet_rows()),
        "lp_calls": counters["lp"] - lp0,
        "elapsed_seconds": time.perf_counter() - t0,
    }
    rep = RegionReport(inst.name or "instance", scheme, target, infos, exhaustive,
                       stats=stats, certificates=certs, verified=ok)
    if ok and outer is not None:
        rep.assess(outer, outer_name)
    return rep


__all__ = ["SCHEMES", "auto_plans", "scheme_region", "scheme_spec", "scheme_verify"]
