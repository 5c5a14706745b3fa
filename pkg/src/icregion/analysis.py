"""Certification of inner bounds against outer bounds, and report rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import (
    Polyhedron,
    UnboundedError,
    contains_point,
    format_rational,
    poly_equal,
    poly_subset,
    region_to_dict,
    vertices,
    violated_row,
)
from .geometry.inequality import canonical_row, format_lhs, nonneg_var
from .geometry.lp import INFEASIBLE, OPTIMAL, solve_rows

TIGHT, GAP, UNKNOWN = "TIGHT", "GAP", "UNKNOWN"


class CertificationError(RuntimeError):
    """The inner region is not contained in the outer region."""


@dataclass
class Certification:
    verdict: str
    witness: tuple | None = None
    source: str | None = None  # "vertex" or "separation"


def _violation(poly: Polyhedron, point) -> Fraction:
    # Largest normalized violation of any row; used to rank witnesses.
    worst = Fraction(0)
    for r in poly.rows:
        lhs = sum(c * x for c, x in zip(r[:-1], point))
        if lhs > r[-1]:
            norm = sum(abs(c) for c in r[:-1])
            worst = max(worst, (lhs - r[-1]) / norm)
    return worst


def gap_witness(inner: Polyhedron, outer: Polyhedron):
    """A point of ``outer`` outside ``inner``, or None if ``outer`` fits inside.

    Vertices of the outer region come first: the one violating the inner
    region by the widest normalized margin, ties broken by the canonical
    vertex order.  Otherwise an LP optimum separating the two serves.
    """
    if outer.variables != inner.variables:
        inner = inner.reorder(outer.variables)
    best = None
    try:
        verts = vertices(outer)
    except UnboundedError:
        verts = []
    for v in verts:
        if not contains_point(inner, v):
            score = _violation(inner, v)
            if best is None or score > best[0]:
                best = (score, v)
    if best is not None:
        return best[1], "vertex"
    hit = violated_row(outer, inner)
    if hit is None:
        return None
    row, point = hit
    if point is None:
        # unbounded violation: any feasible point strictly past the row will do
        cut = canonical_row([-c for c in row[:-1]], -(row[-1] + 1))
        point = solve_rows(list(outer.rows) + [cut], outer.dim, [0] * outer.dim).point
    return tuple(point), "separation"


def certify(inner: Polyhedron, outer: Polyhedron) -> Certification:
    """TIGHT iff the regions coincide; otherwise GAP with a witness point."""
    if poly_equal(inner, outer):
        return Certification(TIGHT)
    if not poly_subset(inner, outer):
        raise CertificationError("inner region is not contained in the outer region")
    found = gap_witness(inner, outer)
    point, source = found
    return Certification(GAP, tuple(point), source)


EQUAL, A_IN_B, B_IN_A, INCOMPARABLE = "equal", "a⊂b", "b⊂a", "incomparable"


def relation(a: Polyhedron, b: Polyhedron):
    """Exact set relation between two regions, with witnesses for strictness.

    Returns ``(relation, witnesses)``; ``witnesses["b-a"]`` is a point of b
    outside a and ``witnesses["a-b"]`` the reverse, present when they exist.
    """
    if set(a.variables) != set(b.variables):
        raise ValueError("regions are over different variables")
    b = b.reorder(a.variables)
    ab, ba = poly_subset(a, b), poly_subset(b, a)
    witnesses = {}
    if not ba:
        witnesses["b-a"] = tuple(gap_witness(a, b)[0])
    if not ab:
        witnesses["a-b"] = tuple(gap_witness(b, a)[0])
    if ab and ba:
        return EQUAL, witnesses
    if ab:
        return A_IN_B, witnesses
    if ba:
        return B_IN_A, witnesses
    return INCOMPARABLE, witnesses


@dataclass
class Certificate:
    kind: str  # "facet" or "vertex"
    subject: tuple  # target row or vertex
    ok: bool
    value: Fraction | None = None  # LP optimum for facets
    solution: tuple | None = None  # LP point in lifted coordinates


def _member_facet_ok(lifted: Polyhedron, idx, row):
    obj = [0] * lifted.dim
    for i, c in zip(idx, row[:-1]):
        obj[i] = c
    res = solve_rows(lifted.rows, lifted.dim, obj)
    good = res.status == INFEASIBLE or (res.status == OPTIMAL and res.value <= row[-1])
    return good, res


def _vertex_in_hull(members, idxs, vert):
    """One LP: is ``vert`` in the hull of the union of the members' projections?

    Each member i gets a copy y_i of its columns and a weight t_i >= 0 with
    A_i y_i <= b_i t_i, the weights sum to 1 and the projected copies sum to
    ``vert``.  With a single member this is plain feasibility with R fixed.
    """
    if len(members) == 1:
        m, idx = members[0], idxs[0]
        n = m.dim
        fix = []
        for i, x in zip(idx, vert):
            fix.append(canonical_row([1 if t == i else 0 for t in range(n)], x))
            fix.append(canonical_row([-1 if t == i else 0 for t in range(n)], -x))
        res = solve_rows(list(m.rows) + fix, n, [0] * n)
        return res.status == OPTIMAL, res.point
    offs, n = [], 0
    for m in members:
        offs.append(n)
        n += m.dim + 1  # copy of the columns, then the weight
    rows = []
    for m, o in zip(members, offs):
        w = o + m.dim
        for r in m.rows:
            row = [0] * (n + 1)
            row[o:o + m.dim] = r[:-1]
            row[w] = -r[-1]
            rows.append(tuple(row))
        neg = [0] * (n + 1)
        neg[w] = -1
        rows.append(tuple(neg))
    weights = [0] * n
    for m, o in zip(members, offs):
        weights[o + m.dim] = 1
    rows += [canonical_row(weights, 1), canonical_row([-c for c in weights], -1)]
    for k, x in enumerate(vert):
        coeffs = [0] * n
        for o, idx in zip(offs, idxs):
            coeffs[o + idx[k]] = 1
        rows += [canonical_row(coeffs, x), canonical_row([-c for c in coeffs], -x)]
    res = solve_rows(rows, n, [0] * n)
    return res.status == OPTIMAL, res.point


def verify_region_equals(lifted, target: Polyhedron):
    """Certify that projecting ``lifted`` onto the target's variables gives
    exactly ``target``, without performing the projection.

    ``lifted`` is one polyhedron or a list of them; a list stands for the
    convex hull of the union of their projections.
    (a) every target row is valid on every member (one LP per row and member);
    (b) every target vertex lies in the projected hull (one LP per vertex).
    Returns ``(ok, certificates)``.
    """
    members = [lifted] if isinstance(lifted, Polyhedron) else list(lifted)
    if not members:
        raise ValueError("nothing to verify")
    idxs = []
    for m in members:
        missing = set(target.variables) - set(m.variables)
        if missing:
            raise ValueError(f"lifted system lacks {sorted(map(str, missing))}")
        idxs.append([m.column(v) for v in target.variables])
    certs = []
    ok = True
    for row in target.rows:
        good, best, point = True, None, None
        for m, idx in zip(members, idxs):
            g, res = _member_facet_ok(m, idx, row)
            if res.optimum is not None and (best is None or res.optimum > best):
                best, point = res.optimum, res.point
            if not g:
                good, point = False, res.point
                break
        ok &= good
        certs.append(Certificate("facet", row, good, best, point))
    for vert in vertices(target):
        good, point = _vertex_in_hull(members, idxs, vert)
        ok &= good
        certs.append(Certificate("vertex", vert, good, None, point))
    return ok, certs


@dataclass
class RegionReport:
    instance: str
    scheme: str
    region: Polyhedron
    plans: list = field(default_factory=list)  # per-plan dicts
    exhaustive: bool = True
    verdict: str | None = None
    witness: tuple | None = None
    witness_source: str | None = None
    outer_name: str | None = None
    stats: dict = field(default_factory=dict)
    certificates: list | None = None
    verified: bool | None = None  # verify mode: did the certificates all pass

    def assess(self, outer: Polyhedron, outer_name: str = "mais") -> RegionReport:
        """Fill in verdict and witness against ``outer``."""
        cert = certify(self.region, outer)
        self.outer_name = outer_name
        if cert.verdict == GAP and not self.exhaustive:
            self.verdict, self.witness, self.witness_source = UNKNOWN, None, None
        else:
            self.verdict, self.witness, self.witness_source = cert.verdict, cert.witness, cert.source
        return self


def format_point(point) -> str:
    return "(" + ", ".join(format_rational(x) for x in point) + ")"


def _stats_json(stats: dict) -> dict:
    out = {}
    for k, v in sorted(stats.items()):
        if isinstance(v, Fraction):
            v = format_rational(v)
        elif isinstance(v, float):
            v = round(v, 3)
        out[k] = v
    return out


def report_dict(rep: RegionReport, *, timings: bool = True) -> dict:
    witness = None
    if rep.witness is not None:
        witness = {v.name: format_rational(x) for v, x in zip(rep.region.variables, rep.witness)}
    stats = dict(rep.stats)
    if not timings:
        stats = {k: v for k, v in stats.items() if not k.endswith("seconds")}
    out = {
        "instance": rep.instance,
        "scheme": rep.scheme,
        "verdict": rep.verdict,
        "witness": witness,
        "region": region_to_dict(rep.region),
        "stats": _stats_json(stats),
        "exhaustive": rep.exhaustive,
        "outer": rep.outer_name,
        "plans": rep.plans,
    }
    if rep.verified is not None:
        out["verified"] = rep.verified
    if rep.certificates is not None:
        out["certificates"] = [
            {
                "kind": c.kind,
                "ok": c.ok,
                "subject": [format_rational(x) for x in c.subject],
                "value": None if c.value is None else format_rational(c.value),
            }
            for c in rep.certificates
        ]
    return out


_VERDICT_TEXT = {
    TIGHT: "TIGHT: capacity region established",
    GAP: "GAP: inner bound is strictly smaller than the outer bound",
    UNKNOWN: "UNKNOWN: enumeration caps truncated the search; no gap is claimed",
}


def report(rep: RegionReport, fmt: str = "text", *, timings: bool = True) -> str:
    """Render a report as human-readable text or stable JSON."""
    if fmt == "json":
        return json.dumps(report_dict(rep, timings=timings), indent=2, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"instance: {rep.instance}", f"scheme:   {rep.scheme}"]
    facets = [r for r in rep.region.rows if nonneg_var(r) is None]
    lines.append(f"region: {len(facets)} facets (plus nonnegativity)")
    for r in facets:
        coeffs = [(v, c) for v, c in zip(rep.region.variables, r[:-1]) if c]
        lines.append(f"  {format_lhs(coeffs)} <= {format_rational(r[-1])}")
    if rep.verified is not None:
        n_ok = sum(c.ok for c in rep.certificates or ())
        n_all = len(rep.certificates or ())
        state = "certified" if rep.verified else "NOT certified"
        lines.append(f"verify: target region {state} ({n_ok}/{n_all} certificates hold)")
    if rep.verdict is not None:
        lines.append(f"verdict: {_VERDICT_TEXT[rep.verdict]}")
        if rep.outer_name:
            lines.append(f"outer bound: {rep.outer_name}")
    if rep.witness is not None:
        lines.append(f"witness: {format_point(rep.witness)} ({rep.witness_source})")
    if not rep.exhaustive:
        lines.append("search: not exhaustive")
    for p in rep.plans:
        mark = "*" if p.get("contributed") else " "
        lines.append(f" {mark} plan {p['plan']}: {p['status']}")
    for k, v in sorted(rep.stats.items()):
        if not timings and k.endswith("seconds"):
            continue
        if isinstance(v, float):
            v = f"{v:.3f}"
        lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"
