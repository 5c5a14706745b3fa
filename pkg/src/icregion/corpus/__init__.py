"""Bundled worked examples and the checks that run against them."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from ..analysis import relation
from ..composite import (
    COOPERATIVE,
    Caps,
    Group,
    all_in_one,
    group_region,
    load_decoding,
    load_plans,
    scheme_region,
    scheme_verify,
)
from ..geometry import (
    Polyhedron,
    contains_point,
    load_region,
    parse_rational,
    remove_redundant,
)
from ..geometry.variables import VarId, rate_vars
from ..instance import Instance, load_instance
from ..outer import mais_region

KINDS = ("mais", "group", "inner", "verify", "compare")


def data_root() -> Path:
    return Path(str(resources.files(__package__) / "data"))


@dataclass
class CorpusEntry:
    name: str
    path: Path
    description: str = ""
    checks: list = field(default_factory=list)

    @property
    def instance(self) -> Instance:
        return replace(load_instance(self.path / "instance.json"), name=self.name)

    def file(self, rel: str) -> Path:
        return self.path / rel

    def region(self, rel: str) -> Polyhedron:
        if rel == "@mais":
            return mais_region(self.instance)
        return load_region(self.path / rel)

    def check(self, check_id: str) -> dict:
        for c in self.checks:
            if c["id"] == check_id:
                return c
        raise KeyError(f"{self.name} has no check {check_id!r}")


def load_entry(path) -> CorpusEntry:
    path = Path(path)
    man = json.loads((path / "manifest.json").read_text())
    checks = man.get("checks", [])
    for c in checks:
        if c.get("kind") not in KINDS:
            raise ValueError(f"{path.name}: check {c.get('id')!r} has unknown kind {c.get('kind')!r}")
    return CorpusEntry(man.get("name", path.name), path, man.get("description", ""), checks)


def entries(root=None) -> list:
    root = Path(root) if root is not None else data_root()
    return [load_entry(p) for p in sorted(root.iterdir()) if (p / "manifest.json").is_file()]


def entry(name: str, root=None) -> CorpusEntry:
    for e in entries(root):
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")


@dataclass
class CheckResult:
    entry: str
    check: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    region: Polyhedron | None = None
    report: object = None

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        extra = f": {self.detail}" if self.detail else ""
        return f"{mark} {self.entry}/{self.check} ({self.seconds:.2f}s){extra}"


def _point(raw) -> tuple:
    return tuple(parse_rational(x) for x in raw)


def _same(computed: Polyhedron, expected: Polyhedron) -> bool:
    # Equality of irredundant canonical systems: stronger than set equality
    # only in that it also fixes the written form.
    if set(computed.variables) != set(expected.variables):
        return False
    computed = computed.reorder(expected.variables)
    return remove_redundant(computed) == remove_redundant(expected)


def _plans(e: CorpusEntry, inst: Instance, spec):
    if spec in (None, "auto"):
        return "auto", None
    if spec == "all-in-one":
        plan = all_in_one(inst.num_senders)
        return [plan], [list(plan.groups)]
    plans, ordered, _ = load_plans(e.file(spec), inst.num_senders)
    return plans, ordered


def _run_mais(e, c, caps):
    region = mais_region(e.instance)
    ok = _same(region, e.region(c["expected"]))
    return ok, "" if ok else "MAIS region differs from the expected file", region, None


def _run_group(e, c, caps):
    inst = e.instance
    g = Group(inst, tuple(c["senders"]), bool(c.get("symbolic", False)))
    dec = load_decoding(e.file(c["decoding"]), inst, [[g.senders]])
    choices = dec[g.senders]
    if len(choices) != 1:
        raise ValueError("group checks take exactly one decoding choice")
    region = group_region(g, choices[0], c.get("compression", COOPERATIVE), caps)
    expected = e.region(c["expected"])
    if not g.symbolic and set(expected.variables) == set(rate_vars(inst.num_messages)):
        # expected file written over plain rates R_j
        region = region.relabel({g.rate_var(j): VarId.rate(j) for j in g.receivers})
    ok = _same(region.with_nonnegativity(), expected)
    return ok, "" if ok else "group region differs from the expected file", region, None


def _verdict_detail(c, rep) -> list:
    problems = []
    want = c.get("verdict")
    if want is not None and rep.verdict != want:
        problems.append(f"verdict {rep.verdict}, expected {want}")
    if "witness" in c and rep.witness != _point(c["witness"]):
        problems.append(f"witness {rep.witness}, expected {_point(c['witness'])}")
    return problems


def _run_inner(e, c, caps):
    inst = e.instance
    plans, ordered = _plans(e, inst, c.get("plan"))
    dec = load_decoding(e.file(c["decoding"]), inst, ordered) if c.get("decoding") else None
    outer = e.region(c.get("outer", "@mais"))
    rep = scheme_region(inst, c["scheme"], plans, dec, caps, c.get("policy", "default"),
                        outer=outer, outer_name=c.get("outer", "mais"))
    problems = []
    if "expected" in c and not _same(rep.region, e.region(c["expected"])):
        problems.append("region differs from the expected file")
    problems += _verdict_detail(c, rep)
    for raw in c.get("excludes", []):
        if contains_point(rep.region, _point(raw)):
            problems.append(f"region contains {raw}")
    return not problems, "; ".join(problems), rep.region, rep


def _run_verify(e, c, caps):
    inst = e.instance
    plans, ordered = _plans(e, inst, c.get("plan"))
    dec = load_decoding(e.file(c["decoding"]), inst, ordered) if c.get("decoding") else None
    outer = e.region(c.get("outer", "@mais"))
    rep = scheme_verify(inst, c["scheme"], e.region(c["target"]), plans, dec, caps,
                        c.get("policy", "default"), outer=outer,
                        outer_name=c.get("outer", "mais"))
    problems = [] if rep.verified else ["certificates failed"]
    problems += _verdict_detail(c, rep)
    return not problems, "; ".join(problems), rep.region, rep


def _run_compare(e, c, caps):
    rel, witnesses = relation(e.region(c["a"]), e.region(c["b"]))
    problems = []
    if rel != c["relation"]:
        problems.append(f"relation {rel}, expected {c['relation']}")
    if "witness" in c:
        got = witnesses.get("b-a")
        if got != _point(c["witness"]):
            problems.append(f"witness {got}, expected {_point(c['witness'])}")
    return not problems, "; ".join(problems), None, None


_RUNNERS = {
    "mais": _run_mais,
    "group": _run_group,
    "inner": _run_inner,
    "verify": _run_verify,
    "compare": _run_compare,
}


def run_check(e: CorpusEntry, c: dict, caps: Caps | None = None) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail, region, rep = _RUNNERS[c["kind"]](e, c, caps or Caps())
    return CheckResult(e.name, c["id"], ok, detail, time.perf_counter() - t0, region, rep)


def run_corpus(only=None, include_slow: bool = True, caps: Caps | None = None,
               root=None, on_result=None) -> list:
    """Run every check of the selected entries; ``on_result`` sees each result."""
    out = []
    for e in entries(root):
        if only and e.name not in only:
            continue
        for c in e.checks:
            if c.get("slow") and not include_slow:
                continue
            res = run_check(e, c, caps)
            out.append(res)
            if on_result is not None:
                on_result(res)
    return out


__all__ = [
    "CheckResult",
    "CorpusEntry",
    "data_root",
    "entries",
    "entry",
    "load_entry",
    "run_check",
    "run_corpus",
]
