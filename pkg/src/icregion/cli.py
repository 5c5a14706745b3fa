"""Command-line front end: ``icregion {mais,inner,compare,corpus,point}``.

Exit codes: 0 success, 1 usage or input error, 2 verdict or expectation
mismatch, 3 a resource cap stopped the computation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import GAP, TIGHT, UNKNOWN, format_point, relation, report
from .composite import (
    SCHEMES,
    Caps,
    ChoiceLimitError,
    PlanError,
    PlanFileError,
    all_in_one,
    auto_plans,
    load_decoding,
    load_plans,
    scheme_region,
    scheme_verify,
)
from .composite.groups import DEFAULT_CHOICE_CAP, DEFAULT_PLAN_CAP
from .composite.regions import DEFAULT_TUPLE_CAP
from .geometry import (
    ProjectionLimitError,
    RegionFormatError,
    UnboundedError,
    contains_point,
    dumps_region,
    format_rational,
    load_region,
    parse_rational,
)
from .geometry.fme import DEFAULT_FME_CAP
from .geometry.inequality import format_lhs, nonneg_var
from .instance import InstanceError, load_instance
from .outer import DEFAULT_ACYCLIC_LIMIT, EnumerationLimitError, mais_region

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_CAP = 0, 1, 2, 3

# groups with more senders than this default to verify mode
VERIFY_SENDER_THRESHOLD = 8

_CAP_ENV = {
    "choices": ("ICREGION_MAX_CHOICES", DEFAULT_CHOICE_CAP),
    "fme": ("ICREGION_MAX_FME", DEFAULT_FME_CAP),
    "tuples": ("ICREGION_MAX_TUPLES", DEFAULT_TUPLE_CAP),
    "plans": ("ICREGION_MAX_PLANS", DEFAULT_PLAN_CAP),
    "lifted": ("ICREGION_MAX_LIFTED", 256),
}


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        val = int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None
    if val < 1:
        raise UsageError(f"{name} must be positive")
    return val


def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if val < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def _caps(args) -> Caps:
    vals = {}
    for key, (env, default) in _CAP_ENV.items():
        flag = getattr(args, f"max_{key}", None)
        vals[key] = flag if flag is not None else _env_int(env, default)
    return Caps(**vals)


def _resolve(path: str, base: Path | None = None) -> Path:
    p = Path(path)
    if p.exists() or base is None:
        return p
    alt = base / path
    return alt if alt.exists() else p


def _instance_path(arg: str) -> Path:
    """An instance file, or the name of a bundled corpus entry (``eg2``)."""
    p = Path(arg)
    if p.exists():
        return p
    from .corpus import data_root

    cand = data_root() / p.stem / "instance.json"
    if p.parent == Path(".") and cand.exists():
        return cand
    return p


def _load_instance(arg: str):
    path = _instance_path(arg)
    inst = load_instance(path)
    if path.name == "instance.json" and not inst.name.startswith(path.parent.name):
        from dataclasses import replace

        inst = replace(inst, name=path.parent.name)
    return inst, path.parent


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _region_text(poly) -> str:
    lines = []
    for r in poly.rows:
        if nonneg_var(r) is None:
            coeffs = [(v, c) for v, c in zip(poly.variables, r[:-1]) if c]
            lines.append(f"{format_lhs(coeffs)} <= {format_rational(r[-1])}")
    names = ", ".join(v.name for v in poly.variables)
    lines.append(f"all of {names} >= 0")
    return "\n".join(lines) + "\n"


# -- mais --------------------------------------------------------------------

def cmd_mais(args) -> int:
    inst, _ = _load_instance(args.instance)
    region = mais_region(inst, limit=args.max_messages)
    if args.format == "text":
        _write(_region_text(region), args.output)
    else:
        _write(dumps_region(region), args.output)
    return EXIT_OK


# -- inner -------------------------------------------------------------------

def _plans_arg(args, inst, base):
    if args.plan in (None, "auto") and args.scheme not in ("dcc-a", "ccc-a"):
        return "auto", None, None
    if args.plan in (None, "auto", "all-in-one"):
        plan = all_in_one(inst.num_senders)
        return [plan], [list(plan.groups)], None
    return load_plans(_resolve(args.plan, base), inst.num_senders)


def _largest_group(inst, scheme, plans, caps, policy) -> int:
    if plans == "auto":
        plans, _ = auto_plans(inst, scheme, caps, policy)
    return max(len(g) for p in plans for g in p.groups)


def _outer(args, inst, base):
    if args.outer in (None, "mais"):
        return mais_region(inst), "mais"
    return load_region(_resolve(args.outer, base)), args.outer


def cmd_inner(args) -> int:
    inst, base = _load_instance(args.instance)
    caps = _caps(args)
    plans, ordered, hint = _plans_arg(args, inst, base)
    scheme = args.scheme or hint
    if scheme is None:
        raise UsageError("--scheme is required (the plan file names none)")
    if scheme not in SCHEMES:
        raise UsageError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}")
    decoding = None
    if args.decoding:
        decoding = load_decoding(_resolve(args.decoding, base), inst, ordered)
    outer, outer_name = _outer(args, inst, base)

    mode, target = args.mode, None
    if mode.startswith("verify:"):
        mode, target = "verify", mode[len("verify:"):]
        if not target:
            raise UsageError("--mode verify:TARGET needs a target region file")
    elif mode == "auto":
        big = _largest_group(inst, scheme, plans, caps, args.policy)
        if big > VERIFY_SENDER_THRESHOLD:
            raise UsageError(
                f"a group has {big} senders; projection is impractical at this size. "
                "Pass --mode verify:TARGET (or --mode project to insist)"
            )
        mode = "project"
    elif mode == "verify":
        raise UsageError("--mode verify needs a target: --mode verify:TARGET")
    elif mode != "project":
        raise UsageError(f"unknown mode {mode!r}")

    if mode == "verify":
        rep = scheme_verify(inst, scheme, load_region(_resolve(target, base)), plans, decoding,
                            caps, args.policy, outer=outer, outer_name=outer_name)
    else:
        rep = scheme_region(inst, scheme, plans, decoding, caps, args.policy,
                            outer=outer, outer_name=outer_name)
    sys.stdout.write(report(rep, args.format, timings=args.timings))
    if args.output and mode == "project":
        Path(args.output).write_text(dumps_region(rep.region), encoding="utf-8")
    if rep.verified is False:
        return EXIT_MISMATCH
    if args.expect and rep.verdict != args.expect:
        print(f"icregion: verdict {rep.verdict}, expected {args.expect}", file=sys.stderr)
        return EXIT_MISMATCH
    if any(str(p.get("status", "")).startswith("skipped") for p in rep.plans):
        return EXIT_CAP
    return EXIT_OK


# -- compare -----------------------------------------------------------------

_REL_TEXT = {
    "equal": "the regions are equal",
    "a⊂b": "A is strictly contained in B",
    "b⊂a": "B is strictly contained in A",
    "incomparable": "neither region contains the other",
}


def cmd_compare(args) -> int:
    a, b = load_region(args.a), load_region(args.b)
    rel, wit = relation(a, b)
    names = [v.name for v in a.variables]
    if args.format == "json":
        out = {
            "relation": rel,
            "witnesses": {
                k: {n: format_rational(x) for n, x in zip(names, p)} for k, p in sorted(wit.items())
            },
        }
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        lines = [f"relation: {rel} ({_REL_TEXT[rel]})"]
        if "b-a" in wit:
            lines.append(f"in B, not in A: {format_point(wit['b-a'])}")
        if "a-b" in wit:
            lines.append(f"in A, not in B: {format_point(wit['a-b'])}")
        sys.stdout.write("\n".join(lines) + "\n")
    if args.expect:
        want = {"a<b": "a⊂b", "b<a": "b⊂a"}.get(args.expect, args.expect)
        if rel != want:
            return EXIT_MISMATCH
    return EXIT_OK


# -- corpus ------------------------------------------------------------------

def cmd_corpus(args) -> int:
    from .corpus import entries, run_corpus

    if args.list:
        for e in entries():
            print(f"{e.name}: {len(e.checks)} checks. {e.description}")
        return EXIT_OK
    known = {e.name for e in entries()}
    unknown = set(args.only or ()) - known
    if unknown:
        raise UsageError(f"unknown corpus entries: {', '.join(sorted(unknown))}")
    show = (lambda r: print(r.line(), flush=True)) if args.format == "text" else None
    results = run_corpus(only=args.only, include_slow=not args.skip_slow, caps=_caps(args),
                         on_result=show)
    failed = [r for r in results if not r.ok]
    if args.format == "json":
        out = [{"entry": r.entry, "check": r.check, "ok": r.ok, "detail": r.detail} for r in results]
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_MISMATCH if failed else EXIT_OK


# -- point -------------------------------------------------------------------

def _parse_point(poly, items):
    names = [v.name for v in poly.variables]
    if all("=" in s for s in items):
        vals = {}
        for s in items:
            k, v = s.split("=", 1)
            if k not in names:
                raise UsageError(f"unknown variable {k!r}")
            vals[k] = parse_rational(v)
        missing = [n for n in names if n not in vals]
        if missing:
            raise UsageError(f"no value for {', '.join(missing)}")
        return tuple(vals[n] for n in names)
    if len(items) != len(names):
        raise UsageError(f"expected {len(names)} coordinates ({', '.join(names)})")
    return tuple(parse_rational(s) for s in items)


def cmd_point(args) -> int:
    poly = load_region(args.region)
    pt = _parse_point(poly, args.coords)
    inside = contains_point(poly, pt)
    print(f"{format_point(pt)} is {'inside' if inside else 'outside'} the region")
    if not inside:
        for r in poly.rows:
            lhs = sum(c * x for c, x in zip(r[:-1], pt))
            if lhs > r[-1]:
                coeffs = [(v, c) for v, c in zip(poly.variables, r[:-1]) if c]
                print(f"  violates {format_lhs(coeffs)} <= {format_rational(r[-1])} "
                      f"(left side {format_rational(lhs)})")
    if args.expect and (args.expect == "inside") != inside:
        return EXIT_MISMATCH
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _cap_flags(p) -> None:
    g = p.add_argument_group("resource caps (flags override ICREGION_MAX_* variables)")
    g.add_argument("--max-choices", type=_positive, metavar="N",
                   help=f"decoding choices per group (default {DEFAULT_CHOICE_CAP})")
    g.add_argument("--max-fme", type=_positive, metavar="N",
                   help=f"intermediate rows in elimination (default {DEFAULT_FME_CAP})")
    g.add_argument("--max-tuples", type=_positive, metavar="N",
                   help=f"member combinations per plan (default {DEFAULT_TUPLE_CAP})")
    g.add_argument("--max-plans", type=_positive, metavar="N",
                   help=f"grouping plans searched (default {DEFAULT_PLAN_CAP})")
    g.add_argument("--max-lifted", type=_positive, metavar="N",
                   help="lifted systems in one verify certificate (default 256)")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; 2 is reserved for verdict mismatches here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(
        prog="icregion",
        description="Exact inner and outer bounds for multi-sender index coding.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mais", help="MAIS outer bound of an instance")
    p.add_argument("instance", help="instance file or corpus entry name")
    p.add_argument("-o", "--output", help="write the region here instead of stdout")
    p.add_argument("--format", choices=("region", "text"), default="region")
    p.add_argument("--max-messages", type=_positive, default=DEFAULT_ACYCLIC_LIMIT, metavar="N",
                   help=f"refuse instances with more messages (default {DEFAULT_ACYCLIC_LIMIT})")
    p.set_defaults(func=cmd_mais)

    p = sub.add_parser("inner", help="composite-coding inner bound and verdict")
    p.add_argument("instance", help="instance file or corpus entry name")
    p.add_argument("--scheme", choices=sorted(SCHEMES))
    p.add_argument("--plan", help="plan file, 'auto' (default) or 'all-in-one'")
    p.add_argument("--decoding", help="decoding-choice file")
    p.add_argument("--policy", choices=("default", "exhaustive"), default="default",
                   help="link-sender plan library used by --plan auto")
    p.add_argument("--mode", default="auto",
                   help="project, verify:TARGET, or auto (project unless a group "
                        f"has more than {VERIFY_SENDER_THRESHOLD} senders)")
    p.add_argument("--outer", help="outer region file, or 'mais' (default)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timings", action="store_true", help="include wall-clock statistics")
    p.add_argument("--expect", choices=(TIGHT, GAP, UNKNOWN),
                   help="exit 2 unless the verdict matches")
    p.add_argument("-o", "--output", help="also write the computed region file here")
    _cap_flags(p)
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("compare", help="exact relation between two region files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--expect", choices=("equal", "a⊂b", "b⊂a", "a<b", "b<a", "incomparable"))
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("corpus", help="run the bundled examples against their expectations")
    p.add_argument("--only", action="append", metavar="NAME", help="run just this entry")
    p.add_argument("--skip-slow", action="store_true", help="skip checks marked slow")
    p.add_argument("--list", action="store_true", help="list entries and exit")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _cap_flags(p)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("point", help="membership of a rational point in a region")
    p.add_argument("region")
    p.add_argument("coords", nargs="+", help="values in variable order, or NAME=VALUE pairs")
    p.add_argument("--expect", choices=("inside", "outside"))
    p.set_defaults(func=cmd_point)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    def fail(code, msg):
        print(f"icregion: {msg}", file=sys.stderr)
        return code

    try:
        return args.func(args)
    except UsageError as exc:
        return fail(EXIT_USAGE, f"error: {exc}")
    except (InstanceError, RegionFormatError, PlanFileError, PlanError) as exc:
        return fail(EXIT_USAGE, f"error: {exc}")
    except (ChoiceLimitError, ProjectionLimitError, EnumerationLimitError) as exc:
        return fail(EXIT_CAP, f"resource cap reached: {exc}")
    except UnboundedError as exc:
        return fail(EXIT_USAGE, f"error: {exc}")
    except (OSError, ValueError) as exc:
        return fail(EXIT_USAGE, f"error: {exc}")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
