"""Compiled vs pure-Python kernels on LP and FME workloads taken from the corpus.

    python benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

The kernel calls made while computing a few corpus regions are recorded,
then replayed against each backend.  Both backends must return identical
results on every call; the script exits nonzero if they do not.
``--end-to-end`` also times ``icregion corpus --skip-slow`` under each backend.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

from icregion import _kernels
from icregion._kernels import _pykernels
from icregion.composite import COOPERATIVE, NONCOOPERATIVE, DecodingChoice, Group, group_region
from icregion.corpus import entry


def _workloads():
    eg5 = entry("eg5").instance
    eg4 = entry("eg4").instance
    yield "eg5 {1,2,3} cooperative", Group(eg5, (1, 2, 3)), COOPERATIVE, None
    yield "eg5 {1,2} symbolic", Group(eg5, (1, 2), symbolic=True), COOPERATIVE, None
    d = DecodingChoice.of({1: {1, 2}, 2: {2}, 3: {3, 5}, 4: {4}, 5: {1, 5}})
    yield "eg4 all-in-one non-cooperative", Group(eg4, (1, 2, 3, 4)), NONCOOPERATIVE, d


def record():
    """Run the workloads once, capturing every kernel call's arguments."""
    calls = {"simplex": [], "combine_pairs": []}
    orig_s, orig_c = _kernels.simplex, _kernels.combine_pairs

    def rec_s(A, b, c):
        calls["simplex"].append(([list(r) for r in A], list(b), list(c)))
        return orig_s(A, b, c)

    def rec_c(rows, pairs, col):
        calls["combine_pairs"].append((list(rows), list(pairs), col))
        return orig_c(rows, pairs, col)

    _kernels.simplex, _kernels.combine_pairs = rec_s, rec_c
    try:
        for name, g, comp, d in _workloads():
            d = d or DecodingChoice.of({j: {j} for j in g.receivers})
            group_region(g, d, comp)
    finally:
        _kernels.simplex, _kernels.combine_pairs = orig_s, orig_c
    return calls


def _time(fn, args, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(*a) for a in args]
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def _end_to_end():
    rows = []
    for label, env in (("compiled", {}), ("python", {"ICREGION_PURE_PYTHON": "1"})):
        t0 = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "icregion.cli", "corpus", "--skip-slow"],
                              env={**os.environ, **env}, capture_output=True, text=True)
        rows.append((label, time.perf_counter() - t0, proc.returncode))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions (best is kept)")
    ap.add_argument("--end-to-end", action="store_true", help="also time the fast corpus run")
    args = ap.parse_args(argv)

    compiled = _kernels._compiled
    if compiled is None:
        print("compiled kernels are not available; nothing to compare", file=sys.stderr)
        return 1
    calls = record()
    print(f"recorded {len(calls['simplex'])} simplex calls, "
          f"{len(calls['combine_pairs'])} combine_pairs calls")
    print(f"{'kernel':<15}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    ok = True
    for kernel in ("simplex", "combine_pairs"):
        py_t, py_out = _time(getattr(_pykernels, kernel), calls[kernel], args.repeat)
        # the dispatcher retries overflowing calls in Python, as in real use
        c_t, c_out = _time(getattr(_kernels, kernel), calls[kernel], args.repeat)
        if py_out != c_out:
            ok = False
            print(f"{kernel}: backends disagree", file=sys.stderr)
        print(f"{kernel:<15}{py_t:>12.3f}{c_t:>14.3f}{py_t / c_t:>9.1f}x")
    if args.end_to_end:
        for label, dt, code in _end_to_end():
            print(f"corpus --skip-slow [{label}]: {dt:.1f}s (exit {code})")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
