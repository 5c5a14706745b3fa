"""Hot kernels: both backends against each other and against brute force."""
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icregion import _kernels
from icregion._kernels import INFEASIBLE, OPTIMAL, UNBOUNDED, _pykernels

from oracles import brute_lp

try:
    from icregion._kernels import _ckernels
except ImportError:  # extension not built in this environment
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

small = st.integers(-4, 4)


@st.composite
def bounded_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(0, 5))
    A = [[draw(small) for _ in range(n)] for _ in range(m)]
    b = [draw(st.integers(-3, 9)) for _ in range(m)]
    # a box keeps every instance bounded so brute force applies
    for i in range(n):
        A.append([1 if j == i else 0 for j in range(n)])
        b.append(draw(st.integers(0, 6)))
    c = [draw(small) for _ in range(n)]
    return A, b, c


def _value(res):
    status, num, den, _ = res
    return Fraction(num, den) if status == OPTIMAL else status


def _check_primal(A, b, c, res):
    status, num, den, x = res
    xs = [Fraction(v, den) for v in x]
    assert all(v >= 0 for v in xs)
    for row, rhs in zip(A, b):
        assert sum(a * v for a, v in zip(row, xs)) <= rhs
    assert sum(ci * v for ci, v in zip(c, xs)) == Fraction(num, den)


@settings(max_examples=300, deadline=None)
@given(bounded_lps())
def test_python_simplex_matches_brute_force(lp):
    A, b, c = lp
    res = _pykernels.simplex(A, b, c)
    want = brute_lp(A, b, c)
    if want is None:
        assert res[0] == INFEASIBLE
    else:
        assert _value(res) == want
        _check_primal(A, b, c, res)


@needs_compiled
@settings(max_examples=300, deadline=None)
@given(bounded_lps())
def test_backends_agree_on_simplex(lp):
    A, b, c = lp
    assert _ckernels.simplex(A, b, c) == _pykernels.simplex(A, b, c)


def test_unbounded_and_infeasible():
    assert _kernels.simplex([[-1]], [0], [1])[0] == UNBOUNDED
    assert _kernels.simplex([[1], [-1]], [0, -1], [1])[0] == INFEASIBLE
    status, num, den, _ = _kernels.simplex([[1, 0], [0, 1]], [1, 1], [1, 1])
    assert status == OPTIMAL and Fraction(num, den) == 2


def test_degenerate_cycling_example():
    # Beale's cycling example; Bland's rule must terminate.
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9],
         [Fraction(1, 2), -90, Fraction(-1, 50), 3],
         [0, 0, 1, 0]]
    A = [[int(x * 100) for x in row] for row in A]
    b = [0, 0, 100]
    c = [75, -15000, 2, -600]  # objective scaled by 100
    res = _kernels.simplex(A, b, c)
    assert res[0] == OPTIMAL
    assert Fraction(res[1], res[2]) == 5  # 1/20 before scaling


@st.composite
def fm_inputs(draw):
    n = draw(st.integers(1, 4))
    rows = [tuple(draw(small) for _ in range(n + 1)) for _ in range(draw(st.integers(1, 7)))]
    col = draw(st.integers(0, n - 1))
    pos = [i for i, r in enumerate(rows) if r[col] > 0]
    neg = [i for i, r in enumerate(rows) if r[col] < 0]
    return rows, [(i, j) for i in pos for j in neg], col


def _naive_combine(rows, pairs, col):
    from math import gcd

    out = []
    for i, j in pairs:
        p, q = rows[i], rows[j]
        a, b = p[col], -q[col]
        r = [b * x + a * y for x, y in zip(p, q)]
        g = 0
        for v in r:
            g = gcd(g, v)
        out.append(tuple(v // g for v in r) if g > 1 else tuple(r))
    return out


@settings(max_examples=200, deadline=None)
@given(fm_inputs())
def test_combine_pairs_matches_naive(data):
    rows, pairs, col = data
    got = [tuple(r) for r in _pykernels.combine_pairs(rows, pairs, col)]
    assert got == _naive_combine(rows, pairs, col)
    assert all(r[col] == 0 for r in got)


@needs_compiled
@settings(max_examples=200, deadline=None)
@given(fm_inputs())
def test_backends_agree_on_combine_pairs(data):
    rows, pairs, col = data
    c = [tuple(r) for r in _ckernels.combine_pairs(rows, pairs, col)]
    p = [tuple(r) for r in _pykernels.combine_pairs(rows, pairs, col)]
    assert c == p


def test_dispatch_falls_back_on_overflow():
    big = 10 ** 30
    A = [[big, 1], [1, big]]
    b = [big, big]
    res = _kernels.simplex(A, b, [1, 1])
    assert res == _pykernels.simplex(A, b, [1, 1])
    rows = [(big, 1, 3), (-big, 2, 5)]
    assert [tuple(r) for r in _kernels.combine_pairs(rows, [(0, 1)], 0)] == _naive_combine(rows, [(0, 1)], 0)


def test_pure_python_switch():
    env = dict(os.environ, ICREGION_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import icregion._kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
