"""Kernel dispatch: compiled module when available, pure Python otherwise.

Set ``ICREGION_PURE_PYTHON=1`` to force the fallback.  The compiled kernels
work in fixed-width integers and raise OverflowError when an entry outgrows
them; the call is then repeated with the arbitrary-precision fallback, so
results never depend on which backend ran.
"""
import os

from . import _pykernels
from ._pykernels import INFEASIBLE, OPTIMAL, UNBOUNDED

_compiled = None
if not os.environ.get("ICREGION_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

__all__ = ["BACKEND", "OPTIMAL", "UNBOUNDED", "INFEASIBLE", "simplex", "combine_pairs"]


def simplex(A, b, c):
    if _compiled is not None:
        try:
            return _compiled.simplex(A, b, c)
        except OverflowError:
            pass
    return _pykernels.simplex(A, b, c)


def combine_pairs(rows, pairs, col):
    if _compiled is not None:
        try:
            return _compiled.combine_pairs(rows, pairs, col)
        except OverflowError:
            pass
    return _pykernels.combine_pairs(rows, pairs, col)
