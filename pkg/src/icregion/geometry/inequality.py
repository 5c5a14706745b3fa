"""Exact rationals and canonical linear inequalities ``a.x <= b``."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .variables import VarId

_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


class RationalFormatError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"-3/2"`` and friends; floats and junk are refused."""
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise RationalFormatError(f"expected a rational string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise RationalFormatError(f"not a rational string: {text!r}")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return Fraction(s)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def canonical_row(coeffs: Sequence, rhs) -> tuple:
    """Scale ``coeffs . x <= rhs`` by a positive factor to coprime integers.

    Returns the tuple ``(*coeffs, rhs)``.  A row with no variables becomes
    ``(0, ..., 0, 0)`` if it always holds and ``(0, ..., 0, -1)`` if never.
    """
    vals = [Fraction(c) for c in coeffs]
    b = Fraction(rhs)
    if not any(vals):
        return tuple([0] * len(vals) + [0 if b >= 0 else -1])
    den = lcm(*(v.denominator for v in vals), b.denominator)
    ints = [int(v * den) for v in vals] + [int(b * den)]
    return primitive(ints)


def primitive(ints) -> tuple:
    g = 0
    for v in ints:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        return tuple(v // g for v in ints)
    return tuple(ints)


def is_trivial_row(row) -> bool:
    return not any(row[:-1]) and row[-1] >= 0


def is_infeasible_row(row) -> bool:
    return not any(row[:-1]) and row[-1] < 0


def nonneg_var(row):
    """Column index if ``row`` is ``-x_i <= 0``, else None."""
    if row[-1] != 0 or row.count(0) != len(row) - 1:
        return None
    for i, v in enumerate(row):
        if v:
            return i if v == -1 else None
    return None


def row_sort_key(row):
    # Nonnegativity rows last; otherwise by support size, support, coefficients.
    support = tuple(i for i, v in enumerate(row[:-1]) if v)
    return (nonneg_var(row) is not None, len(support), support, row[:-1], row[-1])


@dataclass(frozen=True)
class LinearInequality:
    """``sum coeffs[v] * v <= rhs`` in canonical (coprime integer) form."""

    coeffs: tuple  # ((VarId, int), ...) sorted by VarId, no zeros
    rhs: int

    @classmethod
    def of(cls, coeffs: Mapping[VarId, object], rhs) -> LinearInequality:
        items = sorted((v, Fraction(c)) for v, c in coeffs.items() if c)
        row = canonical_row([c for _, c in items], rhs)
        return cls(tuple((v, c) for (v, _), c in zip(items, row)), row[-1])

    def canonicalize(self) -> LinearInequality:
        return LinearInequality.of(dict(self.coeffs), self.rhs)

    @property
    def lhs(self) -> dict:
        return dict(self.coeffs)

    @property
    def variables(self) -> tuple:
        return tuple(v for v, _ in self.coeffs)

    def value_at(self, point: Mapping) -> Fraction:
        return sum((Fraction(c) * Fraction(point.get(v, 0)) for v, c in self.coeffs), Fraction(0))

    def holds_at(self, point: Mapping) -> bool:
        return self.value_at(point) <= self.rhs

    def is_nonnegativity(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0][1] == -1 and self.rhs == 0

    def __str__(self) -> str:
        if self.is_nonnegativity():
            return f"{self.coeffs[0][0]} >= 0"
        return f"{format_lhs(self.coeffs)} <= {self.rhs}"


def format_lhs(coeffs) -> str:
    parts = []
    for v, c in coeffs:
        c = Fraction(c)
        mag = abs(c)
        term = str(v) if mag == 1 else f"{format_rational(mag)} {v}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"
