"""Polyhedra over named variables, unions of them, and the region file format."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .inequality import (
    LinearInequality,
    canonical_row,
    format_rational,
    is_infeasible_row,
    is_trivial_row,
    nonneg_var,
    parse_rational,
    primitive,
    row_sort_key,
)
from .variables import VarId


class RegionFormatError(ValueError):
    pass


def _normalize(row) -> tuple:
    if all(type(v) is int for v in row):
        return primitive(row)
    return canonical_row(row[:-1], row[-1])


class Polyhedron:
    """``{x : A x <= b}`` with exact integer rows over an ordered variable list.

    Rows are stored canonically (primitive, deduplicated, sorted), so two
    polyhedra built from the same inequalities compare equal with ``==``.
    Semantic equality is :func:`icregion.geometry.poly_equal`.
    Nonnegativity is never implied; it must be present as ``-x <= 0`` rows.
    """

    __slots__ = ("variables", "rows", "_col")

    def __init__(self, variables: Sequence[VarId], rows: Iterable[Sequence] = ()):
        self.variables = tuple(variables)
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ValueError("duplicate variables")
        canon = set()
        empty = False
        for r in rows:
            if len(r) != n + 1:
                raise ValueError(f"row width {len(r)} does not match {n} variables")
            r = _normalize(r)
            if is_trivial_row(r):
                continue
            if is_infeasible_row(r):
                empty = True
                break
            canon.add(r)
        if empty:
            self.rows = ((0,) * n + (-1,),)
        else:
            self.rows = tuple(sorted(canon, key=row_sort_key))
        self._col = None

    # construction helpers -------------------------------------------------
    @classmethod
    def _trusted(cls, variables: tuple, rows: tuple) -> Polyhedron:
        # rows already canonical, deduplicated and sorted (e.g. a subset of
        # another polyhedron's rows, in order)
        out = cls.__new__(cls)
        out.variables, out.rows, out._col = variables, rows, None
        return out

    @classmethod
    def from_inequalities(cls, variables, inequalities: Iterable) -> Polyhedron:
        """Build from LinearInequality objects or ``(coeff_map, rhs)`` pairs."""
        variables = tuple(variables)
        col = {v: i for i, v in enumerate(variables)}
        rows = []
        for ineq in inequalities:
            if isinstance(ineq, LinearInequality):
                coeffs, rhs = ineq.coeffs, ineq.rhs
            else:
                coeffs, rhs = ineq
                coeffs = coeffs.items()
            row = [Fraction(0)] * len(variables) + [Fraction(rhs)]
            for v, c in coeffs:
                if v not in col:
                    raise ValueError(f"unknown variable {v}")
                row[col[v]] += Fraction(c)
            rows.append(canonical_row(row[:-1], row[-1]))
        return cls(variables, rows)

    @classmethod
    def orthant(cls, variables) -> Polyhedron:
        return cls(variables).with_nonnegativity()

    @classmethod
    def empty(cls, variables) -> Polyhedron:
        n = len(variables)
        return cls(variables, [(0,) * n + (-1,)])

    # accessors -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.variables)

    def column(self, v: VarId) -> int:
        if self._col is None:
            self._col = {u: i for i, u in enumerate(self.variables)}
        return self._col[v]

    @property
    def inequalities(self) -> tuple:
        out = []
        for r in self.rows:
            coeffs = tuple((self.variables[i], c) for i, c in enumerate(r[:-1]) if c)
            out.append(LinearInequality(coeffs, r[-1]))
        return tuple(out)

    def is_trivially_empty(self) -> bool:
        return len(self.rows) == 1 and is_infeasible_row(self.rows[0])

    def nonneg_columns(self) -> set:
        out = set()
        for r in self.rows:
            i = nonneg_var(r)
            if i is not None:
                out.add(i)
        return out

    def facet_rows(self) -> tuple:
        """Rows other than plain nonnegativity bounds."""
        return tuple(r for r in self.rows if nonneg_var(r) is None)

    # transformations --------------------------------------------------------
    def with_rows(self, rows: Iterable[Sequence]) -> Polyhedron:
        return Polyhedron(self.variables, list(self.rows) + list(rows))

    def with_nonnegativity(self, variables=None) -> Polyhedron:
        n = self.dim
        targets = self.variables if variables is None else variables
        extra = []
        for v in targets:
            row = [0] * (n + 1)
            row[self.column(v)] = -1
            extra.append(tuple(row))
        return self.with_rows(extra)

    def embed(self, variables: Sequence[VarId]) -> Polyhedron:
        """Same set viewed in a larger variable list (new coordinates free)."""
        variables = tuple(variables)
        col = {v: i for i, v in enumerate(variables)}
        idx = [col[v] for v in self.variables]
        rows = []
        for r in self.rows:
            row = [0] * (len(variables) + 1)
            for i, c in zip(idx, r[:-1]):
                row[i] = c
            row[-1] = r[-1]
            rows.append(tuple(row))
        return Polyhedron(variables, rows)

    def intersect(self, other: Polyhedron) -> Polyhedron:
        if other.variables != self.variables:
            other = other.embed(self.variables)
        return self.with_rows(other.rows)

    def relabel(self, mapping: Mapping[VarId, VarId]) -> Polyhedron:
        return Polyhedron([mapping.get(v, v) for v in self.variables], self.rows)

    def reorder(self, variables: Sequence[VarId]) -> Polyhedron:
        """Same set with columns permuted to ``variables`` (a permutation)."""
        if set(variables) != set(self.variables) or len(variables) != self.dim:
            raise ValueError("reorder needs a permutation of the variables")
        return self.embed(variables)

    def drop_columns(self, keep: Sequence[VarId]) -> Polyhedron:
        """Restrict to ``keep``; the dropped columns must be zero in every row."""
        idx = [self.column(v) for v in keep]
        keep_set = set(idx)
        rows = []
        for r in self.rows:
            if any(c for i, c in enumerate(r[:-1]) if i not in keep_set):
                raise ValueError("cannot drop a column with nonzero coefficients")
            rows.append(tuple(r[i] for i in idx) + (r[-1],))
        return Polyhedron(keep, rows)

    # comparisons and display -------------------------------------------------
    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polyhedron)
            and self.variables == other.variables
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.rows))

    def __repr__(self) -> str:
        return f"Polyhedron({len(self.variables)} vars, {len(self.rows)} rows)"

    def __str__(self) -> str:
        return "\n".join(str(q) for q in self.inequalities)


class RegionUnion:
    """A finite union of polyhedra over one shared variable list."""

    __slots__ = ("members", "labels")

    def __init__(self, members: Sequence[Polyhedron], labels: Sequence | None = None):
        members = tuple(members)
        if not members:
            raise ValueError("a RegionUnion needs at least one member")
        first = members[0].variables
        if any(m.variables != first for m in members):
            raise ValueError("union members must share the variable list")
        self.members = members
        self.labels = tuple(labels) if labels is not None else (None,) * len(members)

    @property
    def variables(self) -> tuple:
        return self.members[0].variables

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


# region file format ------------------------------------------------------------

def region_to_dict(poly: Polyhedron) -> dict:
    """Serialize; nonnegativity rows are implied by the format and omitted."""
    names = [v.name for v in poly.variables]
    nn = poly.nonneg_columns()
    if len(nn) != poly.dim:
        raise RegionFormatError("region files describe nonnegative regions only")
    ineqs = []
    for r in poly.rows:
        if nonneg_var(r) is not None:
            continue
        coeffs = {names[i]: format_rational(c) for i, c in enumerate(r[:-1]) if c}
        ineqs.append({"coeffs": coeffs, "rhs": format_rational(r[-1])})
    return {"variables": names, "inequalities": ineqs}


def region_from_dict(obj) -> Polyhedron:
    """Parse a region object; the nonnegative orthant is always added."""
    if not isinstance(obj, dict):
        raise RegionFormatError("region must be a JSON object")
    names = obj.get("variables")
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise RegionFormatError("'variables' must be a list of names")
    if len(set(names)) != len(names):
        raise RegionFormatError("'variables' contains duplicates")
    variables = [VarId.parse(s) for s in names]
    by_name = dict(zip(names, variables))
    raw = obj.get("inequalities", [])
    if not isinstance(raw, list):
        raise RegionFormatError("'inequalities' must be a list")
    ineqs = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict) or "coeffs" not in item or "rhs" not in item:
            raise RegionFormatError(f"inequalities[{k}] needs 'coeffs' and 'rhs'")
        if not isinstance(item["coeffs"], dict):
            raise RegionFormatError(f"inequalities[{k}].coeffs must be an object")
        coeffs = {}
        for name, val in item["coeffs"].items():
            if name not in by_name:
                raise RegionFormatError(f"inequalities[{k}] uses undeclared variable {name!r}")
            try:
                coeffs[by_name[name]] = parse_rational(val)
            except ValueError as exc:
                raise RegionFormatError(f"inequalities[{k}].coeffs.{name}: {exc}") from None
        try:
            rhs = parse_rational(item["rhs"])
        except ValueError as exc:
            raise RegionFormatError(f"inequalities[{k}].rhs: {exc}") from None
        ineqs.append((coeffs, rhs))
    return Polyhedron.from_inequalities(variables, ineqs).with_nonnegativity()


def dumps_region(poly: Polyhedron) -> str:
    return json.dumps(region_to_dict(poly), indent=2) + "\n"


def loads_region(text: str) -> Polyhedron:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RegionFormatError(f"invalid JSON: {exc}") from None
    return region_from_dict(obj)


def load_region(path) -> Polyhedron:
    with open(path, encoding="utf-8") as fh:
        return loads_region(fh.read())
