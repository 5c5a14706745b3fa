"""Exact polyhedral geometry over named variables."""
from .compare import contains_point, poly_equal, poly_subset, violated_row
from .dd import UnboundedError, hull_of_points, hull_of_union, project_by_vertices, vertices
from .fme import DEFAULT_FME_CAP, ProjectionLimitError, fme_eliminate, is_full_dimensional
from .inequality import LinearInequality, format_rational, parse_rational
from .lp import LPResult, lp_max
from .polyhedron import (
    Polyhedron,
    RegionFormatError,
    RegionUnion,
    dumps_region,
    load_region,
    loads_region,
    region_from_dict,
    region_to_dict,
)
from .redundancy import is_redundant, remove_redundant
from .variables import VarId, rate_vars

__all__ = [
    "DEFAULT_FME_CAP",
    "LPResult",
    "LinearInequality",
    "Polyhedron",
    "ProjectionLimitError",
    "RegionFormatError",
    "RegionUnion",
    "UnboundedError",
    "VarId",
    "contains_point",
    "dumps_region",
    "fme_eliminate",
    "format_rational",
    "hull_of_points",
    "hull_of_union",
    "is_full_dimensional",
    "is_redundant",
    "load_region",
    "loads_region",
    "lp_max",
    "parse_rational",
    "poly_equal",
    "poly_subset",
    "project_by_vertices",
    "rate_vars",
    "region_from_dict",
    "region_to_dict",
    "remove_redundant",
    "vertices",
    "violated_row",
]
