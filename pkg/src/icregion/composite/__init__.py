"""Composite-coding inner bounds: groups, constraint systems, schemes."""
from .constraints import (
    CompositeVarSet,
    composite_vars,
    decoding_constraints,
    lifted_system,
    link_constraints,
    relevant_vars,
)
from .files import PlanFileError, decoding_from_dict, load_decoding, load_plans, plans_from_dict
from .groups import (
    ALL_IN_ONE,
    COOPERATIVE,
    LINK_SENDER,
    NONCOOPERATIVE,
    SENDER_PARTITION,
    ChoiceLimitError,
    DecodingChoice,
    Group,
    GroupingPlan,
    PlanError,
    all_in_one,
    count_decoding_choices,
    enumerate_decoding_choices,
    enumerate_link_sender_plans,
    enumerate_sender_partitions,
    full_choice,
)
from .regions import (
    Caps,
    GroupHull,
    combine_groups,
    combine_members,
    group_hull,
    group_region,
    group_region_union,
    lifted_plan,
    project,
    symbolic_members,
)
from .schemes import SCHEMES, auto_plans, scheme_region, scheme_spec, scheme_verify

__all__ = [
    "ALL_IN_ONE", "COOPERATIVE", "LINK_SENDER", "NONCOOPERATIVE", "SCHEMES", "SENDER_PARTITION",
    "Caps", "ChoiceLimitError", "CompositeVarSet", "DecodingChoice", "Group", "GroupHull",
    "GroupingPlan", "PlanError", "PlanFileError", "all_in_one", "auto_plans", "combine_groups",
    "combine_members", "composite_vars", "count_decoding_choices", "decoding_constraints",
    "decoding_from_dict", "enumerate_decoding_choices", "enumerate_link_sender_plans",
    "enumerate_sender_partitions", "full_choice", "group_hull", "group_region",
    "group_region_union", "lifted_plan", "lifted_system", "link_constraints", "load_decoding", "load_plans",
    "plans_from_dict", "project", "relevant_vars", "scheme_region", "scheme_spec", "scheme_verify",
    "symbolic_members",
]
