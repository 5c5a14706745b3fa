"""Groups of senders, decoding choices and grouping plans."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod

from ..geometry.variables import VarId
from ..instance import Instance

COOPERATIVE = "cooperative"
NONCOOPERATIVE = "non-cooperative"

ALL_IN_ONE = "all-in-one"
SENDER_PARTITION = "sender-partition"
LINK_SENDER = "link-sender-partition"

DEFAULT_CHOICE_CAP = 100_000
DEFAULT_PLAN_CAP = 1_000


class ChoiceLimitError(RuntimeError):
    pass


class PlanError(ValueError):
    pass


def subsets(items, nonempty: bool = True):
    """All subsets of ``items`` as sorted tuples, by size then lexicographic."""
    items = sorted(items)
    start = 1 if nonempty else 0
    for r in range(start, len(items) + 1):
        yield from itertools.combinations(items, r)


@dataclass(frozen=True)
class Group:
    """Senders that encode jointly; ``symbolic`` uses split capacities C_{k,P}."""

    instance: Instance
    senders: tuple
    symbolic: bool = False

    def __post_init__(self):
        s = tuple(sorted(set(self.senders)))
        if not s:
            raise PlanError("a group needs at least one sender")
        if s[0] < 1 or s[-1] > self.instance.num_senders:
            raise PlanError(f"group {list(s)} names a sender outside 1..{self.instance.num_senders}")
        object.__setattr__(self, "senders", s)

    @cached_property
    def messages(self) -> frozenset:
        return frozenset().union(*(self.instance.S(k) for k in self.senders))

    @cached_property
    def receivers(self) -> tuple:
        return tuple(sorted(self.messages))

    def side(self, j: int) -> frozenset:
        """A_{j,P}: the side information of receiver j restricted to the group."""
        return self.instance.A(j) & self.messages

    def open_messages(self, j: int) -> frozenset:
        """Messages receiver j may choose to decode: S_P minus A_{j,P}."""
        return self.messages - self.instance.A(j)

    def capacity_term(self, k: int):
        """Right-hand-side contribution of sender k: a number or a split variable."""
        if self.symbolic:
            return VarId.split(k, self.senders)
        return self.instance.C(k)

    def rate_var(self, j: int) -> VarId:
        return VarId.group_rate(j, self.senders)

    @property
    def label(self) -> str:
        return ",".join(map(str, self.senders))

    def __repr__(self) -> str:
        tag = " symbolic" if self.symbolic else ""
        return f"Group({{{self.label}}}{tag})"


@dataclass(frozen=True)
class DecodingChoice:
    """Per receiver j of a group, the message set D_j it decodes (j in D_j)."""

    sets: tuple  # ((j, frozenset), ...) ordered by j

    @classmethod
    def of(cls, mapping) -> DecodingChoice:
        return cls(tuple(sorted((int(j), frozenset(d)) for j, d in mapping.items())))

    def __getitem__(self, j: int) -> frozenset:
        for i, d in self.sets:
            if i == j:
                return d
        raise KeyError(j)

    def as_dict(self) -> dict:
        return {j: d for j, d in self.sets}

    def validate(self, group: Group) -> None:
        got = [j for j, _ in self.sets]
        if got != list(group.receivers):
            raise PlanError(
                f"decoding choice for group {{{group.label}}} must list receivers "
                f"{list(group.receivers)}, got {got}"
            )
        for j, d in self.sets:
            if j not in d:
                raise PlanError(f"receiver {j} must decode its own message")
            extra = d - group.open_messages(j)
            if extra:
                raise PlanError(
                    f"receiver {j} cannot decode {sorted(extra)} in group {{{group.label}}}"
                )

    def total_size(self) -> int:
        return sum(len(d) for _, d in self.sets)

    def __str__(self) -> str:
        return "; ".join(f"D{j}={{{','.join(map(str, sorted(d)))}}}" for j, d in self.sets)


def count_decoding_choices(group: Group) -> int:
    return prod(2 ** (len(group.open_messages(j)) - 1) for j in group.receivers)


def enumerate_decoding_choices(group: Group, cap: int = DEFAULT_CHOICE_CAP) -> list:
    """Every admissible decoding choice of the group, in canonical order."""
    total = count_decoding_choices(group)
    if total > cap:
        raise ChoiceLimitError(
            f"group {{{group.label}}} has {total} decoding choices (cap {cap})"
        )
    per = []
    for j in group.receivers:
        others = sorted(group.open_messages(j) - {j})
        per.append([frozenset((j,) + extra) for extra in subsets(others, nonempty=False)])
    out = []
    for combo in itertools.product(*per):
        out.append(DecodingChoice(tuple(zip(group.receivers, combo))))
    return out


def full_choice(group: Group) -> DecodingChoice:
    """Every receiver decodes everything it does not already know."""
    return DecodingChoice(tuple((j, group.open_messages(j)) for j in group.receivers))


@dataclass(frozen=True)
class GroupingPlan:
    mode: str
    groups: tuple  # tuple of sorted sender tuples

    @classmethod
    def make(cls, mode: str, groups) -> GroupingPlan:
        norm = tuple(sorted(tuple(sorted(set(g))) for g in groups))
        return cls(mode, norm)

    def validate(self, num_senders: int) -> None:
        if self.mode not in (ALL_IN_ONE, SENDER_PARTITION, LINK_SENDER):
            raise PlanError(f"unknown grouping mode {self.mode!r}")
        universe = set(range(1, num_senders + 1))
        flat = [k for g in self.groups for k in g]
        if any(not g for g in self.groups):
            raise PlanError("empty group")
        if set(flat) - universe:
            raise PlanError(f"plan names senders outside 1..{num_senders}")
        if set(flat) != universe:
            raise PlanError("plan groups must cover every sender")
        if self.mode == ALL_IN_ONE and self.groups != (tuple(sorted(universe)),):
            raise PlanError("all-in-one plan must be the single group of all senders")
        if self.mode == SENDER_PARTITION and len(flat) != len(universe):
            raise PlanError("sender-partition groups must be disjoint")
        if len(set(self.groups)) != len(self.groups):
            raise PlanError("plan groups must be distinct")

    @property
    def is_partition(self) -> bool:
        flat = [k for g in self.groups for k in g]
        return len(flat) == len(set(flat))

    def group_objects(self, inst: Instance) -> list:
        # Disjoint groups never need split capacities: every sender's whole
        # link is available to its only group.
        symbolic = self.mode == LINK_SENDER and not self.is_partition
        return [Group(inst, g, symbolic) for g in self.groups]

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, g)) + "}" for g in self.groups) + "}"


def all_in_one(num_senders: int) -> GroupingPlan:
    return GroupingPlan(ALL_IN_ONE, (tuple(range(1, num_senders + 1)),))


def enumerate_sender_partitions(num_senders: int) -> list:
    """All set partitions of 1..K (restricted growth strings), canonical order."""
    out = []

    def rec(k, blocks):
        if k > num_senders:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(k)
            rec(k + 1, blocks)
            b.pop()
        blocks.append([k])
        rec(k + 1, blocks)
        blocks.pop()

    rec(1, [])
    return sorted(tuple(sorted(p)) for p in out)


def _covers(num_senders: int, candidates, cap: int) -> list:
    universe = frozenset(range(1, num_senders + 1))
    out = []
    for r in range(1, len(candidates) + 1):
        for fam in itertools.combinations(candidates, r):
            if frozenset().union(*map(frozenset, fam)) == universe:
                out.append(tuple(sorted(fam)))
                if len(out) > cap:
                    raise ChoiceLimitError(f"more than {cap} link-sender plans")
    return out


def enumerate_link_sender_plans(num_senders: int, policy: str = "default",
                                cap: int = DEFAULT_PLAN_CAP) -> list:
    """Grouping plans for the link-and-sender schemes.

    ``default``: all-in-one, every sender partition, and (for K <= 4) every
    cover of the senders by distinct 2-element groups.  ``exhaustive``: every
    cover by distinct nonempty groups.
    """
    K = num_senders
    if policy == "exhaustive":
        cands = list(subsets(range(1, K + 1)))
        if len(cands) > 20:
            raise ChoiceLimitError(f"exhaustive plan search is not feasible for K = {K}")
        fams = _covers(K, cands, cap)
    elif policy == "default":
        fams = set(enumerate_sender_partitions(K))
        if K <= 4:
            fams.update(_covers(K, list(itertools.combinations(range(1, K + 1), 2)), cap))
        fams = sorted(fams)
    else:
        raise PlanError(f"unknown plan policy {policy!r}")
    plans = []
    for fam in fams:
        if len(fam) == 1:
            plans.append(GroupingPlan(ALL_IN_ONE, fam))
        else:
            plans.append(GroupingPlan.make(LINK_SENDER, fam))
    if len(plans) > cap:
        raise ChoiceLimitError(f"{len(plans)} link-sender plans exceed the cap {cap}")
    return plans
