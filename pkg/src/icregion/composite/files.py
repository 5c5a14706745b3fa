"""Plan files and decoding-choice files."""
from __future__ import annotations

import json
from pathlib import Path

from ..instance import Instance
from .groups import (
    ALL_IN_ONE,
    LINK_SENDER,
    SENDER_PARTITION,
    DecodingChoice,
    Group,
    GroupingPlan,
    PlanError,
)

_MODES = {
    "all-in-one": ALL_IN_ONE,
    "sender-partition": SENDER_PARTITION,
    "link-sender-partition": LINK_SENDER,
    "dcc-a": ALL_IN_ONE,
    "ccc-a": ALL_IN_ONE,
    "dcc": SENDER_PARTITION,
    "ccc-s": SENDER_PARTITION,
    "mdcc": LINK_SENDER,
    "ccc-ls": LINK_SENDER,
}


class PlanFileError(ValueError):
    pass


def _groups(raw, where):
    if not isinstance(raw, list) or not raw:
        raise PlanFileError(f"{where}.groups must be a nonempty list")
    out = []
    for i, g in enumerate(raw):
        if not isinstance(g, list) or not g or not all(type(k) is int for k in g):
            raise PlanFileError(f"{where}.groups[{i}] must be a nonempty list of sender indices")
        out.append(tuple(sorted(set(g))))
    return out


def _one_plan(obj, where, num_senders):
    if not isinstance(obj, dict):
        raise PlanFileError(f"{where} must be an object")
    mode = obj.get("mode", "link-sender-partition")
    if mode not in _MODES:
        raise PlanFileError(f"{where}.mode: unknown mode {mode!r}")
    groups = _groups(obj.get("groups"), where)
    grouping = _MODES[mode]
    if len(groups) == 1:
        grouping = ALL_IN_ONE
    elif grouping == ALL_IN_ONE:
        grouping = SENDER_PARTITION
    plan = GroupingPlan.make(grouping, groups)
    if num_senders is not None:
        try:
            plan.validate(num_senders)
        except PlanError as exc:
            raise PlanFileError(f"{where}: {exc}") from None
    return plan, groups, mode


def plans_from_dict(obj, num_senders: int | None = None):
    """Parse a plan object: ``{"mode", "groups"}`` or ``{"plans": [...]}``.

    Returns ``(plans, ordered_groups, scheme_hint)`` where ``ordered_groups``
    lists each plan's groups in file order (decoding files may refer to
    them by 1-based position) and ``scheme_hint`` is the mode named in the
    file when it is a scheme name.
    """
    if isinstance(obj, dict) and "plans" in obj:
        items = obj["plans"]
        if not isinstance(items, list) or not items:
            raise PlanFileError("plans must be a nonempty list")
        parsed = [_one_plan(p, f"plans[{i}]", num_senders) for i, p in enumerate(items)]
    else:
        parsed = [_one_plan(obj, "plan", num_senders)]
    hints = {m for _, _, m in parsed if m in ("dcc-a", "dcc", "mdcc", "ccc-a", "ccc-s", "ccc-ls")}
    hint = hints.pop() if len(hints) == 1 else None
    return [p for p, _, _ in parsed], [g for _, g, _ in parsed], hint


def load_plans(path, num_senders: int | None = None):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PlanFileError(f"{path}: malformed JSON: {exc}") from None
    return plans_from_dict(obj, num_senders)


def _choice(raw, where):
    if not isinstance(raw, dict) or not raw:
        raise PlanFileError(f"{where} must map receivers to message lists")
    out = {}
    for j, d in raw.items():
        try:
            jj = int(j)
        except ValueError:
            raise PlanFileError(f"{where}: receiver key {j!r} is not an integer") from None
        if not isinstance(d, list) or not all(type(x) is int for x in d):
            raise PlanFileError(f"{where}.{j} must be a list of message indices")
        out[jj] = frozenset(d)
    return DecodingChoice.of(out)


def _group_key(key, ordered_groups, where):
    key = key.strip()
    if "," in key or not ordered_groups:
        try:
            return tuple(sorted({int(x) for x in key.split(",")}))
        except ValueError:
            raise PlanFileError(f"{where}: bad group key {key!r}") from None
    try:
        idx = int(key)
    except ValueError:
        raise PlanFileError(f"{where}: bad group key {key!r}") from None
    # a bare integer is a 1-based position, unambiguous only for one plan
    if len(ordered_groups) != 1:
        raise PlanFileError(
            f"{where}: group position {key!r} is ambiguous with several plans; "
            "use a sender list such as \"1,2\""
        )
    groups = ordered_groups[0]
    if not 1 <= idx <= len(groups):
        raise PlanFileError(f"{where}: group position {idx} outside 1..{len(groups)}")
    return groups[idx - 1]


def decoding_from_dict(obj, inst: Instance, ordered_groups=None) -> dict:
    """Map each sender tuple to its list of allowed DecodingChoices.

    Keys are a 1-based group position (single plan only) or a sender list
    such as ``"1,2"``; values are one choice or a list of choices.  Each
    choice is validated against the group it names.
    """
    if not isinstance(obj, dict):
        raise PlanFileError("decoding file must be a JSON object")
    out = {}
    for key, val in obj.items():
        where = f"decoding[{key}]"
        senders = _group_key(str(key), ordered_groups, where)
        raw = val if isinstance(val, list) else [val]
        choices = [_choice(c, f"{where}[{i}]") for i, c in enumerate(raw)]
        try:
            group = Group(inst, senders)
            for c in choices:
                c.validate(group)
        except PlanError as exc:
            raise PlanFileError(f"{where}: {exc}") from None
        out[group.senders] = choices
    return out


def load_decoding(path, inst: Instance, ordered_groups=None) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PlanFileError(f"{path}: malformed JSON: {exc}") from None
    return decoding_from_dict(obj, inst, ordered_groups)


__all__ = [
    "PlanFileError",
    "decoding_from_dict",
    "load_decoding",
    "load_plans",
    "plans_from_dict",
]
