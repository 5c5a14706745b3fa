"""Index-coding instances, their file format, and the side-information digraph."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry.inequality import format_rational, parse_rational


class InstanceError(ValueError):
    """Invalid instance data; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class Sender:
    messages: frozenset
    capacity: Fraction


@dataclass(frozen=True)
class Instance:
    """N unicast messages, K senders and per-receiver side information.

    Indices are 1-based everywhere in the public API: ``side_info[j - 1]``
    is A_j and ``senders[k - 1]`` is sender k.
    """

    num_messages: int
    senders: tuple
    side_info: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.num_messages
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InstanceError("num_messages", "must be a positive integer")
        if not self.senders:
            raise InstanceError("senders", "at least one sender is required")
        seen = {}
        covered = set()
        for k, s in enumerate(self.senders, start=1):
            where = f"senders[{k}]"  # senders are numbered from 1, as in plan files
            if not s.messages:
                raise InstanceError(f"{where}.messages", "message set is empty")
            bad = [i for i in s.messages if not 1 <= i <= n]
            if bad:
                raise InstanceError(f"{where}.messages", f"index {min(bad)} outside 1..{n}")
            if s.messages in seen:
                raise InstanceError(
                    f"{where}.messages",
                    f"duplicate sender message set (same as senders[{seen[s.messages]}])",
                )
            seen[s.messages] = k
            if s.capacity <= 0:
                raise InstanceError(f"{where}.capacity", "capacity must be positive")
            covered |= s.messages
        missing = sorted(set(range(1, n + 1)) - covered)
        if missing:
            raise InstanceError("senders", f"message {missing[0]} is not held by any sender")
        if len(self.side_info) != n:
            raise InstanceError("side_info", f"expected {n} receivers")
        for j, a in enumerate(self.side_info, start=1):
            if j in a:
                raise InstanceError(f"side_info.{j}", f"receiver {j} cannot know its own message")
            bad = [i for i in a if not 1 <= i <= n]
            if bad:
                raise InstanceError(f"side_info.{j}", f"index {min(bad)} outside 1..{n}")

    @property
    def num_senders(self) -> int:
        return len(self.senders)

    def S(self, k: int) -> frozenset:
        return self.senders[k - 1].messages

    def C(self, k: int) -> Fraction:
        return self.senders[k - 1].capacity

    def A(self, j: int) -> frozenset:
        return self.side_info[j - 1]

    @classmethod
    def build(cls, n: int, senders, side_info, name: str = "") -> Instance:
        """Convenience constructor: ``senders`` as ``[(messages, capacity), ...]``,
        ``side_info`` as a list of A_1..A_N or a dict keyed by receiver."""
        ss = tuple(Sender(frozenset(m), Fraction(c)) for m, c in senders)
        if isinstance(side_info, dict):
            side = tuple(frozenset(side_info.get(j, ())) for j in range(1, n + 1))
        else:
            side = tuple(frozenset(a) for a in side_info)
        return cls(n, ss, side, name)


@dataclass(frozen=True)
class SideInfoDigraph:
    num_vertices: int
    arcs: frozenset

    def successors(self, i: int) -> frozenset:
        return frozenset(j for (a, j) in self.arcs if a == i)


def derive_digraph(inst: Instance) -> SideInfoDigraph:
    """Arc ``(i, j)`` exactly when receiver i has message j as side information."""
    arcs = frozenset((i, j) for i in range(1, inst.num_messages + 1) for j in inst.A(i))
    return SideInfoDigraph(inst.num_messages, arcs)


# file format -------------------------------------------------------------------

def _int_list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InstanceError(where, "must be a list of integers")
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InstanceError(where, f"non-integer entry {v!r}")
    if len(set(value)) != len(value):
        raise InstanceError(where, "repeated index")
    return value


def instance_from_dict(obj, name: str = "") -> Instance:
    if not isinstance(obj, dict):
        raise InstanceError("<root>", "instance must be a JSON object")
    for key in ("num_messages", "senders", "side_info"):
        if key not in obj:
            raise InstanceError(key, "missing field")
    n = obj["num_messages"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InstanceError("num_messages", "must be a positive integer")
    raw_senders = obj["senders"]
    if not isinstance(raw_senders, list):
        raise InstanceError("senders", "must be a list")
    senders = []
    for k, s in enumerate(raw_senders, start=1):
        where = f"senders[{k}]"
        if not isinstance(s, dict) or "messages" not in s or "capacity" not in s:
            raise InstanceError(where, "needs 'messages' and 'capacity'")
        msgs = _int_list(s["messages"], f"{where}.messages")
        try:
            cap = parse_rational(s["capacity"])
        except ValueError as exc:
            raise InstanceError(f"{where}.capacity", str(exc)) from None
        senders.append(Sender(frozenset(msgs), cap))
    raw_side = obj["side_info"]
    if not isinstance(raw_side, dict):
        raise InstanceError("side_info", "must be an object keyed by receiver")
    side = [frozenset()] * n
    for key, val in raw_side.items():
        if not key.isdigit() or not 1 <= int(key) <= n:
            raise InstanceError(f"side_info.{key}", f"receiver key must be in 1..{n}")
        side[int(key) - 1] = frozenset(_int_list(val, f"side_info.{key}"))
    return Instance(n, tuple(senders), tuple(side), name)


def parse_instance(text: str, name: str = "") -> Instance:
    """Parse and validate instance-file JSON text."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError("<json>", f"malformed syntax: {exc}") from None
    return instance_from_dict(obj, name)


def load_instance(path) -> Instance:
    from pathlib import Path

    p = Path(path)
    return parse_instance(p.read_text(encoding="utf-8"), name=p.stem)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "num_messages": inst.num_messages,
        "senders": [
            {"messages": sorted(s.messages), "capacity": format_rational(s.capacity)}
            for s in inst.senders
        ],
        "side_info": {str(j): sorted(inst.A(j)) for j in range(1, inst.num_messages + 1)},
    }


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"
