"""Named variables with a total, deterministic order."""
from __future__ import annotations

import re
from dataclasses import dataclass

RATE, GROUP_RATE, COMPOSITE, SPLIT, GENERIC = range(5)


def _fmt_set(items) -> str:
    return ",".join(str(i) for i in items)


@dataclass(frozen=True, order=True)
class VarId:
    """A variable identity, ordered by ``(kind, index)``.

    ``index`` layouts by kind:

    * RATE:        ``(j,)``
    * GROUP_RATE:  ``(j, senders)``
    * COMPOSITE:   ``(senders, J, k)`` with ``k = 0`` for a cooperative variable
    * SPLIT:       ``(k, senders)``
    * GENERIC:     ``(name,)``

    ``senders`` and ``J`` are sorted tuples of 1-based indices.
    """

    kind: int
    index: tuple

    @classmethod
    def rate(cls, j: int) -> VarId:
        return cls(RATE, (j,))

    @classmethod
    def group_rate(cls, j: int, senders) -> VarId:
        return cls(GROUP_RATE, (j, tuple(sorted(senders))))

    @classmethod
    def composite(cls, subset, senders, sender: int = 0) -> VarId:
        return cls(COMPOSITE, (tuple(sorted(senders)), tuple(sorted(subset)), sender))

    @classmethod
    def split(cls, k: int, senders) -> VarId:
        return cls(SPLIT, (k, tuple(sorted(senders))))

    @classmethod
    def named(cls, name: str) -> VarId:
        return cls(GENERIC, (name,))

    @property
    def name(self) -> str:
        i = self.index
        if self.kind == RATE:
            return f"R{i[0]}"
        if self.kind == GROUP_RATE:
            return f"R{i[0]}[{_fmt_set(i[1])}]"
        if self.kind == COMPOSITE:
            senders, subset, k = i
            sup = f"^{k}" if k else ""
            return f"g{{{_fmt_set(subset)}}}{sup}[{_fmt_set(senders)}]"
        if self.kind == SPLIT:
            return f"C{i[0]}[{_fmt_set(i[1])}]"
        return i[0]

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"VarId({self.name})"

    @classmethod
    def parse(cls, name: str) -> VarId:
        """Inverse of :attr:`name`; unrecognized names become generic."""
        m = _RATE_RE.fullmatch(name)
        if m:
            j, grp = m.groups()
            if grp is None:
                return cls.rate(int(j))
            return cls.group_rate(int(j), _ints(grp))
        m = _COMP_RE.fullmatch(name)
        if m:
            sub, k, grp = m.groups()
            return cls.composite(_ints(sub), _ints(grp), int(k) if k else 0)
        m = _SPLIT_RE.fullmatch(name)
        if m:
            return cls.split(int(m.group(1)), _ints(m.group(2)))
        return cls.named(name)


def _ints(text: str) -> tuple:
    return tuple(int(t) for t in text.split(",")) if text else ()


_RATE_RE = re.compile(r"R(\d+)(?:\[([\d,]+)\])?")
_COMP_RE = re.compile(r"g\{([\d,]+)\}(?:\^(\d+))?\[([\d,]+)\]")
_SPLIT_RE = re.compile(r"C(\d+)\[([\d,]+)\]")


def rate_vars(n: int) -> tuple:
    return tuple(VarId.rate(j) for j in range(1, n + 1))
