"""Composite-rate variables and the decoding / link constraint families."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..geometry import Polyhedron
from ..geometry.variables import VarId
from .groups import COOPERATIVE, NONCOOPERATIVE, DecodingChoice, Group, subsets

# above this many composite variables the superset-minimum sweep replaces the
# quadratic dominance scan
_SWEEP_THRESHOLD = 400


@dataclass(frozen=True)
class CompositeVarSet:
    compression: str
    variables: tuple  # sorted VarIds
    subset: dict  # VarId -> frozenset J
    owner: dict  # VarId -> sender k (0 for a shared cooperative variable)

    def __len__(self) -> int:
        return len(self.variables)

    def restricted(self, keep) -> CompositeVarSet:
        keep = set(keep)
        vs = tuple(v for v in self.variables if v in keep)
        return CompositeVarSet(
            self.compression,
            vs,
            {v: self.subset[v] for v in vs},
            {v: self.owner[v] for v in vs},
        )


def composite_vars(group: Group, compression: str) -> CompositeVarSet:
    """Cooperative: one variable per nonempty J inside some S_k of the group.
    Non-cooperative: one per sender k and nonempty J inside S_k."""
    inst = group.instance
    subset, owner = {}, {}
    if compression == COOPERATIVE:
        seen = set()
        for k in group.senders:
            for J in subsets(inst.S(k)):
                if J not in seen:
                    seen.add(J)
                    v = VarId.composite(J, group.senders, 0)
                    subset[v], owner[v] = frozenset(J), 0
    elif compression == NONCOOPERATIVE:
        for k in group.senders:
            for J in subsets(inst.S(k)):
                v = VarId.composite(J, group.senders, k)
                subset[v], owner[v] = frozenset(J), k
    else:
        raise ValueError(f"unknown compression {compression!r}")
    return CompositeVarSet(compression, tuple(sorted(subset)), subset, owner)


def decoding_constraints(group: Group, d: DecodingChoice, v: CompositeVarSet) -> list:
    """``(coeffs, rhs)`` pairs: for each receiver j and nonempty T in D_j,
    the rates of T are covered by the composite rates of every J inside
    D_j | A_j that meets T."""
    out = []
    for j in group.receivers:
        D = d[j]
        U = D | group.side(j)
        inside = [(g, v.subset[g]) for g in v.variables if v.subset[g] <= U]
        for T in subsets(D):
            T = frozenset(T)
            coeffs = {group.rate_var(i): Fraction(1) for i in T}
            for g, J in inside:
                if J & T:
                    coeffs[g] = Fraction(-1)
            out.append((coeffs, Fraction(0)))
    return out


def _rhs_value(group: Group, senders_mask: int, senders: tuple):
    return sum(group.instance.C(senders[b]) for b in range(len(senders)) if senders_mask >> b & 1)


def _raw_link_families(group: Group, v: CompositeVarSet):
    """Yield ``(lhs_mask, rhs_sender_mask)`` before deduplication.

    Masks index ``v.variables`` and ``group.senders`` respectively.
    """
    P = group.senders
    pos = {k: b for b, k in enumerate(P)}
    nv = len(v.variables)
    if v.compression == NONCOOPERATIVE:
        for j in group.receivers:
            A = group.side(j)
            for k in P:
                m = 0
                for i, g in enumerate(v.variables):
                    if v.owner[g] == k and not v.subset[g] <= A:
                        m |= 1 << i
                yield m, 1 << pos[k]
        return
    # cooperative: J counts against a sender set K~ exactly when every sender
    # able to form J lies in K~
    sup = []
    for g in v.variables:
        J = v.subset[g]
        s = 0
        for k in P:
            if J <= group.instance.S(k):
                s |= 1 << pos[k]
        sup.append(s)
    full = (1 << len(P)) - 1
    for j in group.receivers:
        A = group.side(j)
        outside = [i for i in range(nv) if not v.subset[v.variables[i]] <= A]
        by_sup = {}
        for i in outside:
            by_sup[sup[i]] = by_sup.get(sup[i], 0) | (1 << i)
        items = list(by_sup.items())
        for K in range(1, full + 1):
            m = 0
            for s, bits in items:
                if s & ~K == 0:
                    m |= bits
            yield m, K


def _prune(families, nv: int, weigh, symbolic: bool):
    """Drop empty and dominated constraints.

    ``(L1, r1)`` is dominated by ``(L2, r2)`` when ``L1`` is inside ``L2`` and
    ``r1 >= r2``; with symbolic capacities ``r1 >= r2`` is certified by the
    sender set of ``r1`` containing that of ``r2``.
    """
    if symbolic:
        best = {}
        for L, K in families:
            if not L:
                continue
            cur = best.setdefault(L, [])
            if any(k & K == k for k in cur):
                continue
            best[L] = [k for k in cur if k & K != K] + [K]
        items = [(L, K) for L, ks in best.items() for K in ks]
        out = []
        for L1, K1 in items:
            dominated = any(
                (L1 & L2 == L1) and (K1 & K2 == K2) and (L1, K1) != (L2, K2)
                for L2, K2 in items
            )
            if not dominated:
                out.append((L1, K1))
        return out
    best = {}
    for L, K in families:
        if not L:
            continue
        r = weigh(K)
        if L not in best or r < best[L][0]:
            best[L] = (r, K)
    if len(best) <= _SWEEP_THRESHOLD or nv > 24:
        items = list(best.items())
        out = []
        for L1, (r1, K1) in items:
            if not any(L1 != L2 and L1 & L2 == L1 and r1 >= r2 for L2, (r2, _) in items):
                out.append((L1, K1))
        return out
    # superset-minimum sweep over all 2^nv masks
    INF = None
    size = 1 << nv
    supmin = [INF] * size
    for L, (r, _) in best.items():
        supmin[L] = r
    for b in range(nv):
        bit = 1 << b
        for m in range(size):
            if not m & bit:
                hi = supmin[m | bit]
                if hi is not None and (supmin[m] is None or hi < supmin[m]):
                    supmin[m] = hi
    out = []
    for L, (r, K) in best.items():
        strict = None
        for b in range(nv):
            if not L >> b & 1:
                s = supmin[L | (1 << b)]
                if s is not None and (strict is None or s < strict):
                    strict = s
        if strict is None or r < strict:
            out.append((L, K))
    return out


def link_constraints(group: Group, v: CompositeVarSet) -> list:
    """``(coeffs, rhs)`` pairs bounding composite rates by link capacity.

    With symbolic capacities the split variables appear on the left with
    coefficient -1 and the right-hand side is 0.
    """
    P = group.senders
    fams = _prune(
        _raw_link_families(group, v),
        len(v.variables),
        lambda K: _rhs_value(group, K, P),
        group.symbolic,
    )
    out = []
    for L, K in sorted(fams):
        coeffs = {v.variables[i]: Fraction(1) for i in range(len(v.variables)) if L >> i & 1}
        if group.symbolic:
            for b, k in enumerate(P):
                if K >> b & 1:
                    coeffs[VarId.split(k, P)] = Fraction(-1)
            out.append((coeffs, Fraction(0)))
        else:
            out.append((coeffs, _rhs_value(group, K, P)))
    return out


def relevant_vars(group: Group, d: DecodingChoice, v: CompositeVarSet) -> CompositeVarSet:
    """Composite variables that occur in some decoding constraint.

    The others only ever appear on the left of link constraints, so fixing
    them at zero loses nothing; dropping them gives the same projection.
    """
    keep = set()
    for j in group.receivers:
        D = d[j]
        U = D | group.side(j)
        for g in v.variables:
            J = v.subset[g]
            if J <= U and J & D:
                keep.add(g)
    return v.restricted(keep)


def lifted_system(group: Group, d: DecodingChoice, compression: str, *,
                  prune: bool = True) -> tuple:
    """The full constraint system of one group and decoding choice.

    Returns ``(polyhedron, composite_variables)``; the polyhedron lives over
    group rates, composite rates and (symbolic groups) split capacities.
    """
    v = composite_vars(group, compression)
    if prune:
        v = relevant_vars(group, d, v)
    rates = [group.rate_var(j) for j in group.receivers]
    splits = [VarId.split(k, group.senders) for k in group.senders] if group.symbolic else []
    variables = rates + list(v.variables) + splits
    ineqs = decoding_constraints(group, d, v) + link_constraints(group, v)
    poly = Polyhedron.from_inequalities(variables, ineqs).with_nonnegativity()
    return poly, v
