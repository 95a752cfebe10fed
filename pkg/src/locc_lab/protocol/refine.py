"""Search for a local measurement sequence that separates a set of survivors.

Each step is a two-outcome projective measurement {P, I - P} by one party.
P is admissible when it keeps every pair of survivors orthogonal,
``<s_i|P|s_j> = 0`` for i != j (the complement then does too), and when both
branches make progress: the potential ``sum(1 + schmidt_rank)`` over the
survivors with nonzero weight strictly drops on each side. The potential
bounds the depth, so the search always terminates.

Candidates are built from the survivors' own local vectors: the ancilla
split, rank-one projectors onto each local vector (this covers rotated bases
such as |3+4> vs |3-4>), single basis labels, spans of mutually
non-orthogonal groups of local vectors, and ancilla-coherent rays c_i +- c_j
from one survivor's columns (needed for pairs like |11> +- |22>).
Survivor sets that failed once are remembered for the rest of the search.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

from .joint import (
    JointState,
    Projector,
    basis_projector,
    full_ray_projector,
    other,
    ray_projector,
    span_projector,
)
from .tree import Child, Leaf, MeasurementNode, Outcome, UNREACHABLE

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 50_000


class SearchBudgetExceeded(RuntimeError):
    pass


def _ray(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Primitive integer representative with a positive leading entry."""
    v = [Fraction(x) for x in v]
    scale = math.lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = math.gcd(*ints)
    if next(x for x in ints if x) < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def _ket_str(v: Sequence[Fraction]) -> str:
    out = []
    for i, x in enumerate(v, start=1):
        if not x:
            continue
        sign = "-" if x < 0 else ("+" if out else "")
        mag = "" if abs(x) == 1 else f"{abs(x)}*"
        out.append(f"{sign}{mag}{i}")
    return "|" + "".join(out) + ">"


def _full_str(v: Sequence[Fraction], d: int) -> str:
    parts = [f"a{k + 1}{_ket_str(v[k * d:(k + 1) * d])}" for k in (0, 1) if any(v[k * d:(k + 1) * d])]
    return "(" + "+".join(parts) + ")"


def _components(rays: list[tuple[Fraction, ...]]) -> list[list[tuple[Fraction, ...]]]:
    """Group vectors into classes connected by nonzero overlap."""
    parent = list(range(len(rays)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            if sum(a * b for a, b in zip(rays[i], rays[j])):
                parent[find(i)] = find(j)
    groups: dict[int, list] = {}
    for i, r in enumerate(rays):
        groups.setdefault(find(i), []).append(r)
    return list(groups.values())


def candidates(survivors: Sequence[JointState], party: str) -> list[tuple[str, Projector]]:
    d = survivors[0].local_dim(party)
    rays: dict[int, set] = {1: set(), 2: set()}
    for s in survivors:
        for anc, v in s.local_vectors(party):
            rays[anc].add(_ray(v))
    out: dict[tuple, tuple[str, Projector]] = {}

    def add(desc: str, p: Projector):
        if p.rank:
            out.setdefault(p.key(), (desc, p))

    add("a1", basis_projector(d, 1, range(1, d + 1)))
    everything = set()
    for anc in (1, 2):
        rs = sorted(rays[anc])
        everything.update(rs)
        support = sorted({i + 1 for r in rs for i, x in enumerate(r) if x})
        for r in rs:
            add(f"a{anc}{_ket_str(r)}", ray_projector(d, anc, r))
        for i in support:
            add(f"a{anc}|{i}>", basis_projector(d, anc, [i]))
        comps = _components(rs)
        if len(comps) > 1:
            for comp in comps:
                sup = sorted({i + 1 for r in comp for i, x in enumerate(r) if x})
                add(f"a{anc}span{''.join(_ket_str(r) for r in comp)}", span_projector(d, anc, comp))
                add(f"a{anc}|{','.join(map(str, sup))}>", basis_projector(d, anc, sup))
    for r in sorted(everything):
        add(_ket_str(r), ray_projector(d, None, r))
    # ancilla-coherent rays: columns mixing both ancilla blocks, and c_i +- c_j
    # within one state (needed for pairs like |11> +- |22> on the ancillas)
    for s in survivors:
        cols = s.local_columns(party)
        for c in cols:
            if any(c[:d]) and any(c[d:]):
                c = _ray(c)
                add(f"coh{_full_str(c, d)}", full_ray_projector(c))
        for i, c in enumerate(cols):
            for e in cols[i + 1:]:
                for sign in (1, -1):
                    v = [x + sign * y for x, y in zip(c, e)]
                    if not any(v):
                        continue
                    v = _ray(v)
                    add(f"coh{_full_str(v, d)}", full_ray_projector(v))
    return sorted(out.values(), key=lambda dp: (dp[1].rank, dp[1].key()))


def _potential(states: Sequence[JointState]) -> int:
    return sum(1 + s.schmidt_rank() for s in states)


def _minus(s: JointState, t: JointState) -> JointState:
    out = dict(s.coeffs)
    for k, x in t.coeffs.items():
        v = out.get(k, 0) - x
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return JointState(s.n, s.m, s.origin, out)


def split(survivors: Sequence[JointState], party: str, p: Projector):
    """Apply {P, I-P}; return (inside, outside) survivors, or None if P disturbs orthogonality."""
    posts = [s.apply(party, p) for s in survivors]
    for i, ps in enumerate(posts):
        if ps.is_zero():
            continue
        for j, s in enumerate(survivors):
            if i != j and ps.inner(s) != 0:
                return None
    inside = [ps for ps in posts if not ps.is_zero()]
    outside = [r for r in (_minus(s, ps) for s, ps in zip(survivors, posts)) if not r.is_zero()]
    return inside, outside


def _signature(states: Sequence[JointState], last: str | None) -> tuple:
    return last, frozenset((s.origin, frozenset(s.coeffs.items())) for s in states)


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self.failed: set = set()

    def solve(self, survivors: list[JointState], last: str | None) -> Child | None:
        if not survivors:
            return Leaf(UNREACHABLE)
        if len({s.origin for s in survivors}) == 1:
            return Leaf(survivors[0].origin)
        sig = _signature(survivors, last)
        if sig in self.failed:
            return None
        phi = _potential(survivors)
        order = [other(last), last] if last else ["A", "B"]
        for party in order:
            for desc, p in candidates(survivors, party):
                self.steps += 1
                if self.steps > self.budget:
                    raise SearchBudgetExceeded(f"gave up after {self.budget} candidate checks")
                parts = split(survivors, party, p)
                if parts is None:
                    continue
                inside, outside = parts
                if _potential(inside) >= phi or _potential(outside) >= phi:
                    continue
                left = self.solve(inside, party)
                if left is None:
                    continue
                right = self.solve(outside, party)
                if right is None:
                    continue
                return MeasurementNode(
                    party,
                    (Outcome(f"{party}{desc}", p), Outcome(f"{party}~{desc}", p.complement())),
                    (left, right),
                    "search",
                )
        self.failed.add(sig)
        return None


def refine_leaf(survivors: Sequence[JointState], last_party: str | None = None,
                budget: int = DEFAULT_BUDGET) -> Child | None:
    """Build a subtree that identifies every survivor, or return None.

    ``survivors`` must be mutually orthogonal. Parties are tried starting with
    the one that did not act last; candidates by rank, then lexicographically.
    """
    survivors = list(survivors)
    for i, s in enumerate(survivors):
        for t in survivors[i + 1:]:
            if s.inner(t) != 0:
                return None
    try:
        return _Search(budget).solve(survivors, last_party)
    except SearchBudgetExceeded as exc:
        log.warning("refine_leaf: %s (%d survivors)", exc, len(survivors))
        return None
