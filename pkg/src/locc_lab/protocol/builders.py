"""Discrimination protocols for the three families, using one 2x2 MES.

Each builder writes down the measurements spelled out for its family as a
skeleton tree, then :func:`complete` pushes the actual survivors through it:

* leaves reached by one state are labeled with it, by none "unreachable";
* leaves reached by several states get a :func:`refine_leaf` subtree;
* a written-down node below the root whose subtree still cannot separate
  its survivors is replaced by a searched subtree (recorded in ``notes``).

Outcome lists that do not add up to the identity are completed with a
``complement`` outcome. Only the first root branch is written out; the
second is its ancilla mirror (labels 1 <-> 2), checked the same way.
"""

from __future__ import annotations

from typing import Sequence

from ..families import FamilyParams, build, check_params
from ..states import StateSet
from .joint import (
    JointState,
    Projector,
    Resource,
    basis_projector,
    ray_projector,
    sum_projectors,
)
from .refine import refine_leaf
from .tree import COMPLEMENT, UNREACHABLE, Child, Leaf, MeasurementNode, Outcome, ProtocolTree, mirror

AMBIGUOUS = "ambiguous"


def _r(a: int, b: int) -> range:
    """Inclusive integer range."""
    return range(a, b + 1)


def _vec(d: int, *terms) -> list[int]:
    v = [0] * d
    for t in terms:
        i, c = (t, 1) if isinstance(t, int) else t
        v[i - 1] = c
    return v


def measurement(party: str, d: int, outcomes: Sequence[tuple[str, Projector]],
                children: dict[str, Child] | None = None) -> MeasurementNode:
    """A written-down node; adds the complement outcome when needed."""
    outs = [Outcome(label, p) for label, p in outcomes]
    rest = sum_projectors((o.projector for o in outs), d).complement()
    if rest.rank:
        outs.append(Outcome(COMPLEMENT, rest))
    children = children or {}
    return MeasurementNode(party, tuple(outs), tuple(children.get(o.label, Leaf()) for o in outs))


def _has_ambiguity(node: Child) -> bool:
    if isinstance(node, Leaf):
        return node.label == AMBIGUOUS
    return any(_has_ambiguity(c) for c in node.children)


def complete(node: Child, survivors: list[JointState], last: str | None,
             notes: list[str], path: str = "root", fallback: bool = True) -> Child:
    if isinstance(node, Leaf):
        origins = sorted({s.origin for s in survivors})
        if not origins:
            return Leaf(UNREACHABLE)
        if len(origins) == 1:
            return Leaf(origins[0])
        sub = refine_leaf(survivors, last)
        if sub is None:
            notes.append(f"{path}: no separating measurement found for {origins}")
            return Leaf(AMBIGUOUS, tuple(origins))
        return sub
    kids, inner = [], []
    for out, child in zip(node.outcomes, node.children):
        post = [p for p in (s.apply(node.party, out.projector) for s in survivors) if not p.is_zero()]
        kids.append(complete(child, post, node.party, inner, f"{path}/{out.label}"))
    done = node.with_children(kids)
    if fallback and _has_ambiguity(done):
        sub = refine_leaf(survivors, last)
        if sub is not None:
            notes.append(f"{path}: written-down {node.party} measurement "
                         f"{[o.label for o in node.outcomes]} replaced by searched subtree")
            return sub
    notes.extend(inner)
    return done


def _two_branch_root(party: str, d: int, first: Projector, first_child: Child,
                     states: StateSet, resource: Resource | None, notes: list[str],
                     names: tuple[str, str]) -> MeasurementNode:
    second = first.complement()
    psi = [JointState.prepare(s, resource) for s in states]
    post1 = [p for p in (s.apply(party, first) for s in psi) if not p.is_zero()]
    post2 = [p for p in (s.apply(party, second) for s in psi) if not p.is_zero()]
    done1 = complete(first_child, post1, party, notes, names[0])
    done2 = complete(mirror(done1), post2, party, notes, names[1], fallback=False)
    if _has_ambiguity(done2):
        sub = refine_leaf(post2, party)
        if sub is not None:
            notes.append(f"{names[1]}: ancilla mirror of {names[0]} failed; searched instead")
            done2 = sub
    return MeasurementNode(party, (Outcome(names[0], first), Outcome(names[1], second)), (done1, done2))


def build_thm4_tree(p: FamilyParams, states: StateSet | None = None,
                    resource: Resource | None = None) -> ProtocolTree:
    n = p.n
    family = "thm1_n4" if n == 4 else "thm1"
    check_params(p, family)
    states = states or build(p.n, p.m, family)
    m = 4
    a1 = basis_projector(n, 1, [1]) + basis_projector(n, 2, _r(2, n))

    b2_node = measurement("A", n, [
        ("A21", basis_projector(n, 2, [2])),
        ("A22", basis_projector(n, 2, _r(3, n))),
    ])
    b3_node = measurement("A", n, [
        ("A31", basis_projector(n, 1, [1]) + basis_projector(n, 2, [2, 3])),
        *[(f"A3{i}", basis_projector(n, 2, [2 + i])) for i in _r(2, n - 2)],
    ])
    bob = measurement("B", m, [
        ("B1", ray_projector(m, 1, _vec(m, 2, 3))),
        # the rank-one |1+2> ray here would disturb |3+4>|1> vs |3-5>|2>
        ("B2", basis_projector(m, 2, [1, 2])),
        ("B3", basis_projector(m, 1, [4]) + basis_projector(m, 2, [3, 4])),
    ], {"B2": b2_node, "B3": b3_node})

    notes: list[str] = []
    root = _two_branch_root("A", n, a1, bob, states, resource, notes, ("A1", "A2"))
    return ProtocolTree(root, n, m, tuple(notes))


def build_thm5_tree(p: FamilyParams, states: StateSet | None = None,
                    resource: Resource | None = None) -> ProtocolTree:
    check_params(p, "thm2")
    n, m, l = p.n, p.m, p.l  # noqa: E741
    states = states or build(n, m, "thm2")
    # A-side sum runs to n so that A1 + A2 is the identity
    a1 = basis_projector(n, 1, _r(1, l - 1)) + basis_projector(n, 2, _r(l, n))

    children: dict[str, Child] = {}
    for i in _r(1, l - 2):
        children[f"B{i}"] = measurement("A", n, [
            (f"A{i}+", ray_projector(n, 1, _vec(n, i, i + 1))),
            (f"A{i}-", ray_projector(n, 1, _vec(n, i, (i + 1, -1)))),
        ])
    children[f"B{l - 1}"] = measurement("A", n, [
        *[(f"A({l - 1}){i}", basis_projector(n, 1, [i])) for i in _r(1, l - 3)],
        (f"A({l - 1})({l - 2})", ray_projector(n, 1, _vec(n, l - 2, l - 1))),
    ])
    children[f"B{l}"] = measurement("A", n, [
        (f"A{l}1", basis_projector(n, 1, [l - 1]) + basis_projector(n, 2, [l, l + 1, l + 2])),
        *[(f"A{l}{i}", basis_projector(n, 2, [l + 1 + i])) for i in _r(2, n - l - 1)],
    ])
    bob = measurement("B", m, [
        *[(f"B{i}", basis_projector(m, 1, [i])) for i in _r(1, l - 2)],
        (f"B{l - 1}", basis_projector(m, 1, _r(l, m))),
        (f"B{l}", basis_projector(m, 1, [l - 1]) + basis_projector(m, 2, _r(1, l + 1))),
        *[(f"B{l + i}", basis_projector(m, 2, [l + 1 + i])) for i in _r(1, m - l - 1)],
    ], children)

    notes: list[str] = []
    root = _two_branch_root("A", n, a1, bob, states, resource, notes, ("A1", "A2"))
    return ProtocolTree(root, n, m, tuple(notes))


def build_thm6_tree(p: FamilyParams, states: StateSet | None = None,
                    resource: Resource | None = None) -> ProtocolTree:
    check_params(p, "thm3")
    n, m, k = p.n, p.m, p.k
    states = states or build(n, m, "thm3")
    b1 = basis_projector(m, 1, _r(1, k + 1)) + basis_projector(m, 2, _r(k + 2, m))

    a3_outcomes = []
    if k >= 3:
        a3_outcomes += [("B31", ray_projector(m, 1, _vec(m, k - 2, k - 1))),
                        ("B32", ray_projector(m, 1, _vec(m, k - 2, (k - 1, -1))))]
    a3_outcomes += [("B33", ray_projector(m, 1, _vec(m, k, k + 1))),
                    ("B34", ray_projector(m, 1, _vec(m, k, (k + 1, -1))))]
    last = f"A{n - k + 2}"
    children: dict[str, Child] = {
        "A1": measurement("B", m, [
            ("B1+", ray_projector(m, 1, _vec(m, k - 1, k))),
            ("B1-", ray_projector(m, 1, _vec(m, k - 1, (k, -1)))),
        ]),
        "A2": measurement("B", m, [
            ("B2+", ray_projector(m, 2, _vec(m, k + 2, k + 3))),
            ("B2-", ray_projector(m, 2, _vec(m, k + 2, (k + 3, -1)))),
        ]),
        "A3": measurement("B", m, a3_outcomes),
        last: measurement("B", m, [
            *[(f"B({n - k + 2}){i}", basis_projector(m, 1, [i])) for i in _r(1, k)],
            (f"B({n - k + 2})({k + 1})", basis_projector(m, 1, [k + 1]) + basis_projector(m, 2, [k + 2])),
            # starts at k+3: label k+2 on ancilla 2 already belongs to the previous outcome
            (f"B({n - k + 2})({k + 2})", basis_projector(m, 2, _r(k + 3, m))),
        ]),
    }
    alice = measurement("A", n, [
        ("A1", basis_projector(n, 1, [k + 3])),
        ("A2", basis_projector(n, 2, [k - 1])),
        ("A3", basis_projector(n, 1, [k + 2])),
        *[(f"A{i + 3}", basis_projector(n, 1, [k + 3 + i])) for i in _r(1, n - k - 3)],
        (f"A{n - k + 1}", basis_projector(n, 2, _r(k + 1, n))),
        (last, basis_projector(n, 1, _r(1, k + 1))
         + basis_projector(n, 2, [*_r(1, k - 2), k])),
    ], children)

    notes: list[str] = []
    root = _two_branch_root("B", m, b1, alice, states, resource, notes, ("B1", "B2"))
    return ProtocolTree(root, n, m, tuple(notes))


THEOREM_FAMILY = {4: "thm1", 5: "thm2", 6: "thm3"}


def build_tree(theorem: int, n: int, m: int, states: StateSet | None = None,
               resource: Resource | None = None) -> ProtocolTree:
    p = FamilyParams(n, m)
    if theorem == 4:
        return build_thm4_tree(p, states, resource)
    if theorem == 5:
        return build_thm5_tree(p, states, resource)
    if theorem == 6:
        return build_thm6_tree(p, states, resource)
    raise ValueError(f"theorem must be 4, 5 or 6, got {theorem}")


def theorem_for(n: int, m: int) -> int | None:
    """Which protocol applies to the default family at (n, m)."""
    if m == 4 and n >= 4:
        return 4
    if m % 2 == 0 and n >= m > 4:
        return 5
    if m % 2 and n >= m >= 5:
        return 6
    return None


__all__ = [
    "AMBIGUOUS", "build_thm4_tree", "build_thm5_tree", "build_thm6_tree", "build_tree",
    "complete", "measurement", "theorem_for",
]
