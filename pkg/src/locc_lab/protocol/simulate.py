"""Exact simulation of a protocol tree on a state set."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ..exact_linalg import format_rational
from ..states import StateSet
from .joint import JointState, Resource
from .tree import COMPLEMENT, UNREACHABLE, Child, Leaf, ProtocolTree, validate_tree


def descend(node: Child, state: JointState, path: str = "") -> Iterator[tuple[str, Leaf, JointState]]:
    """Yield (leaf path, leaf, unnormalized post-measurement state) for every branch with mass."""
    if isinstance(node, Leaf):
        yield path or "root", node, state
        return
    for out, child in zip(node.outcomes, node.children):
        post = state.apply(node.party, out.projector)
        if not post.is_zero():
            yield from descend(child, post, f"{path}/{out.label}" if path else out.label)


@dataclass(frozen=True)
class DiscriminationReport:
    # input label -> {leaf path: probability}
    distributions: dict[str, dict[str, Fraction]]
    # leaf path -> label written on the leaf
    leaf_labels: dict[str, str | None]

    def total(self, label: str) -> Fraction:
        return sum(self.distributions[label].values(), Fraction(0))

    def correct_mass(self, label: str) -> Fraction:
        return sum((p for leaf, p in self.distributions[label].items()
                    if self.leaf_labels[leaf] == label), Fraction(0))

    def shared_leaves(self) -> dict[str, list[str]]:
        hits: dict[str, list[str]] = {}
        for label, dist in self.distributions.items():
            for leaf, p in dist.items():
                if p:
                    hits.setdefault(leaf, []).append(label)
        return {leaf: labs for leaf, labs in hits.items() if len(labs) > 1}

    def unreachable_hits(self) -> list[str]:
        return [leaf for leaf, lab in self.leaf_labels.items()
                if lab == UNREACHABLE and any(d.get(leaf) for d in self.distributions.values())]

    def complement_hits(self) -> dict[str, list[str]]:
        """Inputs with mass below each completion ("complement") outcome, keyed by outcome path."""
        hits: dict[str, set] = {}
        for label, dist in self.distributions.items():
            for leaf, p in dist.items():
                if not p:
                    continue
                parts = leaf.split("/")
                for i, part in enumerate(parts):
                    if part.rstrip("'") == COMPLEMENT:
                        hits.setdefault("/".join(parts[:i + 1]), set()).add(label)
        return {k: sorted(v) for k, v in sorted(hits.items())}

    @property
    def perfect(self) -> bool:
        return (
            all(self.total(x) == 1 and self.correct_mass(x) == 1 for x in self.distributions)
            and not self.shared_leaves()
        )

    def to_dict(self) -> dict:
        return {
            "perfect": self.perfect,
            "states": [
                {"label": label,
                 "p_correct": format_rational(self.correct_mass(label)),
                 "leaves": [{"leaf": leaf, "identifies": self.leaf_labels[leaf], "p": format_rational(p)}
                            for leaf, p in dist.items()]}
                for label, dist in self.distributions.items()
            ],
            "shared_leaves": self.shared_leaves(),
            "complement_hits": self.complement_hits(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def run(tree: ProtocolTree, s: StateSet, resource: Resource | None = None) -> DiscriminationReport:
    """Push every input state (with the ancilla resource) through the tree.

    Raises TreeInvalidError before simulating if any node is not a complete
    projective measurement.
    """
    validate_tree(tree)
    if (s.n, s.m) != (tree.n, tree.m):
        raise ValueError(f"tree is for C^{tree.n} x C^{tree.m}, states are C^{s.n} x C^{s.m}")
    leaf_labels = {path: leaf.label for path, leaf in tree.leaves().items()}
    dists = {}
    for st in s:
        psi = JointState.prepare(st, resource)
        norm = psi.norm2()
        dist: dict[str, Fraction] = {}
        for path, _, post in descend(tree.root, psi):
            dist[path] = dist.get(path, Fraction(0)) + post.norm2() / norm
        dists[st.label] = dist
    return DiscriminationReport(dists, leaf_labels)
