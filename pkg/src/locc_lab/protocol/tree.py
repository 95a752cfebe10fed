"""Measurement trees: nodes hold local projective measurements, leaves name states."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Union

from ..exact_linalg import RationalMatrix, format_rational, parse_rational
from .joint import Projector

UNREACHABLE = "unreachable"
COMPLEMENT = "complement"


class TreeInvalidError(ValueError):
    pass


@dataclass(frozen=True)
class Outcome:
    label: str
    projector: Projector


@dataclass(frozen=True)
class Leaf:
    """Terminal outcome. ``label`` is the identified state, UNREACHABLE, or None while unfinished."""
    label: str | None = None
    candidates: tuple[str, ...] = ()

    @property
    def ambiguous(self) -> bool:
        return len(self.candidates) > 1


@dataclass(frozen=True)
class MeasurementNode:
    party: str
    outcomes: tuple[Outcome, ...]
    children: tuple[Union["MeasurementNode", Leaf], ...]
    # where this node came from: "written", "search", "mirror"
    origin: str = "written"

    def __post_init__(self):
        if self.party not in ("A", "B"):
            raise TreeInvalidError(f"party must be 'A' or 'B', got {self.party!r}")
        if len(self.outcomes) != len(self.children):
            raise TreeInvalidError("one child per outcome required")

    @property
    def local_size(self) -> int:
        return self.outcomes[0].projector.size

    def with_children(self, children) -> MeasurementNode:
        return replace(self, children=tuple(children))


Child = Union[MeasurementNode, Leaf]


@dataclass(frozen=True)
class ProtocolTree:
    root: Child
    n: int
    m: int
    notes: tuple[str, ...] = field(default=())

    def nodes(self) -> Iterator[MeasurementNode]:
        return iter_nodes(self.root)

    def leaves(self) -> dict[str, Leaf]:
        """Leaf path (outcome labels joined by '/') -> leaf."""
        return dict(iter_leaves(self.root))

    def depth(self) -> int:
        return tree_depth(self.root)

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "notes": list(self.notes), "root": node_to_dict(self.root)}

    @classmethod
    def from_dict(cls, d: dict) -> ProtocolTree:
        return cls(node_from_dict(d["root"]), int(d["n"]), int(d["m"]), tuple(d.get("notes", ())))


def iter_nodes(node: Child) -> Iterator[MeasurementNode]:
    if isinstance(node, MeasurementNode):
        yield node
        for c in node.children:
            yield from iter_nodes(c)


def iter_leaves(node: Child, prefix: str = "") -> Iterator[tuple[str, Leaf]]:
    if isinstance(node, Leaf):
        yield prefix or "root", node
        return
    for out, child in zip(node.outcomes, node.children):
        yield from iter_leaves(child, f"{prefix}/{out.label}" if prefix else out.label)


def tree_depth(node: Child) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(c) for c in node.children)


def _sparse(m: RationalMatrix) -> dict[int, dict[int, object]]:
    rows: dict[int, dict[int, object]] = {}
    for i in range(m.rows):
        for j in range(m.cols):
            x = m[i, j]
            if x:
                rows.setdefault(i, {})[j] = x
    return rows


def _sparse_mul(a: dict, b: dict) -> dict:
    out: dict[int, dict[int, object]] = {}
    for i, row in a.items():
        acc: dict[int, object] = {}
        for k, x in row.items():
            for j, y in b.get(k, {}).items():
                acc[j] = acc.get(j, 0) + x * y
        acc = {j: v for j, v in acc.items() if v}
        if acc:
            out[i] = acc
    return out


def node_problems(node: MeasurementNode) -> list[str]:
    """Idempotence, symmetry, mutual orthogonality and completeness, checked exactly."""
    problems = []
    size = node.local_size
    total: dict[tuple[int, int], object] = {}
    mats = []
    for out in node.outcomes:
        p = out.projector.matrix
        if (p.rows, p.cols) != (size, size):
            problems.append(f"{out.label}: shape {p.rows}x{p.cols}, expected {size}x{size}")
            continue
        if p.transpose() != p:
            problems.append(f"{out.label}: not self-adjoint")
        sp = _sparse(p)
        if _sparse_mul(sp, sp) != sp:
            problems.append(f"{out.label}: not idempotent")
        mats.append((out.label, sp))
        for i, row in sp.items():
            for j, x in row.items():
                total[i, j] = total.get((i, j), 0) + x
    for i, (li, pi) in enumerate(mats):
        for lj, pj in mats[i + 1:]:
            if _sparse_mul(pi, pj):
                problems.append(f"{li} and {lj} are not orthogonal")
    if {k: v for k, v in total.items() if v} != {(i, i): 1 for i in range(size)}:
        problems.append("outcomes do not sum to the identity")
    return problems


def validate_tree(tree: ProtocolTree) -> None:
    expected = {"A": 2 * tree.n, "B": 2 * tree.m}
    for node in tree.nodes():
        if node.local_size != expected[node.party]:
            raise TreeInvalidError(
                f"{node.party} node acts on dimension {node.local_size}, expected {expected[node.party]}"
            )
        problems = node_problems(node)
        if problems:
            raise TreeInvalidError(f"{node.party} node {[o.label for o in node.outcomes]}: {problems}")


def mirror(node: Child) -> Child:
    """Swap ancilla labels 1 <-> 2 in every projector of a subtree; leaves become unfinished."""
    if isinstance(node, Leaf):
        return Leaf()
    return MeasurementNode(
        node.party,
        tuple(Outcome(o.label + "'", o.projector.mirrored()) for o in node.outcomes),
        tuple(mirror(c) for c in node.children),
        "mirror",
    )


def node_to_dict(node: Child) -> dict:
    if isinstance(node, Leaf):
        d = {"leaf": node.label}
        if node.candidates:
            d["candidates"] = list(node.candidates)
        return d
    return {
        "party": node.party,
        "origin": node.origin,
        "outcomes": [
            {"label": o.label,
             "projector": [[format_rational(x) for x in row] for row in o.projector.matrix.to_rows()]}
            for o in node.outcomes
        ],
        "children": [node_to_dict(c) for c in node.children],
    }


def node_from_dict(d: dict) -> Child:
    if "leaf" in d:
        return Leaf(d["leaf"], tuple(d.get("candidates", ())))
    outcomes = tuple(
        Outcome(o["label"], Projector(RationalMatrix.from_rows(
            [[parse_rational(x) for x in row] for row in o["projector"]])))
        for o in d["outcomes"]
    )
    return MeasurementNode(d["party"], outcomes, tuple(node_from_dict(c) for c in d["children"]),
                           d.get("origin", "written"))
