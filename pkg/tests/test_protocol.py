from fractions import Fraction
from functools import lru_cache

import pytest

from locc_lab.families import build
from locc_lab.protocol import (
    COMPLEMENT,
    JointState,
    Leaf,
    MeasurementNode,
    Outcome,
    ProtocolTree,
    Resource,
    TreeInvalidError,
    build_tree,
    refine_leaf,
    run,
    validate_tree,
)
from locc_lab.protocol.joint import basis_projector, identity_projector, ray_projector
from locc_lab.protocol.tree import node_problems, tree_depth
from locc_lab.states import Ket, ProductState, StateSet
from oracles import pairwise_disjoint_supports

CASES = [
    (4, 5, 4), (4, 6, 4), (4, 8, 4), (4, 4, 4),
    (5, 6, 6), (5, 7, 6), (5, 8, 6), (5, 8, 8),
    (6, 5, 5), (6, 7, 5), (6, 7, 7), (6, 9, 7),
]


@lru_cache(maxsize=None)
def tree(th, n, m):
    return build_tree(th, n, m)


@lru_cache(maxsize=None)
def report(th, n, m):
    return run(tree(th, n, m), build(n, m))


def joint(n, m, label, coeffs):
    return JointState(n, m, label, {k: Fraction(v) for k, v in coeffs.items()})


def test_resource():
    assert Resource.mes().schmidt_rank() == 2
    assert Resource.product().schmidt_rank() == 1


def test_amps_ordering():
    # |1>_A|1>_B (|11> + |22>)_ab -> basis positions (A,B,a,b) = (0,0,0,0) and (0,0,1,1)
    st = ProductState("x", Ket.of(2, 1), Ket.of(2, 1))
    amps = JointState.prepare(st).amps
    assert [i for i, x in enumerate(amps) if x] == [0, 3]


@pytest.mark.parametrize("case", CASES)
def test_perfect_discrimination(case):
    r = report(*case)
    assert r.perfect
    for label in r.distributions:
        assert r.total(label) == 1
        assert r.correct_mass(label) == 1
    assert not r.unreachable_hits()


@pytest.mark.parametrize("case", CASES)
def test_nodes_are_sound(case):
    t = tree(*case)
    validate_tree(t)
    for node in t.nodes():
        assert node_problems(node) == []
        assert node.local_size == 2 * (t.n if node.party == "A" else t.m)


@pytest.mark.parametrize("case", CASES)
def test_only_the_stopper_reaches_completions(case):
    hits = report(*case).complement_hits()
    assert all(labels == ["phi"] for labels in hits.values())


@pytest.mark.parametrize("case", [c for c in CASES if c[1] <= 6])
def test_verdict_matches_leaf_support_oracle(case):
    r = report(*case)
    assert r.perfect == pairwise_disjoint_supports(r.distributions)


def test_thm4_structure():
    t = tree(4, 6, 4)
    assert t.root.party == "A" and len(t.root.outcomes) == 2
    bob = t.root.children[0]
    assert isinstance(bob, MeasurementNode) and bob.party == "B" and len(bob.outcomes) >= 3
    assert [o.label for o in bob.outcomes][:3] == ["B1", "B2", "B3"]
    assert t.root.children[1].origin == "mirror"


def test_thm4_each_state_probability_one():
    r = report(4, 6, 4)
    assert len(r.distributions) == 11
    assert all(r.correct_mass(x) == 1 for x in r.distributions)


def test_product_resource_fails():
    s = build(6, 4)
    r = run(tree(4, 6, 4), s, Resource.product())
    assert not r.perfect
    assert not pairwise_disjoint_supports(r.distributions)
    assert any(set(v) == {"phi", "varphi_3"} for v in r.shared_leaves().values())


def test_thm5_replacement_is_recorded():
    assert any("replaced by searched subtree" in note for note in tree(5, 7, 6).notes)


def test_single_state_identity_tree():
    s = StateSet(2, 2, (ProductState("x", Ket.of(2, 1), Ket.of(2, 1)),))
    root = MeasurementNode("A", (Outcome("I", identity_projector(2)),), (Leaf("x"),))
    r = run(ProtocolTree(root, 2, 2), s)
    assert r.distributions == {"x": {"I": 1}}
    assert r.perfect


def test_incomplete_node_rejected_before_simulation():
    s = build(6, 4)
    root = MeasurementNode("A", (Outcome("half", basis_projector(6, 1, [1])),), (Leaf("phi"),))
    with pytest.raises(TreeInvalidError):
        run(ProtocolTree(root, 6, 4), s)


def test_non_projector_rejected():
    p = ray_projector(2, 1, [1, 1])
    doubled = type(p)(p.matrix.scale(2))
    node = MeasurementNode("A", (Outcome("x", doubled), Outcome("y", doubled.complement())), (Leaf(), Leaf()))
    assert any("idempotent" in x for x in node_problems(node))


def test_wrong_dimension_rejected():
    root = MeasurementNode("A", (Outcome("I", identity_projector(3)),), (Leaf("x"),))
    with pytest.raises(TreeInvalidError):
        validate_tree(ProtocolTree(root, 2, 2))


def test_tree_json_round_trip():
    t = tree(6, 5, 5)
    back = ProtocolTree.from_dict(t.to_dict())
    assert back.leaves() == t.leaves()
    assert run(back, build(5, 5)).distributions == report(6, 5, 5).distributions


def test_report_json_uses_rational_strings():
    d = report(4, 5, 4).to_dict()
    assert d["perfect"] is True
    probs = [leaf["p"] for st in d["states"] for leaf in st["leaves"]]
    assert all(isinstance(p, str) for p in probs)
    assert {st["p_correct"] for st in d["states"]} == {"1"}


# refine_leaf

def test_refine_splits_on_ancilla():
    x = joint(2, 2, "x", {(0, 0): 1})
    y = joint(2, 2, "y", {(2, 0): 1, (2, 1): 1})
    t = refine_leaf([x, y])
    assert t.party == "A" and tree_depth(t) == 1


def test_refine_rotated_pair():
    x = joint(2, 4, "x", {(0, 2): 1, (0, 3): 1})
    y = joint(2, 4, "y", {(0, 2): 1, (0, 3): -1})
    t = refine_leaf([x, y])
    assert t.party == "B" and tree_depth(t) == 1


def test_refine_thm4_b2_survivors():
    s = build(6, 4)
    a1 = basis_projector(6, 1, [1]) + basis_projector(6, 2, range(2, 7))
    b2 = basis_projector(4, 2, [1, 2])
    post = [JointState.prepare(x).apply("A", a1).apply("B", b2) for x in s]
    post = [p for p in post if not p.is_zero()]
    assert [p.origin for p in post] == ["phi", "varphi_4", "varphi_5", "varphi_6", "varphi_7"]
    without_phi = refine_leaf(post[1:], "B")
    assert without_phi is not None and tree_depth(without_phi) <= 3
    assert refine_leaf(post, "B") is not None


def test_refine_rejects_non_orthogonal():
    x = joint(2, 2, "x", {(0, 0): 1})
    y = joint(2, 2, "y", {(0, 0): 1, (1, 0): 1})
    assert refine_leaf([x, y]) is None


def test_refine_gives_up_on_bell_basis():
    # the four Bell states cannot be told apart by LOCC; the search must fail, not lie
    bell = [
        joint(1, 1, "b1", {(0, 0): 1, (1, 1): 1}),
        joint(1, 1, "b2", {(0, 0): 1, (1, 1): -1}),
        joint(1, 1, "b3", {(0, 1): 1, (1, 0): 1}),
        joint(1, 1, "b4", {(0, 1): 1, (1, 0): -1}),
    ]
    assert refine_leaf(bell) is None


def test_refine_leaves_identify_states():
    s = build(5, 4)
    post = [JointState.prepare(x) for x in s.without("phi")]
    t = refine_leaf(post)
    assert t is not None
    labels = [leaf.label for leaf in ProtocolTree(t, 5, 4).leaves().values()]
    assert COMPLEMENT not in labels
    sub = StateSet(5, 4, tuple(s.without("phi")))
    assert run(ProtocolTree(t, 5, 4), sub).perfect
