import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locc_lab.certify import (
    PreconditionError,
    certify_both,
    certify_party,
    hermitian_parameters,
    satisfies_constraints,
    witness_matrix,
)
from locc_lab.families import build, valid_families
from locc_lab.states import Ket, ProductState, StateSet
from oracles import brute_force_solution_dim

SMALL = [(n, m) for n in range(4, 7) for m in range(4, n + 1)]


def two_basis_states():
    return StateSet(2, 2, (
        ProductState("x", Ket.of(2, 1), Ket.of(2, 1)),
        ProductState("y", Ket.of(2, 2), Ket.of(2, 2)),
    ))


def test_parameter_count():
    assert len(hermitian_parameters(4)) == 16


@pytest.mark.parametrize("party", ["A", "B"])
def test_thm1_scalar_only(party):
    assert certify_party(build(6, 4), party).is_scalar_only


def test_thm1_without_stopper_has_witness():
    s = build(6, 4).without("phi")
    c = certify_party(s, "A")
    assert c.solution_dim > 1
    w = witness_matrix(c)
    assert w is not None and not w.is_scalar()
    assert satisfies_constraints(s, "A", w)
    # diagonal freedom: every kernel element is diagonal here
    assert all(w.real[i, j] == 0 for i in range(6) for j in range(6) if i != j)


def test_thm2_both():
    a, b = certify_both(build(7, 6))
    assert a.is_scalar_only and b.is_scalar_only


def test_thm3_55_is_not_scalar_only():
    # see the ledger: rows k-1 and k+3 are unconstrained at n = m = 5
    a, b = certify_both(build(5, 5))
    assert (a.solution_dim, b.solution_dim) == (2, 2)
    w = witness_matrix(a)
    off = {(i + 1, j + 1) for i in range(5) for j in range(5) if i != j and w.real[i, j]}
    assert all(1 in p or 5 in p for p in off)


def test_distinguishable_pair():
    a, b = certify_both(two_basis_states())
    assert not a.is_scalar_only and not b.is_scalar_only
    assert a.constraint_count == 0
    assert witness_matrix(a) is not None


def test_scalar_only_has_no_witness():
    assert witness_matrix(certify_party(build(6, 4), "A")) is None


def test_non_orthogonal_input():
    bad = StateSet(2, 2, (
        ProductState("x", Ket.of(2, 1), Ket.of(2, 1)),
        ProductState("y", Ket.of(2, 1), Ket.of(2, 1, 2)),
    ))
    with pytest.raises(PreconditionError):
        certify_party(bad, "A")


def test_certificate_json():
    d = json.loads(certify_party(build(6, 4), "A").to_json())
    assert set(d) == {"party", "dim", "solution_dim", "scalar_only", "active_pairs", "witness"}
    assert d["party"] == "A" and d["dim"] == 6 and d["solution_dim"] == 1 and d["witness"] is None


def test_witness_json_uses_rational_strings():
    d = certify_party(build(6, 4).without("phi"), "A").to_dict()
    assert all(isinstance(x, str) for row in d["witness"]["real"] for x in row)


@pytest.mark.parametrize("nm", SMALL)
@pytest.mark.parametrize("party", ["A", "B"])
def test_matches_brute_force(nm, party):
    for fam in valid_families(*nm):
        s = build(*nm, fam)
        assert certify_party(s, party).solution_dim == brute_force_solution_dim(s, party)


def test_matches_brute_force_without_stopper():
    s = build(6, 4).without("phi")
    for party in "AB":
        assert certify_party(s, party).solution_dim == brute_force_solution_dim(s, party)


@pytest.mark.parametrize("nm", [(6, 4), (6, 6), (7, 5)])
def test_every_basis_element_resubstitutes(nm):
    s = build(*nm).without("phi")
    for party in "AB":
        for h in certify_party(s, party).solution_basis:
            assert satisfies_constraints(s, party, h)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(5, 4), (6, 4), (6, 5), (6, 6)]), st.data())
def test_adding_a_state_never_grows_solution_space(nm, data):
    s = build(*nm)
    labels = s.labels()
    keep = data.draw(st.lists(st.sampled_from(labels), unique=True, min_size=1, max_size=len(labels) - 1))
    extra = data.draw(st.sampled_from([x for x in labels if x not in keep]))
    small = StateSet(s.n, s.m, tuple(s.get(x) for x in keep))
    big = StateSet(s.n, s.m, tuple(s.get(x) for x in keep + [extra]))
    party = data.draw(st.sampled_from("AB"))
    assert certify_party(big, party).solution_dim <= certify_party(small, party).solution_dim
