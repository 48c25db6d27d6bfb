import numpy as np
import pytest
from hypothesis import given, strategies as st

from _support import random_assignable, transvect
from hypergrams import assign, geometry, gf2, pauli
from hypergrams import hypergram as H
from hypergrams.assign import ClassicalAssignment, PauliAssignment

FIXTURES = {
    "doily": geometry.doily,
    "two-spread": geometry.two_spread,
    "variant": geometry.two_spread_variant,
}
EXPECTED_QUBITS = {"doily": 2, "two-spread": 2, "variant": 3}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_labelings_verify(name):
    hg, alpha = FIXTURES[name]()
    assert assign.verify_assignment(alpha, hg)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_algorithm_on_fixtures(name):
    hg, _ = FIXTURES[name]()
    alpha, n = assign.pauli_assignment_from_anticommutations(hg, checked=True)
    assert n == EXPECTED_QUBITS[name] == alpha.n
    assert 2 * n == gf2.rank(H.anticommutation_matrix(hg))
    assert assign.verify_assignment(alpha, hg)


def test_algorithm_is_deterministic():
    hg, _ = geometry.doily()
    assert assign.pauli_assignment_from_anticommutations(hg) == assign.pauli_assignment_from_anticommutations(hg)


def test_not_assignable():
    with pytest.raises(assign.NotAssignable):
        assign.pauli_assignment_from_anticommutations(geometry.nonassignable_example())


def test_fixture_signs():
    hg, alpha = geometry.doily()
    neg = [k for k, s in enumerate(assign.sign_function(alpha, hg)) if s == -1]
    assert len(neg) == 3
    hg, alpha = geometry.two_spread()
    assert [k for k, s in enumerate(assign.sign_function(alpha, hg)) if s == -1] == [8]
    hg, alpha = geometry.two_spread_variant()
    assert sorted(assign.sign_function(alpha, hg)).count(-1) == 2


def test_defects_detected():
    hg, alpha = geometry.doily()
    labels = list(alpha.labels)
    labels[0], labels[1] = labels[1], labels[0]
    assert assign.assignment_defects(PauliAssignment(2, labels), hg)
    labels = list(alpha.labels)
    labels[3] = labels[4]
    assert not assign.verify_assignment(PauliAssignment(2, labels), hg)
    assert assign.assignment_defects(PauliAssignment(2, labels[:3]), hg)


def test_json_round_trips():
    _, alpha = geometry.two_spread_variant()
    assert PauliAssignment.from_json(alpha.to_json()) == alpha
    assert alpha.to_json()["labels"]["1"] == "IIX"
    a = ClassicalAssignment((1, -1, 1))
    assert ClassicalAssignment.from_json(a.to_json()) == a
    with pytest.raises(ValueError):
        ClassicalAssignment.from_json({"values": {"1": 1, "3": 1}})
    with pytest.raises(ValueError):
        ClassicalAssignment((1, 0))
    with pytest.raises(pauli.QubitCountMismatch):
        PauliAssignment(2, ("XX", "X"))


def test_classical_sign_function():
    hg, _ = geometry.two_spread()
    a = ClassicalAssignment.from_bits(0b1, 15)
    signs = assign.classical_sign_function(a, hg)
    assert [k for k, s in enumerate(signs) if s == -1] == [0, 1]
    assert ClassicalAssignment.from_bits(a.to_bits(), 15) == a


def test_commutative_configuration_basics():
    a = assign.classical_assignment_commutative(["XX", "YY", "ZZ"], [[0, 1, 2]])
    assert a.values[0] * a.values[1] * a.values[2] == -1
    with pytest.raises(assign.NonCommutingInput):
        assign.classical_assignment_commutative(["XI", "ZI"])
    with pytest.raises(assign.InvalidContext):
        assign.classical_assignment_commutative(["XI", "IX", "XX"], [[0, 1]])


def test_transfer_fixture_pipeline():
    hg, _ = geometry.doily()
    fx = geometry.transfer_fixtures()
    # The printed a12 is one of several valid choices; ours may differ by a
    # sign-preserving factor but must satisfy the same contexts.
    assert fx.a12 * fx.a1 == fx.a2
    conf = assign.tensor_assignment(fx.alpha_3q, fx.alpha_4q)
    words = [o.letters for o in conf.labels]
    for h in hg.hyperedges:
        assert np.prod([fx.a12[v] for v in h]) == pauli.product_sign([words[v] for v in h])
    a2 = assign.transfer_classical(fx.alpha_3q, fx.alpha_4q, fx.a1, hg)
    assert assign.unsatisfied_set(fx.alpha_4q, fx.a2, hg) == assign.unsatisfied_set(fx.alpha_4q, a2, hg)
    before = assign.unsatisfied_set(fx.alpha_3q, fx.a1, hg)
    assert before == assign.unsatisfied_set(fx.alpha_4q, a2, hg)
    assert len(before) == 3


def test_transfer_rejects_mismatch():
    hg, alpha = geometry.doily()
    with pytest.raises(assign.VertexSetMismatch):
        assign.transfer_classical(alpha, alpha, ClassicalAssignment.constant(3), hg)


@given(st.integers(0, 2**32 - 1))
def test_algorithm_contract_random(seed):
    hg, _ = random_assignable(np.random.default_rng(seed))
    alpha, n = assign.pauli_assignment_from_anticommutations(hg, checked=True)
    assert 2 * n == gf2.rank(H.anticommutation_matrix(hg))
    assert assign.verify_assignment(alpha, hg)


@given(st.integers(0, 2**32 - 1))
def test_commutative_assignment_satisfies_every_context(seed):
    rng = np.random.default_rng(seed)
    hg, alpha = random_assignable(rng)
    beta = transvect(alpha, rng)
    conf = assign.tensor_assignment(alpha, beta)
    a = assign.classical_assignment_commutative(conf.labels, hg.hyperedges)
    words = [o.letters for o in conf.labels]
    for h in hg.hyperedges:
        assert np.prod([a[v] for v in h]) == pauli.product_sign([words[v] for v in h])


@given(st.integers(0, 2**32 - 1))
def test_transfer_preserves_unsatisfied_set(seed):
    rng = np.random.default_rng(seed)
    hg, alpha = random_assignable(rng)
    beta = transvect(alpha, rng, extra=int(rng.integers(0, 3)))
    assert assign.verify_assignment(beta, hg)
    a1 = ClassicalAssignment.from_bits(int(rng.integers(0, 1 << hg.vertex_count)), hg.vertex_count)
    a2 = assign.transfer_classical(alpha, beta, a1, hg)
    assert assign.unsatisfied_set(alpha, a1, hg) == assign.unsatisfied_set(beta, a2, hg)
