import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from teleportga.circuit import Circuit, cnot, generate_qft, parity_chain, random_basic_circuit, single, toffoli
from teleportga.partition import (InteractionGraph, PartitionAssignment, build_interaction_graph,
                                  classify_gates, cut_weight, kernighan_lin, random_balanced_split)

from .oracles import balanced_splits


def two_cliques():
    return InteractionGraph.from_edges(4, [(0, 1, 5), (2, 3, 5), (1, 2, 1)])


def brute_min_cut(g):
    return min(cut_weight(g, PartitionAssignment(s)) for s in balanced_splits(g.n))


def test_graph_single_cnot():
    g = build_interaction_graph(Circuit(3, (cnot(0, 1),)))
    expected = np.zeros((3, 3))
    expected[0, 1] = expected[1, 0] = 1
    assert np.array_equal(g.weights, expected)


def test_graph_qft4_complete():
    g = build_interaction_graph(generate_qft(4))
    assert np.array_equal(g.weights, 2 * (np.ones((4, 4)) - np.eye(4)))


def test_graph_only_hadamards():
    g = build_interaction_graph(Circuit(3, tuple(single("H", q) for q in range(3))))
    assert not g.weights.any()


def test_graph_rejects_non_basic():
    with pytest.raises(ValueError):
        build_interaction_graph(Circuit(3, (toffoli(0, 1, 2),)))


@given(st.randoms(use_true_random=False))
def test_graph_invariants(rng):
    c = random_basic_circuit(rng.randint(2, 8), rng.randint(0, 40), rng)
    g = build_interaction_graph(c)
    assert np.array_equal(g.weights, g.weights.T)
    assert not np.diag(g.weights).any()
    assert g.total_weight == sum(x.is_cnot for x in c.gates)


def test_partition_balance_enforced():
    with pytest.raises(ValueError):
        PartitionAssignment((0, 0, 0, 1))
    PartitionAssignment((0, 0, 1))
    PartitionAssignment((1, 0, 1))


def test_partition_json_round_trip():
    p = PartitionAssignment((0, 1, 1, 0, 0))
    assert p.to_json() == '{"n": 5, "side": ["A", "B", "B", "A", "A"]}'
    assert PartitionAssignment.from_json(p.to_json()) == p


def test_kl_two_qubits():
    g = InteractionGraph.from_edges(2, [(0, 1, 1)])
    p = kernighan_lin(g, seed=3)
    assert p.sides == (0, 1)
    assert cut_weight(g, p) == 1


def test_kl_two_cliques():
    g = two_cliques()
    # enumerated: {01|23} cuts 1, {03|12} cuts 10, {02|13} cuts 11
    assert sorted(cut_weight(g, PartitionAssignment(s)) for s in [(0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 0)]) == [1, 10, 11]
    for seed in range(20):
        p = kernighan_lin(g, seed=seed)
        assert cut_weight(g, p) == 1
        assert p.sides == (0, 0, 1, 1)


def test_kl_qft4_uniform():
    g = build_interaction_graph(generate_qft(4))
    assert {cut_weight(g, PartitionAssignment(s)) for s in balanced_splits(4)} == {8}
    assert cut_weight(g, kernighan_lin(g, seed=0)) == 8


def test_cut_weight_edgeless_and_contiguous():
    g = InteractionGraph.from_edges(4, [])
    assert cut_weight(g, PartitionAssignment.contiguous(4)) == 0
    q = build_interaction_graph(generate_qft(4))
    assert cut_weight(q, PartitionAssignment.contiguous(4)) == 8


def test_kl_rejects_single_node():
    with pytest.raises(ValueError):
        kernighan_lin(InteractionGraph.from_edges(1, []))


def test_kl_deterministic_and_canonical():
    rng = random.Random(1)
    g = InteractionGraph.from_edges(9, [(u, v, rng.randint(1, 4)) for u in range(9) for v in range(u + 1, 9)
                                        if rng.random() < 0.4])
    runs = {kernighan_lin(g, seed=11) for _ in range(3)}
    assert len(runs) == 1
    assert next(iter(runs)).side(0) == 0


def random_graph(rng):
    n = rng.randint(2, 12)
    edges = [(u, v, rng.randint(1, 5)) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35]
    return InteractionGraph.from_edges(n, edges)


@given(st.randoms(use_true_random=False), st.integers(0, 2**16))
def test_kl_never_worse_than_start(rng, seed):
    g = random_graph(rng)
    start = random_balanced_split(g.n, random.Random(seed))
    p = kernighan_lin(g, seed=seed)
    assert abs(g.n - 2 * sum(p.sides)) <= 1
    assert cut_weight(g, p) <= cut_weight(g, start)


def test_kl_finds_optimum_on_small_graphs_mostly():
    rng = random.Random(7)
    hits = 0
    for _ in range(50):
        g = random_graph(rng)
        hits += cut_weight(g, kernighan_lin(g, seed=0)) == brute_min_cut(g)
    assert hits >= 40


def test_classify_qft4():
    cls = classify_gates(generate_qft(4), PartitionAssignment.contiguous(4))
    assert cls.m_g == 8
    assert list(cls.global_indices) == sorted(cls.global_indices)


def test_classify_all_local():
    c = Circuit(4, (cnot(0, 1), single("H", 2), cnot(1, 0)))
    assert classify_gates(c, PartitionAssignment((0, 0, 1, 1))).m_g == 0


def test_classify_parity_chain_q0_on_small_side():
    c = parity_chain(17)
    sides = [1] * 17
    for q in range(1, 10):
        sides[q] = 0  # nine on A, q0 on B together with seven others
    p = PartitionAssignment(tuple(sides))
    assert p.members(1).count(0) == 1 and len(p.members(1)) == 8
    expected = sum(1 for q in range(1, 17) if p.side(q) != p.side(0))
    assert expected == 9
    assert classify_gates(c, p).m_g == 9


@given(st.randoms(use_true_random=False))
def test_global_count_equals_cut(rng):
    c = random_basic_circuit(rng.randint(2, 8), rng.randint(0, 30), rng)
    p = random_balanced_split(c.n_qubits, rng)
    assert classify_gates(c, p).m_g == cut_weight(build_interaction_graph(c), p)
