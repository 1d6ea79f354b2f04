"""Seeded instance generators shared by the property and acceptance tests."""

import random

from teleportga.circuit import Circuit, cnot, parity_chain, random_basic_circuit, single
from teleportga.cost import TeleportProblem
from teleportga.partition import PartitionAssignment, build_interaction_graph, kernighan_lin, random_balanced_split


def fuzz_instances(count=1000, seed=12345, max_gates=10):
    """(circuit, partition, configuration) triples with m_t <= max_gates."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 5)
        c = random_basic_circuit(n, rng.randint(0, max_gates), rng, p_cnot=0.6)
        p = random_balanced_split(n, rng)
        problem = TeleportProblem(c, p)
        cfg = tuple(rng.randint(0, 1) for _ in range(problem.m_g))
        yield c, p, cfg


def curated_instances():
    """Structured circuits where the greedy schedule should be optimal."""
    out = []
    # parity chains: every CNOT targets qubit 0
    for n in (4, 6, 8):
        out.append((parity_chain(n), PartitionAssignment.contiguous(n)))
        out.append((parity_chain(n), PartitionAssignment(tuple(q % 2 for q in range(n)))))
    # shared-control fans
    for n in (4, 6, 8):
        fan = Circuit(n, tuple(cnot(0, t) for t in range(1, n)))
        out.append((fan, PartitionAssignment.contiguous(n)))
    # phase ladders: diagonal phases on the shared control between fan-out CNOTs
    ladder = []
    for t in range(1, 5):
        ladder += [single("Rk", 0, t + 1), cnot(0, t), single("T", 0)]
    out.append((Circuit(5, tuple(ladder)), PartitionAssignment((0, 0, 1, 1, 0))))
    out.append((Circuit(5, tuple(ladder)), PartitionAssignment((0, 1, 0, 1, 1))))
    return out


def random_suite(count=25, seed=2024):
    """Random basic circuits on 4-8 qubits with 1 <= m_g <= 12 under K-L."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 8)
        c = random_basic_circuit(n, rng.randint(12, 48), rng)
        p = kernighan_lin(build_interaction_graph(c), seed=rng.randrange(1 << 16))
        problem = TeleportProblem(c, p)
        if 1 <= problem.m_g <= 12:
            out.append(problem)
    return out
