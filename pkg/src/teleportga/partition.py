"""Qubit interaction graph, Kernighan-Lin bisection and gate classification."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, CircuitError

A, B = 0, 1
SIDE_NAMES = "AB"


@dataclass(frozen=True, eq=False)
class InteractionGraph:
    """Symmetric CNOT-count matrix between qubits."""

    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def w(self, u: int, v: int) -> int:
        return int(self.weights[u, v])

    @property
    def total_weight(self) -> int:
        return int(np.triu(self.weights, 1).sum())

    @classmethod
    def from_edges(cls, n: int, edges) -> InteractionGraph:
        """Build from ``(u, v, weight)`` triples; repeated pairs accumulate."""
        w = np.zeros((n, n), dtype=np.int64)
        for u, v, weight in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            w[u, v] += weight
            w[v, u] += weight
        return cls(w)


@dataclass(frozen=True)
class PartitionAssignment:
    """Home side (0 = A, 1 = B) for every qubit."""

    sides: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sides", tuple(int(s) for s in self.sides))
        if any(s not in (A, B) for s in self.sides):
            raise ValueError("sides must be 0 (A) or 1 (B)")
        n_b = sum(self.sides)
        if abs(len(self.sides) - 2 * n_b) > 1:
            raise ValueError(f"unbalanced partition: {len(self.sides) - n_b} vs {n_b}")

    @property
    def n(self) -> int:
        return len(self.sides)

    def side(self, q: int) -> int:
        return self.sides[q]

    def members(self, side: int) -> list[int]:
        return [q for q, s in enumerate(self.sides) if s == side]

    def swapped(self) -> PartitionAssignment:
        """Same cut with A and B exchanged."""
        return PartitionAssignment(tuple(1 - s for s in self.sides))

    def canonical(self) -> PartitionAssignment:
        return self if not self.sides or self.sides[0] == A else self.swapped()

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "side": [SIDE_NAMES[s] for s in self.sides]})

    @classmethod
    def from_json(cls, text: str) -> PartitionAssignment:
        data = json.loads(text)
        sides = [SIDE_NAMES.index(s) for s in data["side"]]
        if data.get("n", len(sides)) != len(sides):
            raise ValueError("partition 'n' does not match the length of 'side'")
        return cls(tuple(sides))

    @classmethod
    def contiguous(cls, n: int) -> PartitionAssignment:
        """First ceil(n/2) qubits on A, the rest on B."""
        half = (n + 1) // 2
        return cls(tuple(A if q < half else B for q in range(n)))


@dataclass(frozen=True)
class GateClassification:
    global_indices: tuple[int, ...]
    local_indices: tuple[int, ...]

    @property
    def m_g(self) -> int:
        return len(self.global_indices)


def build_interaction_graph(c: Circuit) -> InteractionGraph:
    w = np.zeros((c.n_qubits, c.n_qubits), dtype=np.int64)
    for i, g in enumerate(c.gates):
        if g.is_cnot:
            w[g.control, g.target] += 1
            w[g.target, g.control] += 1
        elif not g.is_single:
            raise CircuitError(f"gate {i} ({g}) is not in the basic library; decompose first")
    return InteractionGraph(w)


def cut_weight(g: InteractionGraph, p: PartitionAssignment) -> int:
    if p.n != g.n:
        raise ValueError(f"partition covers {p.n} qubits, graph has {g.n}")
    s = np.asarray(p.sides, dtype=bool)
    return int(g.weights[np.ix_(s, ~s)].sum())


def random_balanced_split(n: int, rng: random.Random) -> PartitionAssignment:
    order = list(range(n))
    rng.shuffle(order)
    half = (n + 1) // 2
    sides = [B] * n
    for q in order[:half]:
        sides[q] = A
    return PartitionAssignment(tuple(sides))


def kl_pass(w: np.ndarray, sides: list[int]) -> tuple[list[int], int]:
    """One Kernighan-Lin pass. Returns the improved sides and the gain applied."""
    n = len(sides)
    s = np.asarray(sides)
    same = s[:, None] == s[None, :]
    # D[v] = external - internal cost
    d = np.where(same, -w, w).sum(axis=1)
    a_free = [v for v in range(n) if sides[v] == A]
    b_free = [v for v in range(n) if sides[v] == B]
    swaps, gains = [], []
    for _ in range(min(len(a_free), len(b_free))):
        best = None
        for a in a_free:
            for b in b_free:
                gain = d[a] + d[b] - 2 * w[a, b]
                key = (-gain, min(a, b), max(a, b))
                if best is None or key < best[0]:
                    best = (key, a, b, gain)
        _, a, b, gain = best
        swaps.append((a, b))
        gains.append(int(gain))
        a_free.remove(a)
        b_free.remove(b)
        for x in a_free:
            d[x] += 2 * w[x, a] - 2 * w[x, b]
        for y in b_free:
            d[y] += 2 * w[y, b] - 2 * w[y, a]

    best_k, best_total, total = 0, 0, 0
    for k, gain in enumerate(gains, start=1):
        total += gain
        if total > best_total:
            best_k, best_total = k, total
    out = list(sides)
    for a, b in swaps[:best_k]:
        out[a], out[b] = B, A
    return out, best_total


def kernighan_lin(g: InteractionGraph, seed=0, initial: PartitionAssignment | None = None,
                  max_passes: int = 100) -> PartitionAssignment:
    """Balanced bisection minimizing cut weight.

    Starts from ``initial`` or a seeded random balanced split and repeats
    passes until none has positive gain. The result is relabelled so that
    qubit 0 is on side A.
    """
    n = g.n
    if n < 2:
        raise ValueError("Kernighan-Lin needs at least two nodes")
    if initial is None:
        initial = random_balanced_split(n, random.Random(seed))
    sides = list(initial.sides)
    for _ in range(max_passes):
        sides, gain = kl_pass(g.weights, sides)
        if gain <= 0:
            break
    return PartitionAssignment(tuple(sides)).canonical()


def classify_gates(c: Circuit, p: PartitionAssignment) -> GateClassification:
    if p.n != c.n_qubits:
        raise ValueError(f"partition covers {p.n} qubits, circuit has {c.n_qubits}")
    glob, loc = [], []
    for i, g in enumerate(c.gates):
        if g.is_cnot and p.side(g.control) != p.side(g.target):
            glob.append(i)
        elif g.is_cnot or g.is_single:
            loc.append(i)
        else:
            raise CircuitError(f"gate {i} ({g}) is not in the basic library; decompose first")
    return GateClassification(tuple(glob), tuple(loc))
