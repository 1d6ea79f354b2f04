"""Teleportation cost of a circuit for one execution-side configuration.

A configuration is a 0/1 string with one bit per global CNOT in circuit
order: 0 runs the gate in partition A, 1 in partition B. The operand whose
home is the other partition must be teleported over first. Single-qubit and
local gates always run with their operands at home.
"""

from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .circuit import DIAGONAL, Circuit, CircuitError, Gate
from .partition import PartitionAssignment, classify_gates

END = "END"
OUT, BACK = "out", "back"


@dataclass(frozen=True)
class EvalOptions:
    return_home_at_end: bool = True
    lookahead: bool = True


@dataclass(frozen=True)
class TeleportEvent:
    gate: int | str  # gate index, or END for the final return trip
    qubit: int
    direction: str  # OUT (home -> away) or BACK (away -> home)


@dataclass
class CostReport:
    teleportations: int
    schedule: list[int] = field(default_factory=list)
    events: list[TeleportEvent] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "teleportations": self.teleportations,
            "schedule": list(self.schedule),
            "events": [{"gate": e.gate, "qubit": e.qubit, "direction": e.direction} for e in self.events],
        }


def _require_basic(g: Gate):
    if not (g.is_single or g.is_cnot):
        raise CircuitError(f"{g} is not a basic gate")


def commutes(g: Gate, h: Gate) -> bool:
    """Conservative symbolic commutation test for basic gates.

    False means "not known to commute", not "proven to anticommute".
    """
    _require_basic(g)
    _require_basic(h)
    if not set(g.qubits) & set(h.qubits):
        return True
    if g.is_cnot and h.is_cnot:
        return g.target != h.control and h.target != g.control
    if g.is_single and h.is_single:
        return (g.kind in DIAGONAL and h.kind in DIAGONAL) or g.label == h.label
    u, cx = (g, h) if g.is_single else (h, g)
    q = u.target
    if q == cx.control:
        return u.kind in DIAGONAL
    return u.kind == "X"  # q is the CNOT target


def _check_config(cfg: Sequence[int], m_g: int) -> tuple[int, ...]:
    if isinstance(cfg, str):
        if set(cfg) - {"0", "1"}:
            raise ValueError(f"configuration must be a 0/1 string, got {cfg!r}")
        cfg = [int(ch) for ch in cfg]
    cfg = tuple(int(b) for b in cfg)
    if len(cfg) != m_g:
        raise ValueError(f"configuration has {len(cfg)} bits but the circuit has {m_g} global gates")
    if any(b not in (0, 1) for b in cfg):
        raise ValueError("configuration bits must be 0 or 1")
    return cfg


def required_sites(g: Gate, p: PartitionAssignment, exec_side: int | None = None) -> dict[int, bool]:
    """Map each operand to whether it must be away from home to run ``g``.

    ``exec_side`` is the configuration bit of a global CNOT and is ignored for
    local gates.
    """
    _require_basic(g)
    if g.is_cnot and p.side(g.control) != p.side(g.target):
        if exec_side not in (0, 1):
            raise ValueError(f"global gate {g} needs an execution side")
        return {q: p.side(q) != exec_side for q in g.qubits}
    return {q: False for q in g.qubits}


class TeleportProblem:
    """Precomputed circuit/partition data shared by every configuration.

    Building one of these is the expensive part; ``cost`` and ``report`` are
    then cheap and side-effect free, so one instance may serve concurrent
    fitness calls.
    """

    def __init__(self, circuit: Circuit, partition: PartitionAssignment,
                 options: EvalOptions = EvalOptions()):
        if not circuit.is_basic:
            raise CircuitError("circuit must be decomposed to the basic library first")
        self.circuit = circuit
        self.partition = partition
        self.options = options
        self.classification = classify_gates(circuit, partition)
        self.global_indices = self.classification.global_indices
        self.m_g = self.classification.m_g
        m = len(circuit)
        gates = circuit.gates
        self.operands = [g.qubits for g in gates]
        # gene index per gate, -1 for local gates
        self.gene = [-1] * m
        for bit, i in enumerate(self.global_indices):
            self.gene[i] = bit
        # predecessors that the gate does not commute with
        self.blockers: list[list[int]] = [[] for _ in range(m)]
        self.dependents: list[list[int]] = [[] for _ in range(m)]
        last_on: dict[int, list[int]] = {}
        for j, g in enumerate(gates):
            seen = set()
            for q in g.qubits:
                for i in last_on.get(q, ()):
                    if i not in seen:
                        seen.add(i)
                        if not commutes(gates[i], g):
                            self.blockers[j].append(i)
                            self.dependents[i].append(j)
                last_on.setdefault(q, []).append(j)
        for lst in self.blockers:
            lst.sort()

    def requirements(self, cfg: tuple[int, ...]) -> list[tuple[tuple[int, bool], ...]]:
        sides = self.partition.sides
        out = []
        for i, ops in enumerate(self.operands):
            bit = self.gene[i]
            if bit < 0:
                out.append(tuple((q, False) for q in ops))
            else:
                e = cfg[bit]
                out.append(tuple((q, sides[q] != e) for q in ops))
        return out

    def cost(self, cfg) -> int:
        return self.report(cfg).teleportations

    def report(self, cfg, lookahead: bool | None = None) -> CostReport:
        cfg = _check_config(cfg, self.m_g)
        if lookahead is None:
            lookahead = self.options.lookahead
        req = self.requirements(cfg)
        if lookahead:
            return self._greedy(req)
        return self._linear(req)

    def _finish(self, away: list[bool], schedule, events, tc) -> CostReport:
        if self.options.return_home_at_end:
            for q, is_away in enumerate(away):
                if is_away:
                    events.append(TeleportEvent(END, q, BACK))
                    tc += 1
        return CostReport(tc, schedule, events)

    def _linear(self, req) -> CostReport:
        away = [False] * self.circuit.n_qubits
        schedule, events, tc = [], [], 0
        for i, need in enumerate(req):
            for q, want in need:
                if away[q] != want:
                    away[q] = want
                    events.append(TeleportEvent(i, q, OUT if want else BACK))
                    tc += 1
            schedule.append(i)
        return self._finish(away, schedule, events, tc)

    def _greedy(self, req) -> CostReport:
        m = len(req)
        away = [False] * self.circuit.n_qubits
        pending = [len(b) for b in self.blockers]
        ready: list[int] = []  # available and satisfied, min-heap
        waiting: list[int] = []  # available, needs a teleport; lazy min-heap
        in_waiting = [False] * m
        waiting_on: dict[int, set[int]] = {}

        def satisfied(i):
            return all(away[q] == want for q, want in req[i])

        def admit(i):
            if satisfied(i):
                heapq.heappush(ready, i)
            else:
                in_waiting[i] = True
                heapq.heappush(waiting, i)
                for q, _ in req[i]:
                    waiting_on.setdefault(q, set()).add(i)

        for i in range(m):
            if pending[i] == 0:
                admit(i)

        schedule, events, tc = [], [], 0
        while len(schedule) < m:
            if not ready:
                while not in_waiting[waiting[0]]:
                    heapq.heappop(waiting)
                i = heapq.heappop(waiting)
                in_waiting[i] = False
                moved = []
                for q, want in req[i]:
                    if away[q] != want:
                        away[q] = want
                        events.append(TeleportEvent(i, q, OUT if want else BACK))
                        tc += 1
                        moved.append(q)
                heapq.heappush(ready, i)
                for q in moved:
                    for j in list(waiting_on.get(q, ())):
                        if not in_waiting[j]:
                            waiting_on[q].discard(j)
                        elif satisfied(j):
                            in_waiting[j] = False
                            heapq.heappush(ready, j)
            i = heapq.heappop(ready)
            schedule.append(i)
            for j in self.dependents[i]:
                pending[j] -= 1
                if pending[j] == 0:
                    admit(j)
        return self._finish(away, schedule, events, tc)

    def brute_force(self, cfg, cap: int = 14) -> CostReport:
        """Exact minimum over every schedule the availability rule allows.

        Exponential; refuses circuits with more than ``cap`` gates.
        """
        m = len(self.circuit)
        if m > cap:
            raise ValueError(f"brute-force oracle refuses {m} gates (cap {cap})")
        cfg = _check_config(cfg, self.m_g)
        req = self.requirements(cfg)
        blocker_mask = [sum(1 << b for b in bl) for bl in self.blockers]
        full = (1 << m) - 1
        home_end = self.options.return_home_at_end

        @lru_cache(maxsize=None)
        def best(done: int, away: int) -> tuple[int, int]:
            if done == full:
                return (bin(away).count("1") if home_end else 0), -1
            result = None
            for i in range(m):
                if done >> i & 1 or blocker_mask[i] & ~done:
                    continue
                moves, nxt = 0, away
                for q, want in req[i]:
                    if bool(nxt >> q & 1) != want:
                        nxt ^= 1 << q
                        moves += 1
                total = moves + best(done | 1 << i, nxt)[0]
                if result is None or total < result[0]:
                    result = (total, i)
            return result

        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 10 * m + 100))
        try:
            total, _ = best(0, 0)
            # replay the optimal choices to recover a schedule
            done = away = 0
            away_list = [False] * self.circuit.n_qubits
            schedule, events = [], []
            while done != full:
                _, i = best(done, away)
                for q, want in req[i]:
                    if away_list[q] != want:
                        away_list[q] = want
                        away ^= 1 << q
                        events.append(TeleportEvent(i, q, OUT if want else BACK))
                schedule.append(i)
                done |= 1 << i
        finally:
            sys.setrecursionlimit(limit)
        report = self._finish(away_list, schedule, events, len(events))
        assert report.teleportations == total
        return report


def evaluate_cost(c: Circuit, p: PartitionAssignment, cfg, opt: EvalOptions = EvalOptions()) -> CostReport:
    """Commutation-aware greedy schedule.

    Zero-cost available gates run first (lowest index wins); when none is
    left, the lowest-index available gate pulls its operands over.
    """
    return TeleportProblem(c, p, opt).report(cfg, lookahead=True)


def evaluate_cost_linear(c: Circuit, p: PartitionAssignment, cfg, opt: EvalOptions = EvalOptions()) -> CostReport:
    """Gates run strictly in circuit order."""
    return TeleportProblem(c, p, opt).report(cfg, lookahead=False)


def brute_force_min_cost(c: Circuit, p: PartitionAssignment, cfg, opt: EvalOptions = EvalOptions(),
                         cap: int = 14) -> CostReport:
    return TeleportProblem(c, p, opt).brute_force(cfg, cap)


def validate_schedule(c: Circuit, schedule: Sequence[int]) -> None:
    """Raise if ``schedule`` runs a gate past an earlier one it may not commute with."""
    if sorted(schedule) != list(range(len(c))):
        raise ValueError("schedule is not a permutation of the gate indices")
    done = set()
    for i in schedule:
        for j in range(i):
            if j not in done and not commutes(c[j], c[i]):
                raise ValueError(f"gate {i} overtakes non-commuting gate {j}")
        done.add(i)
