"""Search over execution-side configurations: exhaustive, genetic, random."""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .circuit import Circuit
from .cost import EvalOptions, TeleportProblem
from .partition import PartitionAssignment

DEFAULT_EXHAUSTIVE_CAP = 26


def exhaustive_cap() -> int:
    return int(os.environ.get("DQC_EXHAUSTIVE_CAP", DEFAULT_EXHAUSTIVE_CAP))


@dataclass
class GAParams:
    pop_size: int | None = None  # None -> ceil(m_g / 2)
    p_m: float = 0.1
    p_c: float = 0.9
    p_r: float = 0.4
    max_generations: int = 1000
    stall_generations: int = 10
    stall_epsilon: float = 0.001
    seed: int = 0
    offspring: int | None = None  # per generation; None -> population size

    def __post_init__(self):
        for name in ("p_m", "p_c", "p_r"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.pop_size is not None and self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.max_generations < 0 or self.stall_generations < 1:
            raise ValueError("generation limits must be positive")

    def population_size(self, m_g: int) -> int:
        if self.pop_size is not None:
            return self.pop_size
        return max(2, math.ceil(m_g / 2))


@dataclass(frozen=True)
class Chromosome:
    bits: tuple[int, ...]
    tc: int

    def key(self):
        return (self.tc, self.bits)


@dataclass
class OptimizerResult:
    method: str
    best_config: tuple[int, ...]
    best_tc: int
    evaluations: int
    m_g: int
    seed: int | None = None
    generations: int | None = None
    wall_time: float = 0.0
    history: list[int] = field(default_factory=list)
    pop_size: int | None = None

    @property
    def config_string(self) -> str:
        return "".join(map(str, self.best_config))

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "seed": self.seed,
            "m_g": self.m_g,
            "best_config": self.config_string,
            "best_tc": self.best_tc,
            "evaluations": self.evaluations,
            "generations": self.generations,
            "wall_time_s": self.wall_time,
            "history": list(self.history),
        }
        if self.pop_size is not None:
            out["pop_size"] = self.pop_size
            out["replacement"] = "generational"
        return out


def _problem(c: Circuit, p: PartitionAssignment | TeleportProblem, opt: EvalOptions) -> TeleportProblem:
    if isinstance(p, TeleportProblem):
        return p
    return TeleportProblem(c, p, opt)


# ---------------------------------------------------------------------------
# exhaustive

_worker_problem: TeleportProblem | None = None


def _init_worker(problem):
    global _worker_problem
    _worker_problem = problem


def _best_in_range(args):
    start, stop, m_g = args
    best = None
    for code in range(start, stop):
        bits = tuple((code >> (m_g - 1 - b)) & 1 for b in range(m_g))
        tc = _worker_problem.cost(bits)
        if best is None or tc < best[0]:
            best = (tc, bits)
    return best


def exhaustive_search(c: Circuit, p, opt: EvalOptions = EvalOptions(), cap: int | None = None,
                      workers: int = 1) -> OptimizerResult:
    """Evaluate all 2**m_g configurations.

    Ties go to the lexicographically smallest bit string. ``workers > 1``
    splits the space into contiguous chunks evaluated in separate processes.
    """
    problem = _problem(c, p, opt)
    m_g = problem.m_g
    cap = exhaustive_cap() if cap is None else cap
    if m_g > cap:
        raise ValueError(f"exhaustive search over 2^{m_g} configurations exceeds the cap "
                         f"of m_g <= {cap}; use the genetic algorithm instead")
    t0 = time.perf_counter()
    total = 1 << m_g
    if workers <= 1 or total < 1024:
        _init_worker(problem)
        results = [_best_in_range((0, total, m_g))]
    else:
        step = -(-total // (workers * 4))
        chunks = [(s, min(s + step, total), m_g) for s in range(0, total, step)]
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(problem,)) as pool:
            results = list(pool.map(_best_in_range, chunks))
    # chunks are in lexicographic order, so the first strict minimum wins ties
    tc, bits = min(results, key=lambda r: (r[0], r[1]))
    return OptimizerResult("exhaustive", bits, tc, total, m_g,
                           wall_time=time.perf_counter() - t0, history=[tc])


# ---------------------------------------------------------------------------
# GA operators

def fitness(tc: int) -> float:
    return 1.0 / (1.0 + tc)


def roulette_select(pop: list[Chromosome], rng: random.Random) -> int:
    weights = [fitness(ch.tc) for ch in pop]
    pick = rng.random() * sum(weights)
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if pick < acc:
            return i
    return len(pop) - 1


def two_point_crossover(a, b, rng: random.Random, cuts: tuple[int, int] | None = None):
    """Swap the segment [i, j) between two parents."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError(f"parents differ in length ({len(a)} vs {len(b)})")
    if len(a) < 2:
        raise ValueError("two-point crossover needs at least two genes")
    if cuts is None:
        i, j = sorted(rng.sample(range(len(a) + 1), 2))
    else:
        i, j = cuts
        if not 0 <= i < j <= len(a):
            raise ValueError(f"invalid cut points {cuts}")
    return a[:i] + b[i:j] + a[j:], b[:i] + a[i:j] + b[j:]


def mutate(x, rng: random.Random):
    x = list(x)
    if not x:
        raise ValueError("cannot mutate an empty configuration")
    pos = rng.randrange(len(x))
    x[pos] ^= 1
    return tuple(x)


def elitist_replace(parents: list[Chromosome], offspring: list[Chromosome], p_r: float) -> list[Chromosome]:
    """Overwrite the worst offspring with the best parents.

    The number of elite slots is p_r * population size, rounded half up.
    """
    if len(parents) != len(offspring):
        raise ValueError("parents and offspring must have equal size")
    size = len(parents)
    e = min(size, int(math.floor(p_r * size + 0.5)))
    if e == 0:
        return list(offspring)
    elite = sorted(parents, key=Chromosome.key)[:e]
    # stable ranking: worst offspring are replaced, survivors keep their order
    ranked = sorted(range(size), key=lambda i: offspring[i].key())
    keep = sorted(ranked[:size - e])
    return elite + [offspring[i] for i in keep]


# ---------------------------------------------------------------------------
# GA driver

class _Evaluator:
    """Memoized fitness calls, optionally fanned out over processes."""

    def __init__(self, problem: TeleportProblem, workers: int = 1):
        self.problem = problem
        self.cache: dict[tuple[int, ...], int] = {}
        self.calls = 0
        self.pool = None
        if workers > 1:
            self.pool = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(problem,))

    def __call__(self, configs: list[tuple[int, ...]]) -> list[Chromosome]:
        self.calls += len(configs)
        missing = list(dict.fromkeys(b for b in configs if b not in self.cache))
        if missing:
            if self.pool is not None:
                values = self.pool.map(_cost_of, missing, chunksize=max(1, len(missing) // 8))
            else:
                values = map(self.problem.cost, missing)
            self.cache.update(zip(missing, values))
        return [Chromosome(b, self.cache[b]) for b in configs]

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


def _cost_of(bits):
    return _worker_problem.cost(bits)


def ga_optimize(c: Circuit, p, params: GAParams = GAParams(), opt: EvalOptions = EvalOptions(),
                workers: int = 1) -> OptimizerResult:
    problem = _problem(c, p, opt)
    m_g = problem.m_g
    t0 = time.perf_counter()
    if m_g == 0:
        tc = problem.cost(())
        return OptimizerResult("ga", (), tc, 1, 0, params.seed, 0, time.perf_counter() - t0, [tc], 0)

    rng = random.Random(params.seed)
    size = params.population_size(m_g)
    evaluate = _Evaluator(problem, workers)
    try:
        pop = evaluate([tuple(rng.randint(0, 1) for _ in range(m_g)) for _ in range(size)])
        best = min(pop, key=Chromosome.key)
        history = [best.tc]
        generations = 0
        while generations < params.max_generations:
            children = []
            brood = params.offspring or size
            while len(children) < brood:
                a = pop[roulette_select(pop, rng)].bits
                b = pop[roulette_select(pop, rng)].bits
                if m_g >= 2 and rng.random() < params.p_c:
                    a, b = two_point_crossover(a, b, rng)
                for child in (a, b):
                    if rng.random() < params.p_m:
                        child = mutate(child, rng)
                    children.append(child)
            offspring = evaluate(children[:brood])
            if brood > size:
                offspring = sorted(offspring, key=Chromosome.key)[:size]
            pop = elitist_replace(pop, offspring, params.p_r)
            generations += 1
            gen_best = min(pop, key=Chromosome.key)
            if gen_best.key() < best.key():
                best = gen_best
            history.append(best.tc)
            window = params.stall_generations
            if generations >= window and history[-window - 1] - history[-1] < params.stall_epsilon:
                break
    finally:
        evaluate.close()
    return OptimizerResult("ga", best.bits, best.tc, evaluate.calls, m_g, params.seed, generations,
                           time.perf_counter() - t0, history, size)


def random_search(c: Circuit, p, budget: int, seed: int = 0, opt: EvalOptions = EvalOptions()) -> OptimizerResult:
    """Best of ``budget`` uniformly random configurations."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    problem = _problem(c, p, opt)
    m_g = problem.m_g
    rng = random.Random(seed)
    t0 = time.perf_counter()
    cache: dict[tuple[int, ...], int] = {}
    best = None
    history = []
    for _ in range(budget):
        bits = tuple(rng.randint(0, 1) for _ in range(m_g))
        if bits not in cache:
            cache[bits] = problem.cost(bits)
        cand = (cache[bits], bits)
        if best is None or cand < best:
            best = cand
        history.append(best[0])
    return OptimizerResult("random", best[1], best[0], budget, m_g, seed,
                           wall_time=time.perf_counter() - t0, history=history)

