"""Benchmark harness: exhaustive vs GA vs random search per circuit."""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .circuit import Circuit, decompose_to_basic, load_circuit
from .cost import EvalOptions, TeleportProblem
from .optimizers import GAParams, exhaustive_cap, exhaustive_search, ga_optimize, random_search
from .partition import build_interaction_graph, kernighan_lin

METHODS = ("exhaustive", "ga", "random")
TIME_COLUMNS = ("time_exhaustive_s", "time_ga_s")


@dataclass
class BenchRow:
    circuit: str
    n_qubits: int
    m_g: int
    tc_exhaustive: int | None
    tc_ga: float | None
    tc_rs: float | None
    time_exhaustive_s: float | None
    time_ga_s: float | None
    tc_improvement_vs_rs_percent: float | None
    speedup_vs_exhaustive: float | None
    kl_seed: int = 0
    runs: list[dict] = field(default_factory=list)

    def csv_values(self) -> list:
        return [getattr(self, name) for name in CSV_COLUMNS]

    def to_dict(self) -> dict:
        out = {name: getattr(self, name) for name in CSV_COLUMNS}
        out["kl_seed"] = self.kl_seed
        out["runs"] = self.runs
        return out


CSV_COLUMNS = tuple(f.name for f in fields(BenchRow) if f.name not in ("kl_seed", "runs"))


@dataclass
class RunConfig:
    inputs: list = field(default_factory=list)  # paths or Circuit objects
    seeds: list[int] = field(default_factory=lambda: [0])
    methods: tuple[str, ...] = METHODS
    options: EvalOptions = EvalOptions()
    ga: GAParams = field(default_factory=GAParams)
    kl_seed: int = 0
    exhaustive_cap: int | None = None

    def __post_init__(self):
        if not self.methods:
            raise ValueError("at least one method is required")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown method(s): {', '.join(sorted(unknown))}")
        if not self.seeds:
            raise ValueError("at least one seed is required")


def improvement_percent(tc_rs, tc_ga) -> float | None:
    if tc_rs is None or tc_ga is None or tc_rs <= 0:
        return None
    return round(100.0 * (tc_rs - tc_ga) / tc_rs, 2)


def _median(values):
    return statistics.median(values) if values else None


def suite_inputs(directory) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"suite directory not found: {directory}")
    return sorted(p for p in directory.iterdir() if p.suffix in (".real", ".dqc"))


def run_circuit(circuit: Circuit, rc: RunConfig) -> BenchRow:
    basic = decompose_to_basic(circuit)
    partition = kernighan_lin(build_interaction_graph(basic), seed=rc.kl_seed) if basic.n_qubits >= 2 else None
    if partition is None:
        raise ValueError(f"{circuit.name}: at least two qubits are needed to partition")
    problem = TeleportProblem(basic, partition, rc.options)
    m_g = problem.m_g

    tc_ex = time_ex = None
    cap = exhaustive_cap() if rc.exhaustive_cap is None else rc.exhaustive_cap
    if "exhaustive" in rc.methods and m_g <= cap:
        ex = exhaustive_search(basic, problem, cap=cap)
        tc_ex, time_ex = ex.best_tc, ex.wall_time

    runs = []
    for seed in rc.seeds:
        run = {"seed": seed}
        params = replace(rc.ga, seed=seed)
        budget = params.population_size(m_g) * params.max_generations
        if "ga" in rc.methods:
            ga = ga_optimize(basic, problem, params)
            run["ga"] = ga.to_dict()
            budget = max(1, ga.pop_size * ga.generations)
        if "random" in rc.methods:
            run["random"] = random_search(basic, problem, budget, seed=seed).to_dict()
        runs.append(run)

    tc_ga = _median([r["ga"]["best_tc"] for r in runs if "ga" in r])
    time_ga = _median([r["ga"]["wall_time_s"] for r in runs if "ga" in r])
    tc_rs = _median([r["random"]["best_tc"] for r in runs if "random" in r])
    if tc_ga is not None and tc_ex is not None and tc_ga < tc_ex:
        raise AssertionError(f"{circuit.name}: GA beat exhaustive search ({tc_ga} < {tc_ex})")
    speedup = None
    if time_ex is not None and time_ga:
        speedup = round(time_ex / time_ga, 2)
    return BenchRow(circuit.name, basic.n_qubits, m_g, tc_ex, tc_ga, tc_rs, time_ex, time_ga,
                    improvement_percent(tc_rs, tc_ga), speedup, rc.kl_seed, runs)


def run_benchmark_suite(rc: RunConfig) -> list[BenchRow]:
    rows = []
    for item in rc.inputs:
        circuit = item if isinstance(item, Circuit) else load_circuit(item)
        rows.append(run_circuit(circuit, rc))
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row.csv_values()])
    return buf.getvalue()


def rows_to_json(rows: list[BenchRow]) -> str:
    return json.dumps([row.to_dict() for row in rows], indent=2) + "\n"


def plot_series(rows: list[BenchRow]) -> dict[str, list[tuple[int, float]]]:
    """(m_g, value) series for speed-up and TC improvement, sorted by m_g."""
    speedup = [(r.m_g, r.speedup_vs_exhaustive) for r in rows if r.speedup_vs_exhaustive is not None]
    improve = [(r.m_g, r.tc_improvement_vs_rs_percent) for r in rows
               if r.tc_improvement_vs_rs_percent is not None]
    return {"speedup": sorted(speedup), "tc_improvement": sorted(improve)}


def _write(path: Path, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def emit_reports(rows: list[BenchRow], fmt: str, path) -> list[Path]:
    path = Path(path)
    if fmt == "csv":
        _write(path, rows_to_csv(rows))
        return [path]
    if fmt == "json":
        _write(path, rows_to_json(rows))
        return [path]
    if fmt == "plotdata":
        path.mkdir(parents=True, exist_ok=True)
        written = []
        headers = {"speedup": "speedup_vs_exhaustive", "tc_improvement": "tc_improvement_vs_rs_percent"}
        for name, series in plot_series(rows).items():
            out = path / f"{name}.csv"
            lines = [f"m_g,{headers[name]}"] + [f"{m},{v}" for m, v in series]
            _write(out, "\n".join(lines) + "\n")
            written.append(out)
        return written
    raise ValueError(f"unknown report format {fmt!r}")
