"""Command-line front end (``teleportga``)."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import bench
from .circuit import CircuitError, decompose_to_basic, generate_qft, load_circuit, save_circuit
from .cost import EvalOptions, TeleportProblem
from .optimizers import GAParams, exhaustive_search, ga_optimize, random_search
from .partition import PartitionAssignment, build_interaction_graph, kernighan_lin


class DomainError(Exception):
    pass


def _load_basic(path):
    path = Path(path)
    if not path.exists():
        raise DomainError(f"no such file: {path}")
    return decompose_to_basic(load_circuit(path))


def _load_partition(path, n):
    path = Path(path)
    if not path.exists():
        raise DomainError(f"no such file: {path}")
    p = PartitionAssignment.from_json(path.read_text(encoding="utf-8"))
    if p.n != n:
        raise DomainError(f"{path}: partition covers {p.n} qubits, circuit has {n}")
    return p


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _options(args) -> EvalOptions:
    return EvalOptions(return_home_at_end=not args.no_return_home, lookahead=not args.linear)


def cmd_qft(args):
    save_circuit(generate_qft(args.qubits), args.out)


def cmd_decompose(args):
    c = _load_basic(args.input)
    save_circuit(c, args.out)


def cmd_partition(args):
    c = _load_basic(args.input)
    p = kernighan_lin(build_interaction_graph(c), seed=args.seed)
    _write_text(args.out, p.to_json() + "\n")


def cmd_cost(args):
    c = _load_basic(args.input)
    p = _load_partition(args.partition, c.n_qubits)
    problem = TeleportProblem(c, p, _options(args))
    report = problem.report(args.config)
    print(json.dumps(report.to_dict()))


def cmd_optimize(args):
    c = _load_basic(args.input)
    opt = _options(args)
    if args.partition:
        p = _load_partition(args.partition, c.n_qubits)
    else:
        p = kernighan_lin(build_interaction_graph(c), seed=args.kl_seed)
    problem = TeleportProblem(c, p, opt)
    params = GAParams(seed=args.seed)
    overrides = {"pop_size": args.ga_pop, "p_m": args.ga_pm, "p_c": args.ga_pc, "p_r": args.ga_pr,
                 "max_generations": args.ga_maxgen}
    params = replace(params, **{k: v for k, v in overrides.items() if v is not None})
    if args.method == "exhaustive":
        result = exhaustive_search(c, problem, workers=args.workers)
    elif args.method == "ga":
        result = ga_optimize(c, problem, params, workers=args.workers)
    else:
        budget = args.budget or params.population_size(problem.m_g) * params.max_generations
        result = random_search(c, problem, budget, seed=args.seed)
    report = result.to_dict()
    report["kl_seed"] = None if args.partition else args.kl_seed
    report["partition"] = json.loads(p.to_json())
    text = json.dumps(report, indent=2) + "\n"
    if args.report:
        _write_text(args.report, text)
    else:
        sys.stdout.write(text)


def cmd_bench(args):
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    rc = bench.RunConfig(
        inputs=bench.suite_inputs(args.suite),
        seeds=list(range(args.seeds)),
        methods=methods,
        options=_options(args),
        kl_seed=args.kl_seed,
    )
    rows = bench.run_benchmark_suite(rc)
    bench.emit_reports(rows, "csv", args.csv)
    if args.json:
        bench.emit_reports(rows, "json", args.json)
    if args.plotdata:
        bench.emit_reports(rows, "plotdata", args.plotdata)


def _eval_flags(p):
    p.add_argument("--no-return-home", action="store_true",
                   help="do not charge the final return of migrated qubits")
    p.add_argument("--linear", action="store_true", help="execute gates strictly in circuit order")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="teleportga",
                                     description="Teleportation-cost optimization for two-node quantum circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qft", help="generate a decomposed QFT circuit")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_qft)

    p = sub.add_parser("decompose", help="rewrite into CNOT + single-qubit gates")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("partition", help="Kernighan-Lin bisection of the qubits")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("cost", help="teleportation cost of one configuration")
    p.add_argument("input")
    p.add_argument("--partition", required=True)
    p.add_argument("--config", required=True, help="0/1 string, one bit per global gate")
    _eval_flags(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("optimize", help="search for the cheapest configuration")
    p.add_argument("input")
    p.add_argument("--partition")
    p.add_argument("--kl-seed", type=int, default=0)
    p.add_argument("--method", choices=("exhaustive", "ga", "random"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ga-pop", type=int)
    p.add_argument("--ga-pm", type=float)
    p.add_argument("--ga-pc", type=float)
    p.add_argument("--ga-pr", type=float)
    p.add_argument("--ga-maxgen", type=int)
    p.add_argument("--budget", type=int, help="random-search evaluations")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report")
    _eval_flags(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("bench", help="run the comparison over a directory of circuits")
    p.add_argument("--suite", required=True)
    p.add_argument("--methods", default="exhaustive,ga,random")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--kl-seed", type=int, default=0)
    p.add_argument("--csv", required=True)
    p.add_argument("--json")
    p.add_argument("--plotdata")
    _eval_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (DomainError, CircuitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
