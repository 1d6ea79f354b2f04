"""Minimize qubit teleportations for circuits split across two quantum nodes."""

from .circuit import (Circuit, CircuitError, Gate, ParseError, decompose_to_basic, gate_counts,
                      generate_qft, load_circuit, parse_native, parse_real, save_circuit,
                      serialize_native, serialize_real)
from .cost import (CostReport, EvalOptions, TeleportProblem, brute_force_min_cost, commutes,
                   evaluate_cost, evaluate_cost_linear, required_sites)
from .optimizers import GAParams, OptimizerResult, exhaustive_search, ga_optimize, random_search
from .partition import (InteractionGraph, PartitionAssignment, build_interaction_graph,
                        classify_gates, cut_weight, kernighan_lin)

__version__ = "0.1.0"
