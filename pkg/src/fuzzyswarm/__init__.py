"""Seedable PSO/GSA hybrid optimizers with centroid-based fuzzy mutation."""

from .algorithms import (Algorithm, GpsParams, GsaKinematics, GsaParams,
                         PsoParams, PsogsaParams, compute_gsa_kinematics,
                         compute_masses, gravitational_constant, step)
from .core import (Agent, FitnessExtremes, SearchSpace, SwarmState, centroid,
                   clamp_to_bounds, evaluate_swarm, find_extremes,
                   initialize_population, make_rng)
from .engineering import DesignProblem, design
from .functions import BenchmarkProblem, benchmark, registry
from .harness import (ExperimentResult, ExperimentSpec, RunConfig, RunTrace,
                      SummaryStats, WinTally, compare_rows, param_sweep,
                      resolve_problem, run_experiment, run_single,
                      trimmed_stats, write_summary_json, write_trace_csv)
from .mutation import (MutationParams, MutationState, MutationStep,
                       apply_mutation, distance_contribution,
                       history_contribution, mutation_magnitude,
                       mutation_probability, update_unchanged)

__version__ = "0.1.0"

__all__ = [
    "Agent", "Algorithm", "BenchmarkProblem", "DesignProblem",
    "ExperimentResult", "ExperimentSpec", "FitnessExtremes", "GpsParams",
    "GsaKinematics", "GsaParams", "MutationParams", "MutationState",
    "MutationStep", "PsoParams", "PsogsaParams", "RunConfig", "RunTrace",
    "SearchSpace", "SummaryStats", "SwarmState", "WinTally",
    "apply_mutation", "benchmark", "centroid", "clamp_to_bounds",
    "compare_rows", "compute_gsa_kinematics", "compute_masses", "design",
    "distance_contribution", "evaluate_swarm", "find_extremes",
    "gravitational_constant", "history_contribution", "initialize_population",
    "make_rng", "mutation_magnitude", "mutation_probability", "param_sweep",
    "registry", "resolve_problem", "run_experiment", "run_single", "step",
    "trimmed_stats", "update_unchanged", "write_summary_json",
    "write_trace_csv",
]
