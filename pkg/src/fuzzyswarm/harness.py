"""Experiment orchestration: seeded runs, trimmed statistics, head-to-head
comparisons, parameter sweeps and trace/summary export.

Reproducibility contract: a run is fully determined by (algorithm, problem,
config, seed). Experiments derive run seeds as base_seed + run_index, so any
single run can be re-executed in isolation. Wall-clock timing is always
measured but kept out of trace CSVs unless explicitly requested, because the
exported traces are meant to be byte-identical across repeats.
"""
from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import engineering, functions
from .algorithms import (Algorithm, GpsParams, GsaParams, PsoParams,
                         PsogsaParams, step)
from .core import (Problem, Sense, initialize_population, evaluate_swarm,
                   is_better, make_rng)
from .mutation import MutationParams, MutationState, mutate_swarm, update_unchanged

TRACE_COLUMNS = ("iteration", "gbest", "pop_best", "pop_mean", "mutations", "elapsed_ms")


@dataclass(frozen=True)
class RunConfig:
    """Everything a single run needs besides the problem and the seed."""

    pop_size: int = 50
    max_iter: int = 500
    sense: Sense = "minimize"
    pso: PsoParams = field(default_factory=PsoParams)
    gsa: GsaParams = field(default_factory=GsaParams)
    psogsa: PsogsaParams = field(default_factory=PsogsaParams)
    gps: GpsParams = field(default_factory=GpsParams)
    mutation: MutationParams = field(default_factory=MutationParams)

    def params_for(self, algorithm: Algorithm):
        return {
            Algorithm.PSO: self.pso,
            Algorithm.GSA: self.gsa,
            Algorithm.GPS: self.gps,
            Algorithm.PSOGSA: self.psogsa,
        }[Algorithm(algorithm).base]


@dataclass
class RunTrace:
    """Per-iteration record of one run plus its final answer."""

    algorithm: str
    problem_id: str
    seed: int
    iteration: np.ndarray
    gbest: np.ndarray
    pop_best: np.ndarray
    pop_mean: np.ndarray
    mutations: np.ndarray
    elapsed_ms: np.ndarray
    final_fitness: float
    final_position: np.ndarray
    mutation_stats: list | None = None

    @property
    def total_elapsed_ms(self) -> float:
        return float(self.elapsed_ms[-1]) if self.elapsed_ms.size else 0.0


@dataclass(frozen=True)
class SummaryStats:
    best: float
    avg: float
    worst: float
    sd: float
    n_used: int


def resolve_problem(pid: str, constrained: bool = False,
                    integer_gears: bool = False) -> Problem:
    """Look up a benchmark (F1..F23) or design problem (EF1..EF5) by id."""
    if pid.startswith("EF"):
        return engineering.design(pid, constrained=constrained, integer_gears=integer_gears)
    return functions.benchmark(pid)


def default_max_iter(pid: str) -> int:
    """The reference run lengths: 500 for F1-F7, 1000 for everything else."""
    return 500 if pid in {f"F{i}" for i in range(1, 8)} else 1000


def run_single(algorithm: Algorithm | str, problem: Problem, config: RunConfig,
               seed: int) -> RunTrace:
    """One seeded optimization run.

    Iteration layout: velocity and position updates (clamped), then for the
    mutation variants the fuzzy mutation pass, then re-evaluation, best-memory
    refresh and the staleness-counter update. Schedules (gravitational
    constant, inertia weight, mutation decay) all see the 0-based iteration
    index.
    """
    algorithm = Algorithm(algorithm)
    params = config.params_for(algorithm)
    rng = make_rng(seed)
    state = initialize_population(problem.space, config.pop_size, rng)
    state.sense = config.sense
    evaluate_swarm(state, problem, rng)

    mutated_algo = algorithm.mutated
    m_state = MutationState(unchanged=0, last_gbest_fitness=state.gbest_fitness)
    n_iter = config.max_iter
    gbest = np.empty(n_iter)
    pop_best = np.empty(n_iter)
    pop_mean = np.empty(n_iter)
    mutations = np.zeros(n_iter, dtype=int)
    elapsed = np.empty(n_iter)
    diags: list = []

    start = time.perf_counter()
    for t in range(n_iter):
        if mutated_algo:
            def hook(st, r, _t=t):
                stats = mutate_swarm(st, m_state, config.mutation, problem.space,
                                     _t, n_iter, r)
                diags.append(stats)
                return stats.count
        else:
            hook = None
        mutations[t] = step(algorithm.base, state, params, t, n_iter, problem, rng,
                            mutate=hook)
        if mutated_algo:
            update_unchanged(m_state, state.gbest_fitness, state.sense)
        gbest[t] = state.gbest_fitness
        reduce = np.min if state.sense == "minimize" else np.max
        pop_best[t] = reduce(state.fitness)
        pop_mean[t] = state.fitness.mean()
        elapsed[t] = (time.perf_counter() - start) * 1e3

    return RunTrace(
        algorithm=algorithm.value,
        problem_id=problem.id,
        seed=seed,
        iteration=np.arange(1, n_iter + 1),
        gbest=gbest,
        pop_best=pop_best,
        pop_mean=pop_mean,
        mutations=mutations,
        elapsed_ms=elapsed,
        final_fitness=float(state.gbest_fitness),
        final_position=state.gbest_position.copy(),
        mutation_stats=diags if mutated_algo else None,
    )


def trimmed_stats(final_fitnesses, keep_best: int,
                  sense: Sense = "minimize") -> SummaryStats:
    """Stats over the best keep_best of the given run results.

    Selection is by final fitness; sd is the sample standard deviation
    (n-1 denominator) of the kept set.
    """
    values = np.asarray(final_fitnesses, dtype=float)
    if not 1 <= keep_best <= values.size:
        raise ValueError(f"keep_best must lie in [1, {values.size}]")
    kept = np.sort(values)
    kept = kept[:keep_best] if sense == "minimize" else kept[::-1][:keep_best]
    sd = float(np.std(kept, ddof=1)) if keep_best > 1 else 0.0
    lo, hi = float(kept.min()), float(kept.max())
    avg = min(max(float(kept.mean()), lo), hi)  # summation can drift an ulp outside
    return SummaryStats(best=float(kept[0]), avg=avg, worst=float(kept[-1]),
                        sd=sd, n_used=int(keep_best))


def compare_rows(a: SummaryStats, b: SummaryStats, sense: Sense = "minimize") -> int:
    """Lexicographic comparison on (avg, best, sd): -1 if a wins, 1 if b wins, 0 tie."""
    for field_name in ("avg", "best"):
        va, vb = getattr(a, field_name), getattr(b, field_name)
        if va != vb:
            return -1 if is_better(va, vb, sense) else 1
    if a.sd != b.sd:
        return -1 if a.sd < b.sd else 1
    return 0


@dataclass(frozen=True)
class WinTally:
    challenger: str
    incumbent: str
    wins: int
    losses: int
    ties: int


@dataclass(frozen=True)
class ExperimentRow:
    algorithm: str
    problem: str
    stats: SummaryStats
    final_fitnesses: tuple
    seeds: tuple
    mean_elapsed_ms: float


@dataclass
class ExperimentResult:
    spec: "ExperimentSpec"
    rows: list[ExperimentRow]

    def row(self, algorithm: str, problem: str) -> ExperimentRow:
        algorithm = Algorithm(algorithm).value
        for r in self.rows:
            if r.algorithm == algorithm and r.problem == problem:
                return r
        raise KeyError(f"no row for ({algorithm}, {problem})")

    def win_tally(self, challenger: str, incumbent: str) -> WinTally:
        """Per-problem head-to-head of two algorithms in this experiment."""
        challenger = Algorithm(challenger).value
        incumbent = Algorithm(incumbent).value
        wins = losses = ties = 0
        for pid in self.spec.problems:
            cmp = compare_rows(self.row(challenger, pid).stats,
                               self.row(incumbent, pid).stats, self.spec.config.sense)
            wins += cmp < 0
            losses += cmp > 0
            ties += cmp == 0
        return WinTally(challenger, incumbent, wins, losses, ties)

    @property
    def tallies(self) -> list[WinTally]:
        """The standard mutation-vs-ancestor match-ups present in this experiment."""
        have = {r.algorithm for r in self.rows}
        pairs = [("MGPS", "GPS"), ("MPSOGSA", "PSOGSA")]
        return [self.win_tally(c, i) for c, i in pairs if {c, i} <= have]


_CANONICAL_ALGOS = [a.value for a in Algorithm]


@dataclass(frozen=True)
class ExperimentSpec:
    """A grid of (algorithm, problem) cells, each averaged over seeded runs."""

    algorithms: tuple
    problems: tuple
    runs: int = 25
    keep_best: int = 20
    base_seed: int = 0
    constrained: bool = False
    integer_gears: bool = False
    iter_scale: float = 1.0
    config: RunConfig = field(default_factory=RunConfig)

    def __post_init__(self):
        object.__setattr__(self, "algorithms",
                           tuple(Algorithm(a).value for a in self.algorithms))
        object.__setattr__(self, "problems", tuple(self.problems))
        if not 1 <= self.keep_best <= self.runs:
            raise ValueError("need 1 <= keep_best <= runs")
        if self.iter_scale <= 0:
            raise ValueError("iter_scale must be positive")

    def iterations_for(self, pid: str) -> int:
        base = self.config.max_iter if self.config.max_iter else default_max_iter(pid)
        return max(1, round(base * self.iter_scale))

    def quick_profile(self) -> "ExperimentSpec":
        """CI-scale profile: population 30, half the iterations, 10 runs keep 8."""
        return dataclasses.replace(
            self, runs=10, keep_best=8, iter_scale=self.iter_scale * 0.5,
            config=dataclasses.replace(self.config, pop_size=30))


def _run_cell(args):
    algorithm, pid, constrained, integer_gears, cfg, seed = args
    problem = resolve_problem(pid, constrained, integer_gears)
    trace = run_single(algorithm, problem, cfg, seed)
    return trace


def run_experiment(spec: ExperimentSpec, workers: int = 1,
                   trace_sink=None) -> ExperimentResult:
    """Run the whole grid; runs use seeds base_seed + run_index.

    ``trace_sink``, when given, receives every completed RunTrace (e.g. to
    write trace files); traces are not retained otherwise. Workers > 1
    parallelizes across runs without changing any result.
    """
    tasks = []
    for algorithm in spec.algorithms:
        for pid in spec.problems:
            cfg = dataclasses.replace(spec.config, max_iter=spec.iterations_for(pid))
            for r in range(spec.runs):
                tasks.append((algorithm, pid, spec.constrained, spec.integer_gears,
                              cfg, spec.base_seed + r))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            traces = list(pool.map(_run_cell, tasks, chunksize=4))
    else:
        traces = [_run_cell(t) for t in tasks]

    rows = []
    i = 0
    for algorithm in spec.algorithms:
        for pid in spec.problems:
            cell = traces[i:i + spec.runs]
            i += spec.runs
            finals = [t.final_fitness for t in cell]
            rows.append(ExperimentRow(
                algorithm=algorithm,
                problem=pid,
                stats=trimmed_stats(finals, spec.keep_best, spec.config.sense),
                final_fitnesses=tuple(finals),
                seeds=tuple(t.seed for t in cell),
                mean_elapsed_ms=float(np.mean([t.total_elapsed_ms for t in cell])),
            ))
            if trace_sink is not None:
                for t in cell:
                    trace_sink(t)
    return ExperimentResult(spec=spec, rows=rows)


SWEEPABLE = ("alpha_mut", "beta_mut", "rho", "phi")


def param_sweep(spec: ExperimentSpec, parameter: str, values,
                workers: int = 1) -> list[tuple[float, ExperimentResult]]:
    """Re-run the experiment for each value of one mutation parameter."""
    if parameter not in SWEEPABLE:
        raise ValueError(f"unknown sweep parameter '{parameter}'; choose from {SWEEPABLE}")
    out = []
    for v in values:
        mutated = spec.config.mutation.replace(**{parameter: float(v)})
        swept = dataclasses.replace(
            spec, config=dataclasses.replace(spec.config, mutation=mutated))
        out.append((float(v), run_experiment(swept, workers=workers)))
    return out


# --- export / import ---

def _fmt(x: float) -> str:
    return repr(float(x))


def write_trace_csv(trace: RunTrace, path, include_timing: bool = False) -> None:
    """Trace CSV with the fixed column set.

    elapsed_ms is written as 0.0 unless include_timing is set: wall time is
    machine noise and would break byte-for-byte reproducibility of the file.
    """
    with open(path, "w") as f:
        f.write(",".join(TRACE_COLUMNS) + "\n")
        for k in range(trace.iteration.size):
            ms = trace.elapsed_ms[k] if include_timing else 0.0
            f.write(f"{int(trace.iteration[k])},{_fmt(trace.gbest[k])},"
                    f"{_fmt(trace.pop_best[k])},{_fmt(trace.pop_mean[k])},"
                    f"{int(trace.mutations[k])},{_fmt(ms)}\n")


def read_trace_csv(path) -> dict[str, np.ndarray]:
    """Parse a trace CSV back into column arrays (lossless for written floats)."""
    with open(path) as f:
        header = f.readline().strip().split(",")
        if tuple(header) != TRACE_COLUMNS:
            raise ValueError(f"unexpected trace header {header}")
        cols = [[] for _ in TRACE_COLUMNS]
        for line in f:
            for slot, tok in zip(cols, line.strip().split(",")):
                slot.append(float(tok))
    out = {name: np.asarray(c) for name, c in zip(TRACE_COLUMNS, cols)}
    out["iteration"] = out["iteration"].astype(int)
    out["mutations"] = out["mutations"].astype(int)
    return out


def summary_dict(result: ExperimentResult) -> dict:
    """JSON-ready summary with stable key order."""
    spec = result.spec
    return {
        "config": {
            "algorithms": list(spec.algorithms),
            "problems": list(spec.problems),
            "runs": spec.runs,
            "keep_best": spec.keep_best,
            "base_seed": spec.base_seed,
            "constrained": spec.constrained,
            "pop_size": spec.config.pop_size,
            "iter_scale": spec.iter_scale,
            "sense": spec.config.sense,
        },
        "results": [
            {
                "algorithm": r.algorithm,
                "problem": r.problem,
                "best": r.stats.best,
                "avg": r.stats.avg,
                "worst": r.stats.worst,
                "sd": r.stats.sd,
                "n_used": r.stats.n_used,
                "mean_elapsed_ms": r.mean_elapsed_ms,
                "seeds": list(r.seeds),
                "final_fitnesses": list(r.final_fitnesses),
            }
            for r in result.rows
        ],
        "tallies": [
            {
                "challenger": t.challenger,
                "incumbent": t.incumbent,
                "wins": t.wins,
                "losses": t.losses,
                "ties": t.ties,
            }
            for t in result.tallies
        ],
    }


def write_summary_json(result: ExperimentResult, path) -> None:
    with open(path, "w") as f:
        json.dump(summary_dict(result), f, indent=2)
        f.write("\n")


def read_summary_json(path) -> dict:
    with open(path) as f:
        return json.load(f)


def write_summary_csv(result: ExperimentResult, path) -> None:
    """Flat per-(algorithm, problem) stats table."""
    with open(path, "w") as f:
        f.write("algorithm,problem,best,avg,worst,sd,n_used,mean_elapsed_ms\n")
        for r in result.rows:
            f.write(f"{r.algorithm},{r.problem},{_fmt(r.stats.best)},{_fmt(r.stats.avg)},"
                    f"{_fmt(r.stats.worst)},{_fmt(r.stats.sd)},{r.stats.n_used},"
                    f"{_fmt(r.mean_elapsed_ms)}\n")
