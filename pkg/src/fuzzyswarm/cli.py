"""Command-line front end: single runs, experiment grids, parameter sweeps.

A JSON config file can mirror any flag (nested sections ``pso``, ``gsa``,
``psogsa``, ``gps``, ``mutation`` set algorithm parameters); explicit flags
override file values. Exit status is 0 on success and nonzero with a message
on configuration or I/O errors.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
from pathlib import Path

from . import engineering, functions
from .algorithms import (Algorithm, GpsParams, GsaParams, PsoParams,
                         PsogsaParams)
from .harness import (ExperimentSpec, RunConfig, default_max_iter, param_sweep,
                      resolve_problem, run_experiment, run_single,
                      write_summary_csv, write_summary_json, write_trace_csv)
from .mutation import MutationParams

_RANGE = re.compile(r"^([A-Z]+)(\d+)\.\.(?:[A-Z]+)?(\d+)$")


def parse_id_list(text: str) -> list[str]:
    """Comma lists with ranges: 'F1..F23', 'F1,F10,F15', 'EF1..EF5,F1'."""
    out: list[str] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        m = _RANGE.match(token)
        if m:
            prefix, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
            if hi < lo:
                raise ValueError(f"empty range '{token}'")
            out.extend(f"{prefix}{i}" for i in range(lo, hi + 1))
        else:
            out.append(token)
    if not out:
        raise ValueError("empty id list")
    return out


_PARAM_GROUPS = {
    "pso": PsoParams,
    "gsa": GsaParams,
    "psogsa": PsogsaParams,
    "gps": GpsParams,
    "mutation": MutationParams,
}


def _build_group(cls, data: dict):
    nested = {k: _build_group(_PARAM_GROUPS[k], v) for k, v in data.items()
              if k in ("pso", "gsa")}
    flat = {k: v for k, v in data.items() if k not in ("pso", "gsa")}
    return cls(**flat, **nested)


def run_config_from_dict(data: dict, pop_size: int, max_iter: int) -> RunConfig:
    """RunConfig with parameter groups taken from a config-file dict."""
    groups = {}
    for name, cls in _PARAM_GROUPS.items():
        if name in data:
            groups[name] = _build_group(cls, dict(data[name]))
    return RunConfig(pop_size=pop_size, max_iter=max_iter, **groups)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _merged(args, cfg: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file mirroring the flags")
    p.add_argument("--pop", type=int, help="population size (default 50)")
    p.add_argument("--seed", type=int, help="base seed (default 0)")
    p.add_argument("--constrained", action="store_true", default=None,
                   help="engineering problems use inequality constraints + penalty")
    p.add_argument("--integer-gears", action="store_true", default=None,
                   help="round gear-train variables to integers")


def _cmd_run(args) -> int:
    cfg = _load_config(args.config)
    algo = Algorithm(_merged(args, cfg, "algo", None) or "")
    pid = _merged(args, cfg, "problem", None)
    if pid is None:
        raise ValueError("run needs --problem")
    problem = resolve_problem(pid, bool(_merged(args, cfg, "constrained", False)),
                              bool(_merged(args, cfg, "integer_gears", False)))
    pop = int(_merged(args, cfg, "pop", 50))
    iters = int(_merged(args, cfg, "iters", 0) or default_max_iter(pid))
    run_cfg = run_config_from_dict(cfg, pop_size=pop, max_iter=iters)
    override = _merged(args, cfg, "mutation_prob", None)
    if override is not None:
        run_cfg = dataclasses.replace(
            run_cfg, mutation=run_cfg.mutation.replace(probability_override=float(override)))
    seed = int(_merged(args, cfg, "seed", 0))
    trace = run_single(algo, problem, run_cfg, seed)
    if args.trace:
        write_trace_csv(trace, args.trace, include_timing=bool(args.timing))
    print(f"{algo.value} on {pid}: final fitness {trace.final_fitness!r} "
          f"(seed {seed}, {iters} iterations, {trace.total_elapsed_ms:.0f} ms)")
    print("final position:", " ".join(repr(float(v)) for v in trace.final_position))
    return 0


def _experiment_spec(args, cfg: dict) -> ExperimentSpec:
    algos = parse_id_list(_merged(args, cfg, "algos", None) or "")
    problems = parse_id_list(_merged(args, cfg, "problems", None) or "")
    pop = int(_merged(args, cfg, "pop", 50))
    iters = int(_merged(args, cfg, "iters", 0))  # 0: per-problem default
    run_cfg = run_config_from_dict(cfg, pop_size=pop, max_iter=iters)
    spec = ExperimentSpec(
        algorithms=tuple(algos),
        problems=tuple(problems),
        runs=int(_merged(args, cfg, "runs", 25)),
        keep_best=int(_merged(args, cfg, "keep", 20)),
        base_seed=int(_merged(args, cfg, "seed", 0)),
        constrained=bool(_merged(args, cfg, "constrained", False)),
        integer_gears=bool(_merged(args, cfg, "integer_gears", False)),
        config=run_cfg,
    )
    if _merged(args, cfg, "quick", False):
        spec = spec.quick_profile()
    return spec


def _trace_sink(directory: str | None):
    if not directory:
        return None
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)

    def sink(trace):
        name = f"{trace.algorithm}_{trace.problem_id}_seed{trace.seed}.csv"
        write_trace_csv(trace, root / name)

    return sink


def _cmd_experiment(args) -> int:
    cfg = _load_config(args.config)
    spec = _experiment_spec(args, cfg)
    workers = int(_merged(args, cfg, "workers", 1))
    result = run_experiment(spec, workers=workers, trace_sink=_trace_sink(args.traces_dir))
    out = _merged(args, cfg, "out", None)
    if out:
        write_summary_json(result, out)
    if args.summary_csv:
        write_summary_csv(result, args.summary_csv)
    for row in result.rows:
        s = row.stats
        print(f"{row.algorithm:8s} {row.problem:5s} best={s.best:.6g} avg={s.avg:.6g} "
              f"worst={s.worst:.6g} sd={s.sd:.6g}")
    for t in result.tallies:
        total = t.wins + t.losses + t.ties
        print(f"{t.challenger} vs {t.incumbent}: {t.wins}/{total} wins, "
              f"{t.losses} losses, {t.ties} ties")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    if not args.algos and "algos" not in cfg:
        args.algos = "MGPS"
    spec = _experiment_spec(args, cfg)
    parameter = _merged(args, cfg, "param", None)
    raw_values = _merged(args, cfg, "values", None)
    if parameter is None or raw_values is None:
        raise ValueError("sweep needs --param and --values")
    if isinstance(raw_values, str):
        values = [float(v) for v in raw_values.split(",") if v.strip()]
    else:
        values = [float(v) for v in raw_values]
    workers = int(_merged(args, cfg, "workers", 1))
    table = param_sweep(spec, parameter, values, workers=workers)
    payload = []
    for value, result in table:
        payload.append({"value": value,
                        "results": [
                            {"algorithm": r.algorithm, "problem": r.problem,
                             "best": r.stats.best, "avg": r.stats.avg,
                             "worst": r.stats.worst, "sd": r.stats.sd}
                            for r in result.rows]})
        for r in result.rows:
            print(f"{parameter}={value:g} {r.algorithm:8s} {r.problem:5s} "
                  f"avg={r.stats.avg:.6g} best={r.stats.best:.6g}")
    out = _merged(args, cfg, "out", None)
    if out:
        with open(out, "w") as f:
            json.dump({"parameter": parameter, "sweep": payload}, f, indent=2)
            f.write("\n")
    return 0


def _cmd_list(_args) -> int:
    print(f"{'id':5s} {'category':10s} {'dim':>3s} {'domain':24s} {'optimum':>12s}")
    for p in functions.registry():
        lo, hi = p.space.lower, p.space.upper
        if (lo == lo[0]).all() and (hi == hi[0]).all():
            domain = f"[{lo[0]:g}, {hi[0]:g}]^{p.space.dim}"
        else:
            domain = " x ".join(f"[{a:g},{b:g}]" for a, b in zip(lo, hi))
        print(f"{p.id:5s} {p.category:10s} {p.space.dim:3d} {domain:24s} {p.known_optimum:12.6g}")
    for d in engineering.registry():
        domain = " x ".join(f"[{a:g},{b:g}]" for a, b in zip(d.space.lower, d.space.upper))
        print(f"{d.id:5s} {'design':10s} {d.space.dim:3d} {domain}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyswarm",
        description="PSO/GSA hybrid optimizers with centroid-based fuzzy mutation")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single seeded optimization run")
    _add_common(p_run)
    p_run.add_argument("--algo", help="PSO|GSA|GPS|PSOGSA|MGPS|MPSOGSA")
    p_run.add_argument("--problem", help="problem id, e.g. F9 or EF1")
    p_run.add_argument("--iters", type=int, help="iterations (default 500 for F1-F7, else 1000)")
    p_run.add_argument("--trace", help="write per-iteration trace CSV here")
    p_run.add_argument("--timing", action="store_true",
                       help="include wall-clock elapsed_ms in the trace "
                            "(breaks byte-reproducibility)")
    p_run.add_argument("--mutation-prob", type=float, dest="mutation_prob",
                       help="pin the mutation probability (0 disables the operator)")
    p_run.set_defaults(fn=_cmd_run)

    p_exp = sub.add_parser("experiment", help="multi-run comparison grid")
    _add_common(p_exp)
    p_exp.add_argument("--algos", help="comma list, e.g. GPS,MGPS")
    p_exp.add_argument("--problems", help="comma list with ranges, e.g. F1..F23")
    p_exp.add_argument("--runs", type=int, help="independent runs per cell (default 25)")
    p_exp.add_argument("--keep", type=int, help="best runs kept for stats (default 20)")
    p_exp.add_argument("--iters", type=int, help="override per-problem default iterations")
    p_exp.add_argument("--out", help="summary JSON path")
    p_exp.add_argument("--summary-csv", help="flat summary CSV path")
    p_exp.add_argument("--traces-dir", help="write every run's trace CSV into this directory")
    p_exp.add_argument("--workers", type=int, help="parallel worker processes")
    p_exp.add_argument("--quick", action="store_true", default=None,
                       help="CI profile: pop 30, half iterations, 10 runs keep 8")
    p_exp.set_defaults(fn=_cmd_experiment)

    p_sweep = sub.add_parser("sweep", help="sweep one mutation parameter")
    _add_common(p_sweep)
    p_sweep.add_argument("--param", help="alpha_mut|beta_mut|rho|phi")
    p_sweep.add_argument("--values", help="comma list of values")
    p_sweep.add_argument("--algos", help="comma list (default MGPS)")
    p_sweep.add_argument("--problems", help="comma list, e.g. F1,F10,F15")
    p_sweep.add_argument("--runs", type=int)
    p_sweep.add_argument("--keep", type=int)
    p_sweep.add_argument("--iters", type=int)
    p_sweep.add_argument("--out", help="sweep JSON path")
    p_sweep.add_argument("--workers", type=int)
    p_sweep.add_argument("--quick", action="store_true", default=None)
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_list = sub.add_parser("list", help="print the problem registry")
    p_list.set_defaults(fn=_cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
