"""Command-line surface: `kscreen screen` ranks the features of a CSV file,
`kscreen simulate` runs a benchmark suite and reports the S/P metrics.

Exit codes map error families: 2 argument, 3 data, 4 numeric, 5 tuning.
Outputs are deterministic for a fixed seed; the thread count changes wall
time only.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass

from . import __version__
from .dataio import json_dumps, load_csv, write_csv_rows
from .errors import ArgumentError, KScreenError
from .measures import Method
from .screening import ThresholdRule, screen
from .simulation import MetricsReport, SimulationSpec, run_suite

_ERROR_FAMILIES = {2: "argument", 3: "data", 4: "numeric", 5: "tuning"}


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation of one subcommand."""

    command: str
    output_path: str = "-"
    output_format: str = "json"
    seed: int = 0
    threads: int = 1
    # screen fields
    input_path: str | None = None
    response_columns: tuple = ()
    method: str = "kcca"
    epsilon_mode: object = "auto"
    m_rule: ThresholdRule | None = None
    gcv_subsample: int | None = None
    # simulate fields
    suite: str | None = None
    model: int | None = None
    n: int | None = None
    p: int | None = None
    reps: int | None = None
    methods: tuple = ()
    ar_rho: float = 0.8
    d_values: tuple | None = None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    return _positive_int(text)


def _parse_epsilon(text: str):
    if text == "auto":
        return "auto"
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--epsilon takes 'auto' or a positive real, got {text!r}")
    if not math.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"--epsilon must be positive, got {text}")
    return value


def _parse_top(text: str):
    if text == "auto":
        return ThresholdRule.auto()
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--top takes 'auto' or a positive integer, got {text!r}")
    if m < 1:
        raise argparse.ArgumentTypeError(f"--top must be >= 1, got {text}")
    return ThresholdRule.fixed(m)


def _parse_methods(text: str) -> tuple:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise argparse.ArgumentTypeError("--methods needs a comma-separated list")
    try:
        return tuple(Method(name) for name in names)
    except ValueError:
        valid = ", ".join(m.value for m in Method)
        raise argparse.ArgumentTypeError(f"unknown method in {text!r}; valid: {valid}")


def _parse_d_values(text: str) -> tuple:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--d-values takes three comma-separated integers")
    try:
        return tuple(int(s) for s in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--d-values must be integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kscreen",
        description="Model-free feature screening and benchmark simulations.",
    )
    parser.add_argument("--version", action="version", version=f"kscreen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output path, '-' for stdout (default)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--threads", type=_threads, default=1,
                        help="worker count, or 'auto' for the CPU count (default 1)")

    sc = sub.add_parser("screen", parents=[common], help="rank CSV features against a response")
    sc.add_argument("--input", required=True, help="CSV file with a header row")
    sc.add_argument("--response", required=True, nargs="+",
                    help="response column names or 1-based positions")
    sc.add_argument("--method", choices=tuple(m.value for m in Method), default="kcca")
    sc.add_argument("--epsilon", type=_parse_epsilon, default="auto",
                    help="'auto' (GCV grid search) or a positive real")
    sc.add_argument("--top", type=_parse_top, default=None,
                    help="'auto' or a model size m (default: top 1%% of features)")
    sc.add_argument("--gcv-subsample", type=_positive_int, default=None,
                    help="predictors entering the GCV sum (default min(p, 200))")

    sm = sub.add_parser("simulate", parents=[common], help="run a benchmark suite")
    sm.add_argument("--suite", choices=("sim1", "sim2"), required=True)
    sm.add_argument("--model", type=_positive_int, required=True)
    sm.add_argument("--n", type=_positive_int, default=200)
    sm.add_argument("--p", type=_positive_int, default=2000)
    sm.add_argument("--reps", type=_positive_int, default=500)
    sm.add_argument("--methods", type=_parse_methods, default=(Method.KCCA,),
                    help="comma-separated subset of kcca,hsic,dc,sis")
    sm.add_argument("--ar-rho", type=float, default=0.8)
    sm.add_argument("--d-values", type=_parse_d_values, default=None,
                    help="override d1,d2,d3 (default: suite-specific)")
    sm.add_argument("--epsilon", type=_parse_epsilon, default="auto")
    sm.add_argument("--gcv-subsample", type=_positive_int, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "screen":
        return RunConfig(
            command="screen",
            output_path=args.out,
            output_format=args.format,
            seed=args.seed,
            threads=args.threads,
            input_path=args.input,
            response_columns=tuple(args.response),
            method=args.method,
            epsilon_mode=args.epsilon,
            m_rule=args.top,
            gcv_subsample=args.gcv_subsample,
        )
    return RunConfig(
        command="simulate",
        output_path=args.out,
        output_format=args.format,
        seed=args.seed,
        threads=args.threads,
        suite=args.suite,
        model=args.model,
        n=args.n,
        p=args.p,
        reps=args.reps,
        methods=args.methods,
        ar_rho=args.ar_rho,
        d_values=args.d_values,
        epsilon_mode=args.epsilon,
        gcv_subsample=args.gcv_subsample,
    )


def _write_output(cfg: RunConfig, text: str):
    if cfg.output_path == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _screen_document(cfg, result, x, y, wall_time: float) -> dict:
    names = x.columns or tuple(f"x{r}" for r in range(1, x.p + 1))
    positions = result.rank_positions()
    scores = [
        {
            "index": r + 1,
            "name": names[r],
            "score": float(result.scores[r]),
            "rank": int(positions[r]),
        }
        for r in range(x.p)
    ]
    selected = [
        {
            "rank": k + 1,
            "index": int(idx),
            "name": names[idx - 1],
            "score": float(result.scores[idx - 1]),
        }
        for k, idx in enumerate(result.selected)
    ]
    return {
        "command": "screen",
        "input": cfg.input_path,
        "method": result.method.value,
        "n": x.n,
        "p": x.p,
        "response_columns": list(y.columns or ()),
        "epsilon": result.epsilon,
        "m": result.m,
        "seed": cfg.seed,
        "scores": scores,
        "selected": selected,
        "wall_time_s": wall_time,
    }


def _run_screen(cfg: RunConfig):
    x, y = load_csv(cfg.input_path, list(cfg.response_columns))
    start = time.perf_counter()
    result = screen(
        x,
        y,
        method=cfg.method,
        rule=cfg.m_rule,
        epsilon=cfg.epsilon_mode,
        seed=cfg.seed,
        gcv_subsample=cfg.gcv_subsample,
        threads=cfg.threads,
    )
    wall = time.perf_counter() - start
    if cfg.output_format == "json":
        _write_output(cfg, json_dumps(_screen_document(cfg, result, x, y, wall)))
    else:
        names = x.columns or tuple(f"x{r}" for r in range(1, x.p + 1))
        positions = result.rank_positions()
        chosen = set(int(i) for i in result.selected)
        rows = [
            (r + 1, names[r], float(result.scores[r]), int(positions[r]),
             1 if (r + 1) in chosen else 0)
            for r in range(x.p)
        ]
        import io

        buf = io.StringIO()
        write_csv_rows(buf, ("index", "name", "score", "rank", "selected"), rows)
        _write_output(cfg, buf.getvalue())


def _report_document(cfg: RunConfig, report: MetricsReport) -> dict:
    spec = report.spec
    results = []
    for method in report.methods:
        q25, q50, q75 = report.s_quantiles[method.value]
        p1, p2, p3 = report.p_proportions[method.value]
        results.append(
            {
                "method": method.value,
                "s_quantiles": {"q25": q25, "q50": q50, "q75": q75},
                "p_proportions": {"d1": p1, "d2": p2, "d3": p3},
            }
        )
    return {
        "command": "simulate",
        "suite": spec.suite,
        "model": spec.model_id,
        "n": spec.n,
        "p": spec.p,
        "reps": spec.reps,
        "seed": spec.seed,
        "ar_rho": spec.ar_rho,
        "methods": [m.value for m in report.methods],
        "d_values": list(report.d_values),
        "results": results,
    }


def _run_simulate(cfg: RunConfig):
    spec = SimulationSpec(
        suite=cfg.suite,
        model_id=cfg.model,
        n=cfg.n,
        p=cfg.p,
        reps=cfg.reps,
        seed=cfg.seed,
        ar_rho=cfg.ar_rho,
    )
    report = run_suite(
        spec,
        cfg.methods,
        cfg.d_values,
        threads=cfg.threads,
        epsilon=cfg.epsilon_mode,
        gcv_subsample=cfg.gcv_subsample,
    )
    if cfg.output_format == "json":
        _write_output(cfg, json_dumps(_report_document(cfg, report)))
    else:
        import io

        buf = io.StringIO()
        write_csv_rows(buf, ("suite", "model", "method", "label", "value"), report.to_rows())
        _write_output(cfg, buf.getvalue())


def run_command(cfg: RunConfig) -> int:
    """Execute a validated config; returns the process exit status."""
    try:
        if cfg.command == "screen":
            _run_screen(cfg)
        elif cfg.command == "simulate":
            _run_simulate(cfg)
        else:
            raise ArgumentError(f"unknown command {cfg.command!r}")
        return 0
    except KScreenError as e:
        family = _ERROR_FAMILIES.get(e.exit_code, "internal")
        print(f"error[{family}]: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:  # pragma: no cover - defensive
        print(f"error[internal]: {e!r}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return run_command(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
