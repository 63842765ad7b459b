"""Command-line experiment runner.

Subcommands: simulate, experiment, swing, cubefit, validate, plot.
Exit codes: 0 success, 1 usage error, 2 validation failure, 3 I/O error.

An experiment can be driven from a JSON config document mirroring the
ExperimentSpec fields; command-line flags override file values.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analytic import AnalyticCurve
from .experiments import (
    ExperimentSpec,
    SwingSpec,
    config_from_jsonable,
    read_dataset_csv,
    read_swing_csv,
    run_experiment,
    run_swing,
    summarize_dataset,
    validate,
    write_state_csv,
)
from .plots import PLOT_KINDS, emit_plots, emit_swing_plot
from .scenarios import build_config, scenario_names
from .stats import central_slope_fit, cube_exponent_fit
from .urn import init_state, run_until, stream_for_replicate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); remap to our usage code
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="urnelect",
                     description="Multi-district urn election simulator")
    parser.add_argument("--version", action="version", version=f"urnelect {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one simulation from an explicit config")
    sim.add_argument("--config", type=Path, required=True,
                     help="JSON file with the simulation config fields")
    sim.add_argument("--out", type=Path, required=True, help="output state CSV path")
    sim.add_argument("--seed", type=int, default=None, help="override the config seed")

    exp = sub.add_parser("experiment", help="run a named scenario with replicates")
    exp.add_argument("scenario", nargs="?", default=None,
                     help=f"one of: {', '.join(scenario_names())}")
    exp.add_argument("--config", type=Path, default=None,
                     help="JSON experiment spec; flags given here override it")
    exp.add_argument("--p", type=float, default=None, help="imitation probability")
    exp.add_argument("--reps", type=int, default=None, help="replicate count (default 1000)")
    exp.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    exp.add_argument("--out", type=Path, default=None, help="output directory")
    exp.add_argument("--districts", type=int, default=None, help="district count (default 100)")
    exp.add_argument("--target", type=int, default=None,
                     help="balls per replicate (default 100000)")
    exp.add_argument("--workers", type=int, default=None, help="parallel workers (default 1)")
    exp.add_argument("--histograms", action="store_true", help="also write histogram CSVs")

    sw = sub.add_parser("swing", help="grow / rescale / regrow swing experiment")
    sw.add_argument("--p", type=float, default=0.0)
    sw.add_argument("--reps", type=int, default=1000)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--out", type=Path, default=None)
    sw.add_argument("--grow", type=int, default=1_000_000, help="base-election ball count")
    sw.add_argument("--rescale", type=int, default=600, help="balls after rescaling")
    sw.add_argument("--regrow", type=int, default=None,
                    help="next-election ball count (default: same as --grow)")
    sw.add_argument("--districts", type=int, default=100)
    sw.add_argument("--workers", type=int, default=1)

    cf = sub.add_parser("cubefit", help="fit seat-vote slopes from a dataset CSV")
    cf.add_argument("--dataset", type=Path, required=True)
    cf.add_argument("--window", type=float, default=1.0,
                    help="halfwidth of the popular-share fit window around 0.5")

    va = sub.add_parser("validate", help="run the oracle self-check battery")
    va.add_argument("--samples", type=int, default=200_000,
                    help="Monte Carlo samples per distribution check")

    pl = sub.add_parser("plot", help="render an SVG figure from a dataset CSV")
    pl.add_argument("--dataset", type=Path, required=True,
                    help="replicate dataset CSV (or swing records CSV for --kind swing)")
    pl.add_argument("--kind", required=True,
                    help=f"one of: {', '.join(PLOT_KINDS)}, swing")
    pl.add_argument("--out", type=Path, required=True, help="output directory")
    pl.add_argument("--bins", type=int, default=20)
    pl.add_argument("--cube-overlay", type=float, default=None,
                    help="overlay the ratio-law curve with this exponent (seats_votes only)")

    return parser


def _cmd_simulate(args) -> int:
    doc = json.loads(args.config.read_text(encoding="utf-8"))
    if args.seed is not None:
        doc["seed"] = args.seed
    config = config_from_jsonable(doc)
    _, rng = stream_for_replicate(config.seed, 0)
    state = init_state(config)
    run_until(state, config.target_total_balls, rng)
    write_state_csv(state, args.out)
    print(f"wrote {args.out} (grand total {state.grand_total} balls, "
          f"{state.step_count} steps)")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    doc: dict = {}
    if args.config is not None:
        doc = json.loads(args.config.read_text(encoding="utf-8"))
    scenario = args.scenario or doc.get("scenario")
    if scenario is None:
        raise _UsageError("a scenario name is required (argument or config file)")
    p = args.p if args.p is not None else float(doc.get("p", 0.0))
    reps = args.reps if args.reps is not None else int(doc.get("replicates", 1000))
    seed = args.seed if args.seed is not None else int(doc.get("seed", 0))
    districts = args.districts if args.districts is not None else int(doc.get("num_districts", 100))
    target = args.target if args.target is not None else int(doc.get("target_total_balls", 100_000))
    workers = args.workers if args.workers is not None else int(doc.get("workers", 1))
    out_dir = args.out if args.out is not None else doc.get("out_dir")
    outputs = ["dataset", "summary"]
    if args.histograms or "histograms" in doc.get("outputs", ()):
        outputs.append("histograms")

    config = build_config(scenario, p=p, num_districts=districts,
                          target_total_balls=target, seed=seed)
    spec = ExperimentSpec(scenario=scenario, config=config, replicates=reps,
                          outputs=tuple(outputs),
                          out_dir=Path(out_dir) if out_dir else None, workers=workers)
    dataset = run_experiment(spec)
    summary = summarize_dataset(dataset)
    print(f"{scenario} p={p:g}: {reps} replicates")
    for key in ("seat_mean_party1", "seat_variance_party1", "north_south_pearson",
                "central_slope", "cube_exponent"):
        print(f"  {key}: {summary.get(key)}")
    if spec.out_dir is not None:
        print(f"outputs in {spec.out_dir}")
    return EXIT_OK


def _cmd_swing(args) -> int:
    regrow = args.regrow if args.regrow is not None else args.grow
    config = build_config("sym_1_1", p=args.p, num_districts=args.districts,
                          target_total_balls=args.grow, seed=args.seed)
    spec = SwingSpec(config=config, rescale_total=args.rescale, regrow_target=regrow,
                     replicates=args.reps, out_dir=args.out, workers=args.workers)
    records, fit = run_swing(spec)
    print(f"swing p={args.p:g}: {len(records)} replicates")
    print(f"  slope {fit.slope:.5f}  intercept {fit.intercept:.5f}  "
          f"residual RMS {fit.residual_rms:.5f}")
    if args.out is not None:
        print(f"outputs in {args.out}")
    return EXIT_OK


def _cmd_cubefit(args) -> int:
    dataset = read_dataset_csv(args.dataset)
    fit = central_slope_fit(dataset, window_halfwidth=args.window)
    print(f"central slope: {fit.slope:.4f} (intercept {fit.intercept:.4f}, "
          f"{fit.points_used} points, residual RMS {fit.residual_rms:.4f})")
    try:
        k = cube_exponent_fit(dataset)
        print(f"ratio-law exponent: {k:.4f}")
    except ValueError as exc:
        print(f"ratio-law exponent: not fitted ({exc})")
    return EXIT_OK


def _cmd_validate(args) -> int:
    checks = validate(mc_samples=args.samples)
    failures = 0
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        failures += not check.passed
        print(f"{status}  {check.name}: {check.detail}")
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VALIDATION


def _cmd_plot(args) -> int:
    if args.kind == "swing":
        records = read_swing_csv(args.dataset)
        args.out.mkdir(parents=True, exist_ok=True)
        path = emit_swing_plot(records, args.out / "swing.svg")
    else:
        dataset = read_dataset_csv(args.dataset)
        overlay = None
        if args.cube_overlay is not None:
            overlay = AnalyticCurve.cube(args.cube_overlay)
        path = emit_plots(dataset, args.kind, args.out, bins=args.bins, overlay=overlay)
    print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "simulate": _cmd_simulate,
            "experiment": _cmd_experiment,
            "swing": _cmd_swing,
            "cubefit": _cmd_cubefit,
            "validate": _cmd_validate,
            "plot": _cmd_plot,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
