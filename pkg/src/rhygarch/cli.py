"""Command-line interface: check, simulate, fit, forecast, mc.

Exit codes: 0 success, 2 usage error, 3 data error, 4 non-convergence or
non-stationarity refusal.  Diagnostics go to stderr; results go to the
requested output file or stdout.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__
from .dataio import (dump_json, format_series, load_json, load_params,
                     read_series, write_series)
from .estimate import FitOptions, fit
from .exceptions import DataError, NonStationaryError
from .mc import StudyConfig, emit_table, run_study_config
from .model import check_stationarity, validate
from .risk import CONVENTIONS, T_QUANTILE_MODES, make_forecasts
from .sim import simulate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NOT_CONVERGED = 4


@dataclass
class RunConfig:
    """Schema of every CLI flag; the parser is checked against this."""

    command: str = ""
    params: str | None = None      # parameter JSON path
    data: str | None = None        # input series CSV path
    out: str | None = None         # output file path
    out_dir: str | None = None     # output directory (mc)
    config: str | None = None      # study config JSON path (mc)
    start: str | None = None       # starting-parameter JSON path (fit)
    K: int = 1000
    T: int = 1000
    burn_in: int = 2000
    seed: int = 0
    levels: str = "0.05,0.01"
    convention: str = "paper"
    t_quantile: str = "standardized"
    dist: str = "gaussian"
    latent: bool = False
    drop_presample: bool = False
    workers: int | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rhygarch",
        description="Realized hyperbolic GARCH(1,d,1): simulate, fit, forecast.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_k(p):
        p.add_argument("--K", type=int, default=1000,
                       help="filter truncation length (>= 1)")

    p = sub.add_parser("check", help="stationarity diagnostics for a parameter set")
    p.add_argument("--params", required=True, help="parameter JSON file")
    add_k(p)

    p = sub.add_parser("simulate", help="simulate a (return, realized) path")
    p.add_argument("--params", required=True, help="parameter JSON file")
    p.add_argument("--T", type=int, required=True, help="observations to keep (>= 1)")
    p.add_argument("--burn-in", type=int, default=2000, dest="burn_in",
                   help="observations discarded before the sample (>= 0)")
    add_k(p)
    p.add_argument("--seed", type=int, default=0, help="master RNG seed")
    p.add_argument("--latent", action="store_true",
                   help="include h, z, u columns in the CSV")
    p.add_argument("--out", help="output CSV (default: stdout)")

    p = sub.add_parser("fit", help="quasi-maximum-likelihood estimation")
    p.add_argument("--data", required=True, help="input series CSV")
    p.add_argument("--dist", choices=["gaussian", "student_t"],
                   default="gaussian", help="innovation distribution")
    add_k(p)
    p.add_argument("--start", help="starting-parameter JSON file")
    p.add_argument("--drop-presample", action="store_true", dest="drop_presample",
                   help="drop the first K observations from the likelihood")
    p.add_argument("--out", help="output JSON (default: stdout)")

    p = sub.add_parser("forecast", help="one-step-ahead variance and VaR/ES")
    p.add_argument("--params", required=True,
                   help="parameter JSON file (plain or fit output)")
    p.add_argument("--data", required=True, help="input series CSV")
    p.add_argument("--levels", default="0.05,0.01",
                   help="comma-separated tail probabilities in (0, 1)")
    p.add_argument("--convention", choices=list(CONVENTIONS), default="paper",
                   help="expected-shortfall convention")
    p.add_argument("--t-quantile", choices=list(T_QUANTILE_MODES),
                   default="standardized", dest="t_quantile",
                   help="student-t quantile scaling")
    add_k(p)
    p.add_argument("--out", help="output JSON (default: stdout)")

    p = sub.add_parser("mc", help="Monte Carlo study from a JSON config")
    p.add_argument("--config", required=True, help="study config JSON file")
    p.add_argument("--out-dir", required=True, dest="out_dir",
                   help="directory for summary.json and table.txt/csv")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel replications (default: RHYGARCH_THREADS or CPUs)")
    return parser


def _parse_levels(text: str) -> list[float]:
    try:
        levels = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"cannot parse levels {text!r}")
    if not levels or any(not 0.0 < a < 1.0 for a in levels):
        raise UsageError("levels must lie strictly inside (0, 1)")
    return levels


class UsageError(Exception):
    pass


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n",
                             encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_check(args) -> int:
    params = load_params(args.params)
    problems = validate(params)
    if problems:
        raise DataError("invalid parameters: " + "; ".join(problems))
    if args.K < 1:
        raise UsageError("--K must be >= 1")
    report = check_stationarity(params, args.K)
    _write_output(dump_json(report.to_dict()), None)
    if not report.first_moment_ok:
        print("first-moment condition violated", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.T < 1:
        raise UsageError("--T must be >= 1")
    if args.burn_in < 0:
        raise UsageError("--burn-in must be >= 0")
    if args.K < 1:
        raise UsageError("--K must be >= 1")
    params = load_params(args.params)
    problems = validate(params)
    if problems:
        raise DataError("invalid parameters: " + "; ".join(problems))
    series = simulate(params, args.T, args.burn_in, args.K, seed=args.seed,
                      keep_latents=args.latent)
    if args.out:
        write_series(series, args.out, include_latents=args.latent)
    else:
        sys.stdout.write(format_series(series, include_latents=args.latent))
    return EXIT_OK


def _cmd_fit(args) -> int:
    if args.K < 1:
        raise UsageError("--K must be >= 1")
    data = read_series(args.data)
    start = load_params(args.start) if args.start else None
    options = FitOptions(drop_presample=args.drop_presample)
    result = fit(data, args.dist, args.K, start=start, options=options)
    _write_output(dump_json(result.to_dict()), args.out)
    if not result.converged:
        print(f"fit did not converge (grad_norm={result.grad_norm:.3g})",
              file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_forecast(args) -> int:
    if args.K < 1:
        raise UsageError("--K must be >= 1")
    levels = _parse_levels(args.levels)
    params = load_params(args.params)
    problems = validate(params)
    if problems:
        raise DataError("invalid parameters: " + "; ".join(problems))
    data = read_series(args.data)
    forecasts = make_forecasts(params, data.realized, args.K, levels,
                               args.convention, args.t_quantile)
    _write_output(dump_json({"forecasts": [f.to_dict() for f in forecasts]}),
                  args.out)
    return EXIT_OK


def _cmd_mc(args) -> int:
    obj = load_json(args.config)
    try:
        config = StudyConfig.from_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"{args.config}: bad study config: {exc}") from exc
    if args.workers is not None:
        config.workers = args.workers
    summary = run_study_config(config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "summary.json").write_text(emit_table(summary, "json") + "\n",
                                          encoding="utf-8")
    (out_dir / "table.txt").write_text(emit_table(summary, "text"),
                                       encoding="utf-8")
    (out_dir / "table.csv").write_text(emit_table(summary, "csv"),
                                       encoding="utf-8")
    print(f"study written to {out_dir}", file=sys.stderr)
    sys.stdout.write(emit_table(summary, "text"))
    return EXIT_OK


_HANDLERS = {
    "check": _cmd_check,
    "simulate": _cmd_simulate,
    "fit": _cmd_fit,
    "forecast": _cmd_forecast,
    "mc": _cmd_mc,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NonStationaryError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(dump_json(exc.report.to_dict()), file=sys.stderr)
        return EXIT_NOT_CONVERGED


if __name__ == "__main__":
    sys.exit(main())
