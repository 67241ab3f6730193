"""Command-line entry point: ``dirtymac {region,simulate,kmdemo,gaussian}``.

Every data file written with ``--out`` gets a sibling ``<out>.manifest.json``
holding the command, parameters, seed, code hash and package version. Output
contains no timestamps, so a fixed seed gives byte-identical files.

Exit codes: 0 success, 1 usage, 2 configuration, 3 internal (decode error).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .channel import ChannelConfig
from .coset_code import resolve_code
from .errors import (
    ConfigurationError,
    DegenerateConfigurationError,
    DimensionError,
    DomainError,
    InvalidCodeError,
    PrecisionError,
    ResourceError,
)
from .gaussian import (
    GaussianConfig,
    costa_sweep,
    estimator_calibration,
    mod_delta_sum_rate_estimate,
    shaping_loss,
)
from .korner_marton import KmSourceConfig, km_scheme_demo
from .linear_scheme import SplitSpec, run_simulation
from .single_letter import capacity_sum, fmax_diagonal_curve, upper_convex_envelope

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3

_CONFIG_ERRORS = (ConfigurationError, DomainError, InvalidCodeError, ResourceError,
                  PrecisionError, DegenerateConfigurationError, DimensionError)


def _probability(text: str) -> Fraction:
    """Exact probability from "1/7", "0.25" or "3/23"."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}") from exc


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} in output")
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _check_finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError("non-finite value in output")
    if isinstance(obj, dict):
        for v in obj.values():
            _check_finite(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _check_finite(v)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    _check_finite(obj)
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None, command: str, params: dict, seed, code_hash=None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.write_text(text)
    manifest = {
        "command": command,
        "params": params,
        "seed": seed,
        "code_hash": code_hash,
        "version": __version__,
        "outputs": [str(out)],
    }
    Path(f"{out}.manifest.json").write_text(_json_text(manifest))


# --------------------------------------------------------------------------
# commands


def cmd_region(args) -> int:
    if not (0 <= args.q_min < args.q_max <= 0.5):
        raise UsageError(f"need 0 <= q_min < q_max <= 1/2, got {args.q_min}, {args.q_max}")
    if args.steps < 2:
        raise UsageError("steps must be at least 2")
    q = np.linspace(args.q_min, args.q_max, args.steps)
    curve, alphas = fmax_diagonal_curve(q, args.grid)
    env = upper_convex_envelope(curve)
    rows = []
    for i, qi in enumerate(q):
        cap = capacity_sum(qi, qi)
        rows.append([float(qi), cap, float(curve.values[i]), float(env.values[i]),
                     cap - float(env.values[i]), float(alphas[i])])
    text = _csv_text(["q", "capacity", "fmax", "envelope", "gap", "alpha_opt"], rows)
    params = {"q_min": args.q_min, "q_max": args.q_max, "steps": args.steps, "grid": args.grid}
    _emit(text, args.out, "region", params, None)
    return EXIT_OK


def cmd_simulate(args) -> int:
    code = resolve_code(args.code)
    if (args.l1 is None) != (args.l2 is None):
        raise UsageError("give both --l1 and --l2, or neither")
    split = SplitSpec.helper(code) if args.l1 is None else SplitSpec(args.l1, args.l2)
    if split.l1 + split.l2 != code.redundancy:
        raise UsageError(f"l1 + l2 must equal n - k = {code.redundancy}")
    cfg = ChannelConfig(n=code.n, q1=args.q1, q2=args.q2, one_dirty=args.one_dirty, seed=args.seed)
    report = run_simulation(cfg, code, split, trials=args.trials)
    params = {"code": args.code, "q1": str(args.q1), "q2": str(args.q2), "l1": split.l1, "l2": split.l2,
              "trials": args.trials, "one_dirty": args.one_dirty}
    _emit(_json_text(report.to_dict()), args.out, "simulate", params, args.seed, code.fingerprint)
    if report.decode_errors:
        print(f"{report.decode_errors} decode errors", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_kmdemo(args) -> int:
    code = resolve_code(args.code)
    rows = []
    for theta in args.theta:
        r = km_scheme_demo(KmSourceConfig(code.n, theta, args.seed), code, args.trials)
        rows.append([theta, r.km_bound, r.sw_bound, r.gap, r.error_rate, float(r.code_rate)])
    text = _csv_text(["theta", "km_bound", "sw_bound", "gap", "empirical_error_rate", "code_rate"], rows)
    params = {"code": args.code, "theta": list(args.theta), "trials": args.trials}
    _emit(text, args.out, "kmdemo", params, args.seed, code.fingerprint)
    return EXIT_OK


def _load_gaussian_config(args) -> GaussianConfig:
    raw = {}
    if args.config is not None:
        path = Path(args.config)
        if not path.is_file():
            raise UsageError(f"config file {args.config} not found")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(raw) - set(GaussianConfig.__dataclass_fields__)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.samples is not None:
        raw["samples"] = args.samples
    return GaussianConfig(**raw)


def cmd_gaussian(args) -> int:
    cfg = _load_gaussian_config(args)
    est = mod_delta_sum_rate_estimate(cfg)
    calib = estimator_calibration(cfg.samples, cfg.seed, cfg.window)
    alphas = np.linspace(0.0, 1.0, args.grid + 1)
    costa_max, a1, a2 = costa_sweep(cfg.P1, cfg.P2, cfg.N, cfg.Q1, cfg.Q2, alphas)
    report = {
        "config": cfg.to_dict(),
        "capacity": est.capacity,
        "mod_delta_estimate": est.estimate,
        "gap": est.gap,
        "standard_error": est.stderr,
        "shaping_loss": shaping_loss(),
        "estimator_calibration_residual": calib,
        "terms": est.terms,
        "powers": list(est.powers),
        "constraint": est.constraint,
        "costa_sweep": {"max": costa_max, "alpha1": a1, "alpha2": a2, "grid": args.grid},
    }
    _emit(_json_text(report), args.out, "gaussian", cfg.to_dict(), cfg.seed)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dirtymac", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("region", help="capacity vs best single-letter sum rate on q1 = q2 = q")
    r.add_argument("--q-min", type=float, default=0.0)
    r.add_argument("--q-max", type=float, default=0.5)
    r.add_argument("--steps", type=int, default=512)
    r.add_argument("--grid", type=int, default=1024, help="F_max grid resolution per alpha")
    r.add_argument("--out")
    r.set_defaults(func=cmd_region)

    s = sub.add_parser("simulate", help="Monte-Carlo run of the coset scheme")
    s.add_argument("--code", default="hamming7", help="builtin name or code file path")
    s.add_argument("--q1", type=_probability, default=Fraction(1, 2), help="e.g. 1/7")
    s.add_argument("--q2", type=_probability, default=Fraction(1, 2))
    s.add_argument("--l1", type=int)
    s.add_argument("--l2", type=int)
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--one-dirty", action="store_true", help="S2 = 0")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    k = sub.add_parser("kmdemo", help="syndrome coding of the xor of two sources")
    k.add_argument("--theta", type=float, nargs="+", default=[0.0, 0.02, 0.05, 0.11])
    k.add_argument("--code", default="hamming7")
    k.add_argument("--trials", type=int, default=100_000)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--out")
    k.set_defaults(func=cmd_kmdemo)

    g = sub.add_parser("gaussian", help="mod-Delta Monte Carlo and closed forms")
    g.add_argument("--config", help="JSON object with GaussianConfig fields")
    g.add_argument("--seed", type=int)
    g.add_argument("--samples", type=int)
    g.add_argument("--grid", type=int, default=100, help="alpha grid for the Costa sweep")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gaussian)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _CONFIG_ERRORS as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
