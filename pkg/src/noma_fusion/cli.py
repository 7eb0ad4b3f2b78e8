"""Command-line front end.

Subcommands:

    design    closed-form optimal rotation for one parameter set (JSON)
    table1    optimal-rotation table across an SNR grid of benchmark cases (CSV)
    sweep     Monte Carlo angle sweep, single-SNR or error-vs-SNR curve mode
    regions   decision-region raster (ML or limiting analytic form) as CSV

All commands are deterministic given --seed.  Exit codes: 0 success, 2 bad
input, 3 I/O failure (partial outputs are removed).  NOMA_FUSION_THREADS
caps sweep parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import configparser
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .bound import n0_to_snr_db, optimal_design, planar_upper_bound, snr_db_to_n0
from .decoder import rasterize_regions, write_cells_csv, write_raster_csv
from .model import SystemParams
from .asymptotics import high_snr_region, rasterize_high_snr, region_agreement
from .simulate import SimConfig, summary_dict, sweep, write_sweep_csv

DEFAULT_SNR_DB = [-10.0, -6.0, -3.0, 0.0, 3.0, 6.0, 10.0, 13.0, 16.0, 20.0]
DEFAULT_CASES = [
    ("case1", 0.05, 0.10, 2.0, 1.0),
    ("case2", 0.01, 0.02, 1.0, 2.0),
]


class _Manifest:
    """Run record written even when the command fails midway."""

    def __init__(self, path: str | None, command: str, parameters: dict):
        self.path = path
        self.data = {
            "command": command,
            "parameters": parameters,
            "seed": parameters.get("seed"),
            "version": __version__,
            "outputs": [],
            "duration_s": None,
            "status": "running",
            "error": None,
        }
        self._t0 = time.monotonic()

    def add_output(self, path: str) -> None:
        self.data["outputs"].append(path)

    def finish(self, status: str, error: str | None = None) -> None:
        self.data["status"] = status
        self.data["error"] = error
        self.data["duration_s"] = time.monotonic() - self._t0
        if self.path is None:
            return
        try:
            with open(self.path, "w") as fh:
                json.dump(self.data, fh, indent=2)
                fh.write("\n")
        except OSError:
            pass  # the manifest must never mask the primary error


def _add_params_args(p: argparse.ArgumentParser, *, seed_required: bool = False) -> None:
    p.add_argument("--eps1", type=float, required=True, help="crossover of the better sensor")
    p.add_argument("--eps2", type=float, required=True, help="crossover of the weaker sensor")
    p.add_argument("--p1", type=float, required=True, help="sensor-1 power (linear)")
    p.add_argument("--p2", type=float, required=True, help="sensor-2 power (linear)")
    noise = p.add_mutually_exclusive_group(required=True)
    noise.add_argument("--n0", type=float, help="channel noise power (linear)")
    noise.add_argument("--snr-db", type=float, help="geometric SNR sqrt(p1 p2)/n0 in dB")
    if seed_required:
        p.add_argument("--seed", type=int, required=True, help="master RNG seed")


def _params_from_args(args) -> SystemParams:
    n0 = args.n0 if args.n0 is not None else snr_db_to_n0(args.p1, args.p2, args.snr_db)
    return SystemParams(eps1=args.eps1, eps2=args.eps2, p1=args.p1, p2=args.p2, n0=n0)


def _parse_float_list(text: str) -> list[float]:
    items = [tok for tok in text.replace(",", " ").split() if tok]
    if not items:
        raise ValueError("empty numeric list")
    return [float(tok) for tok in items]


def _load_cases(path: str | None):
    """Benchmark cases and SNR grid from an INI-style file, or the defaults."""
    if path is None:
        return list(DEFAULT_CASES), list(DEFAULT_SNR_DB)
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ValueError(f"cannot read case file {path!r}")
    snrs = list(DEFAULT_SNR_DB)
    cases = []
    for section in cp.sections():
        if section == "table":
            snrs = _parse_float_list(cp.get(section, "snr_db"))
            continue
        cases.append(
            (
                section,
                cp.getfloat(section, "eps1"),
                cp.getfloat(section, "eps2"),
                cp.getfloat(section, "p1"),
                cp.getfloat(section, "p2"),
            )
        )
    if not cases:
        raise ValueError(f"case file {path!r} defines no cases")
    if not snrs:
        raise ValueError("empty SNR list")
    return cases, snrs


def _open_out(path: str, created: list[str], manifest: _Manifest):
    fh = open(path, "w")
    created.append(path)
    manifest.add_output(path)
    return fh


def cmd_design(args, manifest: _Manifest) -> int:
    params = _params_from_args(args)
    design = optimal_design(params)
    payload = {
        "schema_version": 1,
        "pcf": design.pcf,
        "theta_star_rad": design.theta_star,
        "pe_ub_star": design.pe_ub_star,
        "clamped": design.clamped,
    }
    if args.degrees:
        payload["theta_star_deg"] = math.degrees(design.theta_star)
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_table1(args, manifest: _Manifest) -> int:
    cases, snrs = _load_cases(args.config)
    if args.snr_list is not None:
        snrs = _parse_float_list(args.snr_list)

    rows = []
    for snr_db in snrs:
        for label, eps1, eps2, p1, p2 in cases:
            params = SystemParams(eps1, eps2, p1, p2, snr_db_to_n0(p1, p2, snr_db))
            design = optimal_design(params)
            exp_star = ""
            if args.simulate:
                cfg = SimConfig(
                    params=params,
                    theta_grid=np.linspace(0.0, math.pi / 2.0, args.theta_points),
                    trials=args.trials,
                    bits_per_trial=args.bits,
                    seed=args.seed,
                    ma_window=args.ma_window,
                )
                exp_star = repr(sweep(cfg).theta_exp_star)
            rows.append((snr_db, label, design.theta_star, exp_star))

    buf = io.StringIO()
    buf.write("snr_db,case,theta_ub_star,theta_exp_star\n")
    for snr_db, label, theta_ub, exp_star in rows:
        buf.write(f"{snr_db:g},{label},{theta_ub!r},{exp_star}\n")

    created: list[str] = []
    if args.out:
        with _open_out(args.out, created, manifest) as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def _sweep_config(args, params: SystemParams) -> SimConfig:
    return SimConfig(
        params=params,
        theta_grid=np.linspace(0.0, math.pi / 2.0, args.theta_points),
        trials=args.trials,
        bits_per_trial=args.bits,
        seed=args.seed,
        ma_window=args.ma_window,
        extract=args.extract,
    )


def cmd_sweep(args, manifest: _Manifest) -> int:
    created: list[str] = []
    try:
        if args.snr_list is None:
            params = _params_from_args(args)
            result = sweep(_sweep_config(args, params))
            with _open_out(args.out + ".csv", created, manifest) as fh:
                write_sweep_csv(result, fh)
            with _open_out(args.out + ".json", created, manifest) as fh:
                json.dump(summary_dict(result), fh, indent=2)
                fh.write("\n")
            return 0

        # Error-vs-SNR curve mode: one sweep per SNR, one row per SNR.
        snrs = _parse_float_list(args.snr_list)
        rows = []
        for snr_db in snrs:
            n0 = snr_db_to_n0(args.p1, args.p2, snr_db)
            params = SystemParams(args.eps1, args.eps2, args.p1, args.p2, n0)
            design = optimal_design(params)
            result = sweep(_sweep_config(args, params))
            rows.append(
                {
                    "snr_db": snr_db,
                    "n0": n0,
                    "theta_ub_star": design.theta_star,
                    "pe_ub_star": design.pe_ub_star,
                    "theta_exp_star": result.theta_exp_star,
                    "pe_exp_star": result.pe_exp_star,
                    "pe_exp_ci": result.pe_exp_ci,
                }
            )
        with _open_out(args.out + ".csv", created, manifest) as fh:
            fh.write("snr_db,n0,theta_ub_star,pe_ub_star,theta_exp_star,pe_exp_star,pe_exp_ci\n")
            for r in rows:
                fh.write(
                    f"{r['snr_db']:g},{r['n0']!r},{r['theta_ub_star']!r},{r['pe_ub_star']!r},"
                    f"{r['theta_exp_star']!r},{r['pe_exp_star']!r},{r['pe_exp_ci']!r}\n"
                )
        with _open_out(args.out + ".json", created, manifest) as fh:
            json.dump(
                {
                    "schema_version": 1,
                    "mode": "snr_list",
                    "seed": args.seed,
                    "rows": rows,
                    "config": {
                        "eps1": args.eps1, "eps2": args.eps2,
                        "p1": args.p1, "p2": args.p2,
                        "theta_points": args.theta_points,
                        "trials": args.trials, "bits_per_trial": args.bits,
                        "seed": args.seed, "ma_window": args.ma_window,
                        "extract": args.extract,
                    },
                },
                fh,
                indent=2,
            )
            fh.write("\n")
        return 0
    except OSError:
        for path in created:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise


def cmd_regions(args, manifest: _Manifest) -> int:
    params = _params_from_args(args)
    bounds = (args.xmin, args.xmax, args.ymin, args.ymax)
    created: list[str] = []

    buf = io.StringIO()
    if args.high_snr_analytic:
        region = high_snr_region(params, args.theta)
        xs, ys, cells = rasterize_high_snr(region, bounds, args.nx, args.ny)
        write_cells_csv(xs, ys, cells, buf)
    else:
        raster = rasterize_regions(params, args.theta, bounds, args.nx, args.ny)
        write_raster_csv(raster, buf)

    try:
        if args.out:
            with _open_out(args.out, created, manifest) as fh:
                fh.write(buf.getvalue())
        elif not args.compare:
            sys.stdout.write(buf.getvalue())
        if args.compare:
            agreement = region_agreement(params, args.theta, bounds, args.nx, args.ny)
            json.dump({"agreement": agreement}, sys.stdout)
            sys.stdout.write("\n")
        return 0
    except OSError:
        for path in created:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-fusion",
        description="Two-sensor binary fusion over a Gaussian MAC: rotation design, "
        "ML decoding, Monte Carlo sweeps, decision-region rasters.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="closed-form optimal rotation as JSON")
    _add_params_args(p)
    p.add_argument("--degrees", action="store_true", help="also report the angle in degrees")
    p.add_argument("--manifest", help="write a run manifest to this path")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("table1", help="optimal-rotation table over an SNR grid")
    p.add_argument("--config", help="INI case file ([case] sections + [table] snr_db)")
    p.add_argument("--snr-list", help="override SNR grid, e.g. '0,3,6'")
    p.add_argument("--simulate", action="store_true", help="also fill the simulated optimum column")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--bits", type=int, default=100_000)
    p.add_argument("--theta-points", type=int, default=100)
    p.add_argument("--ma-window", type=int, default=5)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--manifest", help="write a run manifest to this path")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("sweep", help="Monte Carlo angle sweep (CSV + JSON summary)")
    _add_params_args(p, seed_required=True)
    p.add_argument("--theta-points", type=int, default=100)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--bits", type=int, default=100_000)
    p.add_argument("--ma-window", type=int, default=5)
    p.add_argument("--extract", choices=("pooled", "per_trial"), default="pooled")
    p.add_argument("--snr-list", help="curve mode: loop these SNRs (dB) instead of one sweep")
    p.add_argument("--out", required=True, help="output prefix (.csv and .json appended)")
    p.add_argument("--manifest", help="write a run manifest to this path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("regions", help="decision-region raster as CSV")
    _add_params_args(p)
    p.add_argument("--theta", type=float, required=True, help="rotation angle (radians)")
    p.add_argument("--xmin", type=float, default=-4.0)
    p.add_argument("--xmax", type=float, default=4.0)
    p.add_argument("--ymin", type=float, default=-4.0)
    p.add_argument("--ymax", type=float, default=4.0)
    p.add_argument("--nx", type=int, default=400)
    p.add_argument("--ny", type=int, default=400)
    p.add_argument("--high-snr-analytic", action="store_true",
                   help="emit the limiting line-based region instead of the ML raster")
    p.add_argument("--compare", action="store_true",
                   help="print the ML/analytic cell-agreement fraction as JSON")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--manifest", help="write a run manifest to this path")
    p.set_defaults(func=cmd_regions)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    parameters = {k: v for k, v in vars(args).items() if k not in ("func",) and v is not None}
    manifest = _Manifest(getattr(args, "manifest", None), args.command, parameters)
    try:
        rc = args.func(args, manifest)
    except ValueError as exc:
        manifest.finish("error", str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        manifest.finish("error", str(exc))
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    manifest.finish("ok")
    return rc


if __name__ == "__main__":
    sys.exit(main())
