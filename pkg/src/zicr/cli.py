"""Command-line front end.

One executable, six modes:

    zicr capacity     --snr11 1 --snr21_db -20 ...   -> JSON record
    zicr gdof         --alpha 0.4 --beta 2 ...       -> JSON report
    zicr sweep-fig3   [--points 71]                  -> CSV sum-rate sweep
    zicr sweep-fig5   [--beta 2 --gamma 2]           -> CSV exponent sweep
    zicr relay-region [--grid 200]                   -> CSV placement mask
    zicr verify       [--seed 42]                    -> check table, exit code

Scenario parameters come from an optional JSON config file with flag
overrides on top.  dB values carry a `_db` suffix and are converted here;
everything past this module is linear.  CSV output uses ',' separators,
'.' decimals, a header row, and 15 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from .capacity import (
    cutset_bounds,
    genie_sum_upper_bound,
    sum_capacity_zic,
    sum_capacity_zicr,
)
from .gdof import gdof_report, sweep_alpha
from .geometry import (
    DEFAULT_BOUNDS,
    DEFAULT_LAYOUT,
    DEFAULT_RESOLUTION,
    NodeLayout,
    relay_region,
)
from .model import GdofExponents, SnrSextet
from .verification import DEFAULT_SEED, all_passed, format_table, run_all

SNR_FIELDS = ("snr11", "snr21", "snr31", "snr22", "snr32", "snr13")
EXPONENT_FIELDS = ("alpha", "beta", "gamma", "lambda")

FIG3_DEFAULTS = {
    "start_db": -30.0,
    "stop_db": 5.0,
    "points": 71,
    "snrd": 1.0,
    "snr13": 1e6,
}
FIG5_DEFAULTS = {"beta": 2.0, "gamma": 2.0, "points": 101}


class UsageError(Exception):
    """Configuration problem the user can fix; maps to exit status 2."""


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _fmt(x: float) -> str:
    return format(float(x), ".15g")


def load_config(path: str | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError(f"config {path} must be a JSON object")
    return cfg


def _resolve_scalar(
    name: str, flag_lin: float | None, flag_db: float | None, section: dict[str, Any]
) -> float | None:
    """Linear value of one parameter from flags over config, db-aware."""
    if flag_lin is not None and flag_db is not None:
        raise UsageError(f"give --{name} or --{name}_db, not both")
    if flag_lin is not None:
        return float(flag_lin)
    if flag_db is not None:
        return _db_to_linear(float(flag_db))
    in_lin = section.get(name)
    in_db = section.get(f"{name}_db")
    if in_lin is not None and in_db is not None:
        raise UsageError(f"config sets both {name} and {name}_db")
    if in_lin is not None:
        return float(in_lin)
    if in_db is not None:
        return _db_to_linear(float(in_db))
    return None


def resolve_snr(args: argparse.Namespace, cfg: dict[str, Any]) -> SnrSextet | None:
    section = cfg.get("snr", {})
    if not isinstance(section, dict):
        raise UsageError("config field 'snr' must be an object")
    values = {}
    for name in SNR_FIELDS:
        values[name] = _resolve_scalar(
            name, getattr(args, name), getattr(args, f"{name}_db"), section
        )
    present = [n for n in SNR_FIELDS if values[n] is not None]
    if not present:
        return None
    missing = [n for n in SNR_FIELDS if values[n] is None]
    if missing:
        raise UsageError(f"incomplete snr specification; missing {', '.join(missing)}")
    try:
        return SnrSextet(**{n: values[n] for n in SNR_FIELDS})
    except ValueError as exc:
        raise UsageError(f"invalid snr: {exc}") from exc


def resolve_exponents(
    args: argparse.Namespace, cfg: dict[str, Any]
) -> GdofExponents | None:
    section = cfg.get("exponents", {})
    if not isinstance(section, dict):
        raise UsageError("config field 'exponents' must be an object")
    flags = {
        "alpha": args.alpha,
        "beta": args.beta,
        "gamma": args.gamma,
        "lambda": args.lam,
    }
    values = {}
    for name in EXPONENT_FIELDS:
        flag = flags[name]
        values[name] = float(flag) if flag is not None else section.get(name)
    present = [n for n in EXPONENT_FIELDS if values[n] is not None]
    if not present:
        return None
    missing = [n for n in EXPONENT_FIELDS if values[n] is None]
    if missing:
        raise UsageError(
            f"incomplete exponent specification; missing {', '.join(missing)}"
        )
    try:
        return GdofExponents(
            alpha=float(values["alpha"]),
            beta=float(values["beta"]),
            gamma=float(values["gamma"]),
            lam=float(values["lambda"]),
        )
    except ValueError as exc:
        raise UsageError(f"invalid exponents: {exc}") from exc


def _point(raw: Any, name: str) -> tuple[float, float]:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(c, (int, float)) for c in raw)
    ):
        raise UsageError(f"layout field '{name}' must be a [x, y] pair")
    return (float(raw[0]), float(raw[1]))


def resolve_layout(cfg: dict[str, Any]) -> NodeLayout:
    section = cfg.get("layout")
    if section is None:
        return DEFAULT_LAYOUT
    if not isinstance(section, dict):
        raise UsageError("config field 'layout' must be an object")
    defaults = (
        DEFAULT_LAYOUT.tx1,
        DEFAULT_LAYOUT.rx1,
        DEFAULT_LAYOUT.tx2,
        DEFAULT_LAYOUT.rx2,
    )
    points = []
    for name, default in zip(("tx1", "rx1", "tx2", "rx2"), defaults):
        raw = section.get(name)
        points.append(default if raw is None else _point(raw, name))
    try:
        return NodeLayout(*points)
    except ValueError as exc:
        raise UsageError(f"invalid layout: {exc}") from exc


def _sweep_params(cfg: dict[str, Any], defaults: dict[str, Any]) -> dict[str, Any]:
    section = cfg.get("sweep", {})
    if not isinstance(section, dict):
        raise UsageError("config field 'sweep' must be an object")
    params = dict(defaults)
    for key in defaults:
        if key in section:
            params[key] = section[key]
    return params


def run_capacity(snr: SnrSextet) -> str:
    cap = sum_capacity_zicr(snr)
    genie_value, genie_valid = genie_sum_upper_bound(snr)
    cut = cutset_bounds(snr)
    cert = cap.certificate
    record = {
        "sum_capacity": cap.value,
        "certified": cap.certified,
        "certificate": None
        if cert is None
        else {"beta1": cert.beta1, "beta2": cert.beta2},
        "relay_condition": cap.relay_ok,
        "genie_ub": {"value": genie_value, "valid": genie_valid},
        "cutset": {
            "r1_tx_side": cut.r1_tx_side,
            "r1_rx_side": cut.r1_rx_side,
            "r2": cut.r2_bound,
            "sum": cut.sum_bound,
        },
    }
    return json.dumps(record, indent=2) + "\n"


def run_gdof(exp: GdofExponents) -> str:
    report = gdof_report(exp)
    record = {
        "lower": report.lower,
        "upper": report.upper,
        "upper_valid": report.upper_valid,
        "max_certified": report.max_certified,
        "conditions_hold": report.conditions_hold,
    }
    return json.dumps(record, indent=2) + "\n"


def run_sweep_fig3(params: dict[str, Any]) -> str:
    points = int(params["points"])
    if points < 2:
        raise UsageError("sweep needs at least 2 points")
    snrd = float(params["snrd"])
    snr13 = float(params["snr13"])
    grid_db = np.linspace(float(params["start_db"]), float(params["stop_db"]), points)
    lines = ["snrc_db,sum_zicr,sum_zic,wi_certified_zicr,wi_certified_zic"]
    for db in grid_db:
        snrc = _db_to_linear(float(db))
        snr = SnrSextet(
            snr11=snrd, snr21=snrc, snr31=snrd, snr22=snrd, snr32=snrc, snr13=snr13
        )
        zicr = sum_capacity_zicr(snr)
        zic = sum_capacity_zic(snr)
        lines.append(
            f"{_fmt(db)},{_fmt(zicr.value)},{_fmt(zic.value)},"
            f"{int(zicr.certified)},{int(zic.certified)}"
        )
    return "\n".join(lines) + "\n"


def run_sweep_fig5(params: dict[str, Any]) -> str:
    points = int(params["points"])
    if points < 2:
        raise UsageError("sweep needs at least 2 points")
    rows = sweep_alpha(float(params["beta"]), float(params["gamma"]), points)
    lines = ["alpha,gdof_lower,gdof_upper,upper_valid,zic_bound,max_certified"]
    for row in rows:
        tail = "" if row.max_certified is None else _fmt(row.max_certified)
        lines.append(
            f"{_fmt(row.alpha)},{_fmt(row.lower)},{_fmt(row.upper)},"
            f"{int(row.upper_valid)},{_fmt(row.zic_bound)},{tail}"
        )
    return "\n".join(lines) + "\n"


def run_relay_region(
    layout: NodeLayout, cfg: dict[str, Any], grid_flag: int | None
) -> str:
    section = cfg.get("region", {})
    if not isinstance(section, dict):
        raise UsageError("config field 'region' must be an object")
    bounds = section.get("bounds", list(DEFAULT_BOUNDS))
    if not isinstance(bounds, (list, tuple)) or len(bounds) != 4:
        raise UsageError("region bounds must be [xmin, xmax, ymin, ymax]")
    resolution = int(
        grid_flag if grid_flag is not None else section.get("resolution", DEFAULT_RESOLUTION)
    )
    expo = float(section.get("pathloss_exponent", 4.0))
    try:
        region = relay_region(
            layout,
            bounds=tuple(float(b) for b in bounds),
            resolution=resolution,
            pathloss_exponent=expo,
        )
    except ValueError as exc:
        raise UsageError(f"invalid region request: {exc}") from exc
    lines = ["x,y,inside"]
    for i, x in enumerate(region.xs):
        for j, y in enumerate(region.ys):
            lines.append(f"{_fmt(x)},{_fmt(y)},{int(region.mask[i, j])}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zicr",
        description="Sum-rate, GDoF, and relay-placement analysis for the "
        "phase-fading Z-interference channel with a relay.",
    )
    parser.add_argument(
        "mode",
        choices=["capacity", "gdof", "sweep-fig3", "sweep-fig5", "relay-region", "verify"],
    )
    parser.add_argument("--config", help="JSON scenario file")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--seed", type=int, help="seed for stochastic checks")
    for name in SNR_FIELDS:
        parser.add_argument(f"--{name}", type=float)
        parser.add_argument(f"--{name}_db", type=float)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--lambda", dest="lam", type=float)
    parser.add_argument("--grid", type=int, help="relay-region grid resolution")
    parser.add_argument("--points", type=int, help="sweep point count")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    out = args.out if args.out is not None else cfg.get("out")
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))

    if args.mode == "capacity":
        snr = resolve_snr(args, cfg)
        if snr is None:
            raise UsageError("capacity mode needs all six snr values")
        _emit(run_capacity(snr), out)
        return 0

    if args.mode == "gdof":
        exp = resolve_exponents(args, cfg)
        if exp is None:
            raise UsageError("gdof mode needs alpha, beta, gamma, lambda")
        _emit(run_gdof(exp), out)
        return 0

    if args.mode == "sweep-fig3":
        params = _sweep_params(cfg, FIG3_DEFAULTS)
        if args.points is not None:
            params["points"] = args.points
        _emit(run_sweep_fig3(params), out)
        return 0

    if args.mode == "sweep-fig5":
        params = _sweep_params(cfg, FIG5_DEFAULTS)
        if args.points is not None:
            params["points"] = args.points
        if args.beta is not None:
            params["beta"] = args.beta
        if args.gamma is not None:
            params["gamma"] = args.gamma
        _emit(run_sweep_fig5(params), out)
        return 0

    if args.mode == "relay-region":
        layout = resolve_layout(cfg)
        _emit(run_relay_region(layout, cfg, args.grid), out)
        return 0

    # verify
    results = run_all(seed)
    table = format_table(results) + "\n"
    sys.stdout.write(table)
    if out is not None:
        Path(out).write_text(table, encoding="utf-8")
    return 0 if all_passed(results) else 1


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
