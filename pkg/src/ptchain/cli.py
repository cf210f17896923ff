"""Command-line interface.

Subcommands:
    sweep    frequency sweep at fixed (U, gamma) -> CSV (optionally + PNG)
    heatmap  (gamma, omega) grid at fixed U -> CSV (optionally + PNG)
    ep       exceptional-point report -> JSON/CSV
    cpa      CPA-laser location report -> JSON/CSV
    verify   randomized oracle-vs-closed-form identity suite

Exit codes: 0 success, 1 verification failure, 2 usage error. A JSON
config file can mirror any flag (underscore keys); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import PtChainError
from .model import validate_params
from .scattering import exceptional_points
from .sweeps import (
    HEATMAP_COLUMNS,
    SWEEP_COLUMNS,
    HeatmapConfig,
    SweepConfig,
    UsageError,
    heatmap_rows,
    rows_to_csv,
    sweep_rows,
)
from .transfer import cpa_laser_point
from .verify import run_verification

_PLOT_AUTO = "__auto__"


def parse_sigma_mode(text: str) -> complex | None:
    """Decode --sigma-mode: 'cpa' or 'fixed:<re>,<im>'."""
    if text == "cpa":
        return None
    if text.startswith("fixed:"):
        body = text[len("fixed:"):]
        parts = body.split(",")
        if len(parts) == 2:
            try:
                return complex(float(parts[0]), float(parts[1]))
            except ValueError:
                pass
    raise UsageError("sigma-mode", f"expected 'cpa' or 'fixed:<re>,<im>', got {text!r}")


def _merge_options(args: argparse.Namespace, keys: tuple[str, ...], defaults: dict) -> dict:
    """Layer option sources: defaults, then config file, then explicit flags."""
    merged = dict(defaults)
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            loaded = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("config", f"cannot read JSON config: {exc}")
        if not isinstance(loaded, dict):
            raise UsageError("config", "config file must hold a JSON object")
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if key not in keys:
                raise UsageError("config", f"unknown config key {key!r}")
            merged[key] = value
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _require_present(options: dict, *fields: str) -> None:
    for field in fields:
        if options.get(field) is None:
            raise UsageError(field, "required (flag or config file)")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _plot_path(options: dict) -> str | None:
    plot = options.get("plot")
    if plot is None:
        return None
    if plot != _PLOT_AUTO:
        return plot
    if not options.get("out"):
        raise UsageError("plot", "bare --plot derives its name from --out; give one of them a path")
    return str(Path(options["out"]).with_suffix(".png"))


def _check_bulk_format(options: dict) -> None:
    if options.get("format", "csv") != "csv":
        raise UsageError("format", "bulk sweep/heatmap output is CSV-only")


def _cmd_sweep(args: argparse.Namespace) -> int:
    keys = ("U", "gamma", "omega_min", "omega_max", "steps", "sigma_mode",
            "out", "format", "plot")
    options = _merge_options(args, keys, {
        "omega_min": -1.99, "omega_max": 1.99, "steps": 2001,
        "sigma_mode": "cpa", "format": "csv",
    })
    _require_present(options, "U", "gamma")
    _check_bulk_format(options)
    config = SweepConfig(
        U=float(options["U"]), gamma=float(options["gamma"]),
        omega_min=float(options["omega_min"]), omega_max=float(options["omega_max"]),
        steps=int(options["steps"]), sigma=parse_sigma_mode(str(options["sigma_mode"])),
    )
    rows = sweep_rows(config)
    _emit(rows_to_csv(rows, SWEEP_COLUMNS), options.get("out"))
    plot_path = _plot_path(options)
    if plot_path:
        from .plotting import render_sweep_figure

        render_sweep_figure(rows, plot_path,
                            title=f"U={config.U}, gamma={config.gamma}")
    return 0


def _cmd_heatmap(args: argparse.Namespace) -> int:
    keys = ("U", "gamma_min", "gamma_max", "gamma_steps", "omega_min", "omega_max",
            "steps", "out", "format", "plot")
    options = _merge_options(args, keys, {
        "gamma_min": 0.0, "gamma_max": 2.0, "gamma_steps": 301,
        "omega_min": -1.9, "omega_max": 1.9, "steps": 301, "format": "csv",
    })
    _require_present(options, "U")
    _check_bulk_format(options)
    config = HeatmapConfig(
        U=float(options["U"]),
        gamma_min=float(options["gamma_min"]), gamma_max=float(options["gamma_max"]),
        omega_min=float(options["omega_min"]), omega_max=float(options["omega_max"]),
        gamma_steps=int(options["gamma_steps"]), omega_steps=int(options["steps"]),
    )
    rows = heatmap_rows(config)
    _emit(rows_to_csv(rows, HEATMAP_COLUMNS), options.get("out"))
    plot_path = _plot_path(options)
    if plot_path:
        from .plotting import render_heatmap_figure

        render_heatmap_figure(rows, plot_path, title=f"U={config.U}")
    return 0


def _scalar_report(payload: dict, columns: tuple[str, ...], options: dict) -> str:
    fmt = options.get("format") or "json"
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        header = ",".join(columns)
        cells = []
        for col in columns:
            val = payload[col]
            if val is None:
                cells.append("")
            elif isinstance(val, bool):
                cells.append("true" if val else "false")
            elif isinstance(val, float):
                from .sweeps import format_float

                cells.append(format_float(val))
            else:
                cells.append(str(val))
        return header + "\n" + ",".join(cells) + "\n"
    raise UsageError("format", f"unknown format {fmt!r}")


def _cmd_ep(args: argparse.Namespace) -> int:
    keys = ("U", "gamma", "out", "format")
    options = _merge_options(args, keys, {"format": "json"})
    _require_present(options, "U", "gamma")
    params = validate_params(float(options["U"]), float(options["gamma"]))
    condition = params.gamma ** 2 + params.U ** 2 - 4.0
    ep = exceptional_points(params)
    if ep is None:
        summary = "exact phase across the whole band (no exceptional points)"
        payload = {
            "U": params.U, "gamma": params.gamma, "condition_value": condition,
            "omega_minus": None, "omega_plus": None, "degenerate": False,
            "minus_in_band": None, "plus_in_band": None, "summary": summary,
        }
    else:
        if ep.degenerate:
            summary = (f"Hermitian limit: discriminant touches zero at omega = {params.U!r}; "
                       "exact phase elsewhere")
        else:
            summary = (f"broken phase for omega in ({ep.omega_minus!r}, {ep.omega_plus!r}), "
                       "exact phase outside")
        payload = {
            "U": params.U, "gamma": params.gamma, "condition_value": condition,
            "omega_minus": ep.omega_minus, "omega_plus": ep.omega_plus,
            "degenerate": ep.degenerate,
            "minus_in_band": ep.minus_in_band, "plus_in_band": ep.plus_in_band,
            "summary": summary,
        }
    columns = ("U", "gamma", "condition_value", "omega_minus", "omega_plus",
               "degenerate", "minus_in_band", "plus_in_band", "summary")
    _emit(_scalar_report(payload, columns, options), options.get("out"))
    return 0


def _cmd_cpa(args: argparse.Namespace) -> int:
    keys = ("U", "out", "format")
    options = _merge_options(args, keys, {"format": "json"})
    _require_present(options, "U")
    u = float(options["U"])
    if not math.isfinite(u):
        raise UsageError("U", "must be finite")
    point = cpa_laser_point(u)
    payload = {
        "U": u,
        "exists": point is not None,
        "omega0": point.omega0 if point else None,
        "k0": point.k0 if point else None,
        "gamma_cpa": point.gamma_cpa if point else None,
        "existence_bound": "|U| < 1",
        "summary": (f"CPA-laser at omega0 = {point.omega0!r} with gamma = {point.gamma_cpa!r}"
                    if point else "no CPA-laser for this U (requires |U| < 1)"),
    }
    columns = ("U", "exists", "omega0", "k0", "gamma_cpa", "existence_bound", "summary")
    _emit(_scalar_report(payload, columns, options), options.get("out"))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    keys = ("samples", "seed", "out", "format")
    options = _merge_options(args, keys, {"samples": 1000, "seed": 42, "format": "text"})
    report = run_verification(samples=int(options["samples"]), seed=int(options["seed"]))
    fmt = options.get("format")
    if fmt == "json":
        text = json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"
    elif fmt == "text":
        text = "\n".join(report.lines()) + "\n"
    else:
        raise UsageError("format", "verify reports support text or json")
    _emit(text, options.get("out"))
    if options.get("out"):
        sys.stdout.write("PASS\n" if report.passed else "FAIL\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptchain",
        description="Scattering toolkit for a PT-symmetric two-defect tight-binding chain",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON file mirroring flags; explicit flags win")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json", "text"), default=None,
                       help="output format where the subcommand supports a choice")

    p_sweep = sub.add_parser("sweep", help="frequency sweep at fixed (U, gamma)")
    p_sweep.add_argument("--U", type=float)
    p_sweep.add_argument("--gamma", type=float)
    p_sweep.add_argument("--omega-min", dest="omega_min", type=float)
    p_sweep.add_argument("--omega-max", dest="omega_max", type=float)
    p_sweep.add_argument("--steps", type=int)
    p_sweep.add_argument("--sigma-mode", dest="sigma_mode",
                         help="theta injection ratio: cpa (default) or fixed:<re>,<im>")
    p_sweep.add_argument("--plot", nargs="?", const=_PLOT_AUTO,
                         help="render a PNG figure (to PATH, or next to --out)")
    add_common(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_heat = sub.add_parser("heatmap", help="(gamma, omega) eigenvalue-moduli grid")
    p_heat.add_argument("--U", type=float)
    p_heat.add_argument("--gamma-min", dest="gamma_min", type=float)
    p_heat.add_argument("--gamma-max", dest="gamma_max", type=float)
    p_heat.add_argument("--gamma-steps", dest="gamma_steps", type=int)
    p_heat.add_argument("--omega-min", dest="omega_min", type=float)
    p_heat.add_argument("--omega-max", dest="omega_max", type=float)
    p_heat.add_argument("--steps", type=int, help="omega grid points")
    p_heat.add_argument("--plot", nargs="?", const=_PLOT_AUTO,
                        help="render a PNG figure (to PATH, or next to --out)")
    add_common(p_heat)
    p_heat.set_defaults(handler=_cmd_heatmap)

    p_ep = sub.add_parser("ep", help="exceptional-point locations for (U, gamma)")
    p_ep.add_argument("--U", type=float)
    p_ep.add_argument("--gamma", type=float)
    add_common(p_ep)
    p_ep.set_defaults(handler=_cmd_ep)

    p_cpa = sub.add_parser("cpa", help="CPA-laser point for a given U")
    p_cpa.add_argument("--U", type=float)
    add_common(p_cpa)
    p_cpa.set_defaults(handler=_cmd_cpa)

    p_verify = sub.add_parser("verify", help="run the oracle-vs-closed-form identity suite")
    p_verify.add_argument("--samples", type=int)
    p_verify.add_argument("--seed", type=int)
    add_common(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PtChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
