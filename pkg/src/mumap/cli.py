"""Command-line interface: point queries, map scans, profiles, sweeps,
and the randomized oracle validation suite.

Exit codes: 0 on success, 1 on validation failure or runtime error,
2 on configuration or usage problems.
"""

import argparse
import sys
from dataclasses import replace

import numpy as np

from .config import OUTPUT_FORMATS, SimulationConfig, default_config, load_config
from .errors import ConfigError, MumapError
from .fieldmap import isotropy_profile, scan_grid, sweep_detuning
from .mapio import HeatmapStyle, render_heatmap_ppm, write_map_csv, write_map_json
from .response import (
    magnetic_susceptibility,
    permeability_at_point,
    standing_wave_rabi,
    steady_coherences,
)
from .validate import run_oracle_check

# Oracle routes must agree to this relative deviation for exit code 0.
VALIDATE_TOLERANCE = 1e-7


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MumapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="mumap",
        description="Spatial maps of complex magnetic permeability for a "
        "standing-wave-driven three-level medium.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate the response at one (x, y) position")
    _common_options(point)
    point.add_argument("--x", type=float, default=0.0, help="x position in meters")
    point.add_argument("--y", type=float, default=0.0, help="y position in meters")
    point.set_defaults(handler=_cmd_point)

    map_cmd = sub.add_parser("map", help="scan the grid and write the map")
    _common_options(map_cmd)
    map_cmd.add_argument("--out", help="output file (default: config output.path or stdout)")
    map_cmd.add_argument("--format", choices=OUTPUT_FORMATS, help="output format")
    map_cmd.add_argument("--vmin", type=float, help="heatmap lower clamp (ppm only)")
    map_cmd.add_argument("--vmax", type=float, help="heatmap upper clamp (ppm only)")
    map_cmd.set_defaults(handler=_cmd_map)

    profile = sub.add_parser("profile", help="sample Re mu_r on a circle")
    _common_options(profile)
    profile.add_argument("--x", type=float, required=True, help="circle center x (m)")
    profile.add_argument("--y", type=float, required=True, help="circle center y (m)")
    profile.add_argument("--radius", type=float, required=True, help="circle radius (m)")
    profile.add_argument("--samples", type=int, default=64, help="number of angles")
    profile.set_defaults(handler=_cmd_profile)

    sweep = sub.add_parser("sweep", help="scan maps over a list of detunings")
    _common_options(sweep)
    sweep.add_argument("--axis", choices=("probe", "coupling"), required=True)
    sweep.add_argument("--values", required=True,
                       help="comma-separated detunings in gamma units")
    sweep.add_argument("--out", help="output file (default: stdout)")
    sweep.set_defaults(handler=_cmd_sweep)

    validate = sub.add_parser("validate", help="cross-check the steady-state routes")
    validate.add_argument("--draws", type=int, default=10000)
    validate.add_argument("--seed", type=int, default=0)
    validate.set_defaults(handler=_cmd_validate)

    return parser


def _common_options(sub):
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--delta-p", type=float, help="probe detuning override (gamma units)")
    sub.add_argument("--delta-c", type=float, help="coupling detuning override (gamma units)")
    sub.add_argument("--phi-x", type=float, help="x standing-wave phase override (rad)")
    sub.add_argument("--phi-y", type=float, help="y standing-wave phase override (rad)")


def _resolve_config(args) -> SimulationConfig:
    config = load_config(args.config) if args.config else default_config()
    overrides = {}
    for field, attr in (
        ("delta_p", "delta_p"),
        ("delta_c", "delta_c"),
        ("phi_x", "phi_x"),
        ("phi_y", "phi_y"),
    ):
        value = getattr(args, attr)
        if value is not None:
            overrides[field] = value
    if overrides:
        config = replace(config, drive=replace(config.drive, **overrides))
    return config


def _cmd_point(args) -> int:
    config = _resolve_config(args)
    drive, rates, medium = config.drive, config.rates, config.medium
    omega_c = standing_wave_rabi(args.x, args.y, drive)
    coherences = steady_coherences(omega_c, drive, rates)
    chi = magnetic_susceptibility(coherences.rho31, drive, rates, medium)
    mu_r = permeability_at_point(args.x, args.y, drive, rates, medium)
    print(f"x       = {args.x:.9e} m")
    print(f"y       = {args.y:.9e} m")
    print(f"omega_c = {float(omega_c):.9e} gamma")
    print(f"chi     = {chi:.9e} m^3")
    print(f"N*chi   = {medium.density_n * chi:.9e}")
    print(f"mu_r    = {mu_r:.9e}")
    return 0


def _cmd_map(args) -> int:
    config = _resolve_config(args)
    fmt = args.format or config.output.format
    path = args.out or config.output.path
    field_map = scan_grid(config.grid, config.drive, config.rates, config.medium)

    if fmt == "csv":
        _write_text(write_map_csv(field_map), path)
    elif fmt == "json":
        _write_text(write_map_json(field_map, config), path)
    else:
        style = _heatmap_style(field_map, args.vmin, args.vmax)
        _write_bytes(render_heatmap_ppm(field_map, style), path)
    return 0


def _heatmap_style(field_map, vmin, vmax) -> HeatmapStyle:
    re = field_map.values.real
    finite = re[np.isfinite(re)]
    if vmin is None:
        vmin = float(finite.min()) if finite.size else 0.0
    if vmax is None:
        vmax = float(finite.max()) if finite.size else 1.0
    if not vmax > vmin:
        vmin, vmax = vmin - 0.5, vmax + 0.5
    return HeatmapStyle(vmin=vmin, vmax=vmax)


def _cmd_profile(args) -> int:
    config = _resolve_config(args)
    report = isotropy_profile(
        config.drive,
        config.rates,
        config.medium,
        center=(args.x, args.y),
        radius=args.radius,
        samples=args.samples,
    )
    print(f"center          = ({report.center[0]:.9e}, {report.center[1]:.9e}) m")
    print(f"radius          = {report.radius:.9e} m")
    print(f"samples         = {report.samples}")
    print(f"excluded        = {report.excluded}")
    print(f"mean            = {report.mean:.9e}")
    print(f"min             = {report.min:.9e}")
    print(f"max             = {report.max:.9e}")
    print(f"spread          = {report.spread:.9e}")
    print(f"relative_spread = {report.relative_spread:.9e}")
    return 0


def _cmd_sweep(args) -> int:
    config = _resolve_config(args)
    try:
        values = [float(item) for item in args.values.split(",") if item.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad --values list: {exc}") from None
    if not values:
        raise ConfigError("--values must contain at least one detuning")
    rows = sweep_detuning(
        args.axis, values, config.drive, config.rates, config.medium, config.grid
    )
    lines = ["detuning,min_re_mu,kind,quadrants"]
    for row in rows:
        kind = row.kind if row.kind is not None else ""
        lines.append(
            f"{row.detuning:.8e},{row.min_re_mu:.8e},{kind},{'+'.join(row.quadrants)}"
        )
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_validate(args) -> int:
    report = run_oracle_check(n_draws=args.draws, seed=args.seed)
    print(f"draws                 = {report.draws}")
    print(f"max closed-vs-solve   = {report.max_closed_vs_solve:.3e}")
    print(f"max closed-vs-settle  = {report.max_closed_vs_settle:.3e}")
    print(f"elapsed               = {report.elapsed_seconds:.2f} s")
    if report.max_deviation < VALIDATE_TOLERANCE:
        print(f"OK: max deviation below {VALIDATE_TOLERANCE:g}")
        return 0
    print(f"FAILED: max deviation {report.max_deviation:.3e} exceeds {VALIDATE_TOLERANCE:g}",
          file=sys.stderr)
    return 1


def _write_text(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _write_bytes(data: bytes, path) -> None:
    if path:
        with open(path, "wb") as handle:
            handle.write(data)
    else:
        sys.stdout.buffer.write(data)


if __name__ == "__main__":
    sys.exit(main())
