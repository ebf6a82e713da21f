"""Command-line front end: placement reports, SR sweeps, correlation maps.

Exit codes: 0 on success, 1 for usage/config/I-O problems, 2 when the
requested scenario admits no nulling placement.
"""

import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .arrays import ArrayGeometry
from .charts import render_heatmap, render_line_chart
from .errors import InfeasibleGeometry, InvalidIndex, InvalidYaw
from .experiments import sweep_alpha, sweep_snr
from .geometry import Position3D
from .placement import correlation_map, solve_azimuth_scheme, solve_pitch_scheme
from .scenario import ScenarioConfig
from .signalmodel import PowerConfig

_INT_KEYS = {"m", "n", "seed"}
_FLOAT_KEYS = {
    "f_c_hz",
    "x_e_m",
    "g_m",
    "theta_a_rad",
    "theta_a_deg",
    "p_w",
    "sigma2_w",
    "alpha",
    "bandwidth_hz",
}
_KNOWN_KEYS = _INT_KEYS | _FLOAT_KEYS
_REQUIRED_KEYS = ("m", "n", "f_c_hz", "x_e_m", "g_m", "p_w", "sigma2_w")


class CliError(Exception):
    """Anything that should terminate the command with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; 2 is reserved for
    # infeasible scenarios here, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def parse_config(path: str) -> dict:
    """Read a flat key = value config file.

    Lines starting with '#' (or blank) are skipped; keys outside the
    documented set, duplicate keys, or unparseable values raise CliError
    with the offending line number.
    """
    values: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CliError(f"config line {lineno}: expected 'key = value'")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.split("#", 1)[0].strip()
        if key not in _KNOWN_KEYS:
            raise CliError(f"config line {lineno}: unknown key '{key}'")
        if key in values:
            raise CliError(f"config line {lineno}: duplicate key '{key}'")
        try:
            values[key] = int(text) if key in _INT_KEYS else float(text)
        except ValueError as exc:
            raise CliError(
                f"config line {lineno}: cannot parse value for '{key}': {text!r}"
            ) from exc
    return values


def _resolve_config(cfg: dict, seed_flag: int | None) -> dict:
    """Validate, fill defaults and settle the seed precedence
    (flag > config > SPWT_SEED > 0)."""
    for key in _REQUIRED_KEYS:
        if key not in cfg:
            raise CliError(f"config: missing required key '{key}'")
    if "theta_a_rad" in cfg and "theta_a_deg" in cfg:
        raise CliError("config: give theta_a_rad or theta_a_deg, not both")
    if "theta_a_rad" in cfg:
        theta = cfg["theta_a_rad"]
    elif "theta_a_deg" in cfg:
        theta = math.radians(cfg["theta_a_deg"])
    else:
        raise CliError("config: missing required key 'theta_a_rad'")

    if seed_flag is not None:
        seed = seed_flag
    elif "seed" in cfg:
        seed = cfg["seed"]
    elif os.environ.get("SPWT_SEED"):
        try:
            seed = int(os.environ["SPWT_SEED"])
        except ValueError as exc:
            raise CliError(
                f"SPWT_SEED is not an integer: {os.environ['SPWT_SEED']!r}"
            ) from exc
    else:
        seed = 0

    resolved = {
        "m": cfg["m"],
        "n": cfg["n"],
        "f_c_hz": cfg["f_c_hz"],
        "x_e_m": cfg["x_e_m"],
        "g_m": cfg["g_m"],
        "theta_a_rad": theta,
        "p_w": cfg["p_w"],
        "sigma2_w": cfg["sigma2_w"],
        "alpha": cfg.get("alpha", 1.0),
        "bandwidth_hz": cfg.get("bandwidth_hz", 5.0e6),
        "seed": seed,
    }
    if resolved["m"] < 1 or resolved["n"] < 1:
        raise CliError("config: m and n must be at least 1")
    for key in ("f_c_hz", "x_e_m", "g_m", "p_w", "sigma2_w"):
        if resolved[key] <= 0:
            raise CliError(f"config: '{key}' must be positive")
    if not 0.0 <= resolved["alpha"] <= 1.0:
        raise CliError("config: 'alpha' must lie in [0, 1]")
    return resolved


def _scenario(resolved: dict) -> ScenarioConfig:
    return ScenarioConfig(
        array=ArrayGeometry(resolved["m"], resolved["n"], resolved["f_c_hz"]),
        bob=Position3D(0.0, 0.0, 0.0),
        eve=Position3D(resolved["x_e_m"], 0.0, 0.0),
        uav_height_m=resolved["g_m"],
        yaw=resolved["theta_a_rad"],
        power=PowerConfig(
            resolved["p_w"],
            resolved["alpha"],
            resolved["sigma2_w"],
            resolved["sigma2_w"],
        ),
        bandwidth_hz=resolved["bandwidth_hz"],
        seed=resolved["seed"],
    )


def _fmt(v: float) -> str:
    return format(float(v), ".12g")


def _parse_grid(text: str, what: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError(f"--grid for {what} must have three ':'-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise CliError(f"--grid: cannot parse {text!r}") from exc


def _sweep_grid(text: str | None, kind: str) -> list | None:
    """start:step:stop, inclusive of stop when it lands on the step."""
    if text is None:
        return None
    start, step, stop = _parse_grid(text, "sweep")
    if step <= 0 or stop < start:
        raise CliError("--grid: need step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    grid = [start + i * step for i in range(count)]
    if kind == "alpha":
        if any(v < -1e-12 or v > 1.0 + 1e-12 for v in grid):
            raise CliError("--grid: alpha values must lie in [0, 1]")
        grid = [min(max(v, 0.0), 1.0) for v in grid]
    return grid


def _write_outputs(out_dir: str, files: dict) -> list[str]:
    """Write all files or none: on any failure, partial outputs are removed."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    try:
        for name, text in files.items():
            path = os.path.join(out_dir, name)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            written.append(path)
    except OSError:
        for path in written:
            try:
                os.unlink(path)
            except OSError:
                pass
        raise
    return written


def _manifest(command: str, resolved: dict) -> str:
    data = {
        "command": command,
        "tool_version": __version__,
        "seed": resolved["seed"],
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    data.update({f"config_{k}": v for k, v in resolved.items()})
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_place(args) -> int:
    resolved = _resolve_config(parse_config(args.config), args.seed)
    scenario = _scenario(resolved)
    schemes = ("azimuth", "pitch") if args.scheme == "both" else (args.scheme,)
    solutions = []
    problems = []
    for scheme in schemes:
        try:
            if scheme == "azimuth":
                solutions.extend(solve_azimuth_scheme(scenario))
            else:
                for side in ("left", "right"):
                    solutions.append(solve_pitch_scheme(scenario, side=side))
        except (InfeasibleGeometry, InvalidIndex, InvalidYaw) as exc:
            problems.append(f"{scheme}: {exc}")
    for line in problems:
        print(f"infeasible: {line}", file=sys.stderr)
    if not solutions:
        return 2
    print(f"solutions: {len(solutions)}")
    for s in solutions:
        index = s.index_used.k if s.scheme == "azimuth" else s.index_used.l
        print(
            f"scheme={s.scheme} branch={s.branch} factor={s.factor_used} "
            f"index={index} x_m={_fmt(s.position.x)} y_m={_fmt(s.position.y)} "
            f"z_m={_fmt(s.position.z)} null_residual={s.null_residual:.3e} "
            f"sr_bits_hz={_fmt(s.sr_at_solution)}"
        )
    return 0


def cmd_sweep(args) -> int:
    resolved = _resolve_config(parse_config(args.config), args.seed)
    scenario = _scenario(resolved)
    grid = _sweep_grid(args.grid, args.kind)
    if args.kind == "snr":
        result = sweep_snr(scenario, scheme=args.scheme, snr_db_grid=grid)
        header = "snr_db,sr_proposed,sr_theory,sr_rand1,sr_rand2,sr_rand3"
        x_label = "SNR (dB)"
    else:
        result = sweep_alpha(scenario, alpha_grid=grid, scheme=args.scheme)
        header = "alpha,sr_proposed,sr_theory,sr_rand1,sr_rand2,sr_rand3"
        x_label = "alpha"
    columns = [result.x_axis] + [result.series[k] for k in
                                 ("proposed", "theory", "rand1", "rand2", "rand3")]
    csv_text = _csv(header, zip(*columns))
    svg_text = render_line_chart(
        result.x_axis,
        result.series,
        x_label,
        "secrecy rate (bits/s/Hz)",
        title=f"{args.scheme} scheme",
    )
    written = _write_outputs(
        args.out,
        {
            f"sweep_{args.kind}.csv": csv_text,
            f"sweep_{args.kind}.svg": svg_text,
            "manifest.json": _manifest(f"sweep {args.kind}", resolved),
        },
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_pattern(args) -> int:
    resolved = _resolve_config(parse_config(args.config), args.seed)
    scenario = _scenario(resolved)
    lo, hi, step = (
        _parse_grid(args.grid, "pattern") if args.grid else (-1000.0, 1000.0, 5.0)
    )
    if step <= 0 or hi <= lo:
        raise CliError("--grid: need max > min and step > 0")
    import numpy as np

    axis = np.arange(lo, hi + step / 2.0, step)
    values = correlation_map(scenario, axis, axis)
    overlays = []
    try:
        overlays.extend(
            (s.position.x, s.position.y) for s in solve_azimuth_scheme(scenario)
        )
    except (InfeasibleGeometry, InvalidIndex, InvalidYaw):
        pass
    for side in ("left", "right"):
        try:
            s = solve_pitch_scheme(scenario, side=side)
            overlays.append((s.position.x, s.position.y))
        except (InfeasibleGeometry, InvalidIndex, InvalidYaw):
            pass
    rows = (
        (float(x), float(y), float(values[i, j]))
        for i, y in enumerate(axis)
        for j, x in enumerate(axis)
    )
    written = _write_outputs(
        args.out,
        {
            "pattern.csv": _csv("x_m,y_m,residual", rows),
            "pattern.svg": render_heatmap(axis, axis, values, overlays),
            "manifest.json": _manifest("pattern", resolved),
        },
    )
    for path in written:
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="spwt",
        description=(
            "Place an airborne planar array on nulls of the receiver/"
            "eavesdropper steering-vector correlation and study the "
            "resulting secrecy rate."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="key = value config file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the run seed (highest precedence)")
        p.add_argument("--out", default=".", help="output directory")

    p_place = sub.add_parser("place", help="solve for nulling placements")
    common(p_place)
    p_place.add_argument(
        "--scheme", choices=("azimuth", "pitch", "both"), default="both"
    )
    p_place.set_defaults(func=cmd_place)

    p_sweep = sub.add_parser("sweep", help="secrecy-rate sweep to CSV/SVG")
    common(p_sweep)
    p_sweep.add_argument("--scheme", choices=("azimuth", "pitch"), default="azimuth")
    p_sweep.add_argument("--kind", choices=("snr", "alpha"), default="snr")
    p_sweep.add_argument(
        "--grid", default=None,
        help="sweep grid as start:step:stop (default snr 0:2:20, alpha 0:0.1:1)",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_pattern = sub.add_parser(
        "pattern", help="correlation magnitude over a position box"
    )
    common(p_pattern)
    p_pattern.add_argument(
        "--grid", default=None,
        help="square box as min:max:step in meters (default -1000:1000:5); "
        "use --grid=-100:100:5 when the minimum is negative",
    )
    p_pattern.set_defaults(func=cmd_pattern)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InfeasibleGeometry, InvalidIndex, InvalidYaw) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
