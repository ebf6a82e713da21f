"""Secrecy-rate studies: SR versus SNR and SR versus power split.

Each sweep compares the solver's placement against seeded uniform-random
deployments and against the interception-free bound log2(1 + SNR).  At a
true null the proposed curve meets the bound exactly, so the comparisons
isolate what placement alone buys.
"""

import hashlib
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InfeasibleGeometry
from .geometry import Position3D
from .placement import NullIndex, PlacementSolution, solve_azimuth_scheme, solve_pitch_scheme
from .scenario import ScenarioConfig
from .signalmodel import PowerConfig, evaluate_link

DEFAULT_SNR_GRID_DB = tuple(range(0, 21, 2))
DEFAULT_ALPHA_GRID = tuple(i / 10.0 for i in range(11))
BASELINE_BOUNDS = ((-1000.0, 1000.0), (-1000.0, 1000.0))

# Baselines closer than this (meters, horizontal) to a ground node are
# redrawn; directly overhead the angles degenerate.
_EXCLUSION_M = 1.0


@dataclass
class SweepResult:
    """One sweep: shared x axis, named SR series, and run metadata
    sufficient to reproduce the numbers (seed, baseline positions, scheme,
    a content-derived run id)."""

    x_axis: list
    series: dict
    metadata: dict


def random_baseline_positions(
    n: int,
    bounds: tuple = BASELINE_BOUNDS,
    z: float = 200.0,
    seed: int = 0,
    exclude: tuple = (),
) -> list[Position3D]:
    """Seeded uniform draws over a ground box at fixed altitude.

    Draws within 1 m horizontal of any position in ``exclude`` are rejected
    and redrawn, so the returned deployments always have well-defined look
    angles toward those nodes.
    """
    if n < 1:
        raise ValueError("need at least one position")
    (x_lo, x_hi), (y_lo, y_hi) = bounds
    if not (x_hi > x_lo and y_hi > y_lo):
        raise ValueError("bounds box is degenerate")
    rng = np.random.default_rng(seed)
    out: list[Position3D] = []
    while len(out) < n:
        x = float(rng.uniform(x_lo, x_hi))
        y = float(rng.uniform(y_lo, y_hi))
        if any(math.hypot(x - p.x, y - p.y) < _EXCLUSION_M for p in exclude):
            continue
        out.append(Position3D(x, y, z))
    return out


def _best_placement(scenario: ScenarioConfig, scheme: str) -> PlacementSolution:
    """Deterministic pick among a scheme's solutions: highest SR first, then
    smallest residual, then branch/factor order."""
    if scheme == "azimuth":
        solutions = solve_azimuth_scheme(scenario, NullIndex())
    elif scheme == "pitch":
        solutions = []
        errors = []
        for side in ("left", "right"):
            try:
                solutions.append(solve_pitch_scheme(scenario, NullIndex(), side))
            except InfeasibleGeometry as exc:
                errors.append(str(exc))
        if not solutions:
            raise InfeasibleGeometry("; ".join(errors))
    else:
        raise ValueError("scheme must be 'azimuth' or 'pitch'")
    if not solutions:
        raise InfeasibleGeometry(
            "every candidate placement failed verification"
        )
    return sorted(
        solutions,
        key=lambda s: (-s.sr_at_solution, s.null_residual, s.branch, s.factor_used),
    )[0]


def _run_id(scenario: ScenarioConfig, kind: str, scheme: str) -> str:
    text = f"{scenario!r}|{kind}|{scheme}"
    return hashlib.sha1(text.encode()).hexdigest()[:12]


def _scenario_echo(scenario: ScenarioConfig) -> dict:
    return {
        "m": scenario.array.m_rows,
        "n": scenario.array.n_cols,
        "f_c_hz": scenario.array.carrier_hz,
        "spacing_m": scenario.array.spacing_m,
        "x_e_m": math.hypot(
            scenario.eve.x - scenario.bob.x, scenario.eve.y - scenario.bob.y
        ),
        "g_m": scenario.uav_height_m,
        "theta_a_rad": scenario.yaw,
        "p_w": scenario.power.total_power_w,
        "alpha": scenario.power.alpha,
        "bandwidth_hz": scenario.bandwidth_hz,
        "seed": scenario.seed,
    }


def sweep_snr(
    scenario: ScenarioConfig,
    scheme: str = "azimuth",
    snr_db_grid=None,
    n_random_baselines: int = 3,
) -> SweepResult:
    """SR versus SNR for the solved placement, the bound, and random
    deployments.

    SNR is 10*log10(P/sigma^2) with equal noise floors at both nodes; the
    noise floor is recomputed from the grid point, the total power stays at
    the scenario's value.  The proposed and baseline curves both transmit
    with the full power on the signal (alpha = 1) so the comparison is
    purely about placement; baseline positions are drawn once per run from
    the scenario seed and held across the sweep.
    """
    grid = list(DEFAULT_SNR_GRID_DB if snr_db_grid is None else snr_db_grid)
    if not grid:
        raise ValueError("SNR grid is empty")
    best = _best_placement(scenario, scheme)
    baselines = random_baseline_positions(
        n_random_baselines,
        BASELINE_BOUNDS,
        z=scenario.uav_height_m,
        seed=scenario.seed,
        exclude=(scenario.bob, scenario.eve),
    )
    p = scenario.power.total_power_w
    proposed, theory = [], []
    rand: list[list[float]] = [[] for _ in baselines]
    for snr_db in grid:
        snr_lin = 10.0 ** (snr_db / 10.0)
        power = PowerConfig(p, 1.0, p / snr_lin, p / snr_lin)
        point = replace(scenario, power=power)
        proposed.append(evaluate_link(point, best.position).secrecy_rate_bps_hz)
        theory.append(math.log2(1.0 + snr_lin))
        for series, pos in zip(rand, baselines):
            series.append(evaluate_link(point, pos).secrecy_rate_bps_hz)
    series = {"proposed": proposed, "theory": theory}
    for i, values in enumerate(rand, start=1):
        series[f"rand{i}"] = values
    return SweepResult(
        x_axis=[float(v) for v in grid],
        series=series,
        metadata={
            "kind": "snr",
            "scheme": scheme,
            "run_id": _run_id(scenario, "snr", scheme),
            "placement": (best.position.x, best.position.y, best.position.z),
            "baseline_positions": [(b.x, b.y, b.z) for b in baselines],
            **_scenario_echo(scenario),
        },
    )


def sweep_alpha(
    scenario: ScenarioConfig,
    snr_db: float = 15.0,
    alpha_grid=None,
    scheme: str = "azimuth",
    n_random_baselines: int = 3,
) -> SweepResult:
    """SR versus the signal/noise power split at a fixed SNR.

    The proposed placement never splits power (alpha held at 1): with the
    correlation nulled, artificial noise buys nothing and shaving signal
    power only lowers the receiver's SINR.  Baselines split power per the
    swept alpha, trading signal for jamming.
    """
    grid = list(DEFAULT_ALPHA_GRID if alpha_grid is None else alpha_grid)
    if not grid:
        raise ValueError("alpha grid is empty")
    if any(a < 0.0 or a > 1.0 for a in grid):
        raise ValueError("alpha grid must lie in [0, 1]")
    best = _best_placement(scenario, scheme)
    baselines = random_baseline_positions(
        n_random_baselines,
        BASELINE_BOUNDS,
        z=scenario.uav_height_m,
        seed=scenario.seed,
        exclude=(scenario.bob, scenario.eve),
    )
    p = scenario.power.total_power_w
    snr_lin = 10.0 ** (snr_db / 10.0)
    sigma2 = p / snr_lin
    bound = math.log2(1.0 + snr_lin)
    proposed, theory = [], []
    rand: list[list[float]] = [[] for _ in baselines]
    for alpha in grid:
        full_power = PowerConfig(p, 1.0, sigma2, sigma2)
        proposed.append(
            evaluate_link(
                replace(scenario, power=full_power), best.position
            ).secrecy_rate_bps_hz
        )
        theory.append(bound)
        split_power = PowerConfig(p, alpha, sigma2, sigma2)
        point = replace(scenario, power=split_power)
        for series, pos in zip(rand, baselines):
            series.append(evaluate_link(point, pos).secrecy_rate_bps_hz)
    series = {"proposed": proposed, "theory": theory}
    for i, values in enumerate(rand, start=1):
        series[f"rand{i}"] = values
    return SweepResult(
        x_axis=[float(a) for a in grid],
        series=series,
        metadata={
            "kind": "alpha",
            "scheme": scheme,
            "snr_db": snr_db,
            "run_id": _run_id(scenario, "alpha", scheme),
            "placement": (best.position.x, best.position.y, best.position.z),
            "baseline_positions": [(b.x, b.y, b.z) for b in baselines],
            **_scenario_echo(scenario),
        },
    )
