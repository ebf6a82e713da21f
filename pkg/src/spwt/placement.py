"""Transmitter placement on nulls of the receiver/eavesdropper correlation.

Two placement loci make one factor of the correlation a pure geometric sum
whose zeros are known:

* bisector scheme ("azimuth"): on the perpendicular bisector of the ground
  segment (x = x_e/2) the two pitches coincide, and the null condition
  yields the lateral offset in closed form;
* extension scheme ("pitch"): on the extension of the ground segment (y = 0,
  outside [0, x_e]) the two yaw-relative azimuths coincide, and the null
  condition becomes a scalar equation in the pitch-cosine gap, solved by
  bisection on a strictly monotone function.

Every candidate position is certified by recomputing the correlation from
scratch; candidates that fail are discarded with a warning rather than
returned.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .arrays import steering_vector
from .errors import InfeasibleGeometry, InvalidIndex, InvalidYaw
from .geometry import Position3D, canonicalize_frame, look_angles
from .scenario import ScenarioConfig
from .signalmodel import evaluate_link

HALF_PI = math.pi / 2.0

# Yaw closer than this to a multiple of pi/2 kills one direction cosine and
# with it both null equations.
_YAW_EPS = 1e-9

# Candidates whose recomputed correlation exceeds this are discarded.
_NULL_TOL = 1e-8

# Positions closer than this (meters) are considered the same solution.
_DEDUP_M = 1e-6

_BISECT_LO = 1e-6
_BISECT_HI = 1e6
_BISECT_SCAN = 64
_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 200


@dataclass(frozen=True)
class NullIndex:
    """Which zero of each geometric-sum factor to target.

    ``k`` selects the row-axis zero used by the bisector scheme, ``l`` the
    one used by the extension scheme.  A value that is a multiple of the
    matching array dimension lands on the sum's maximum instead of a zero
    and is rejected.
    """

    k: int = 1
    l: int = 1


@dataclass(frozen=True)
class PlacementSolution:
    position: Position3D
    scheme: str
    branch: str
    index_used: NullIndex
    factor_used: str
    null_residual: float
    sr_at_solution: float


def _check_yaw(yaw: float) -> None:
    r = yaw % HALF_PI
    if min(r, HALF_PI - r) < _YAW_EPS:
        raise InvalidYaw(
            "yaw is a multiple of pi/2; rotate the heading off the ground "
            "axis to keep both direction cosines nonzero"
        )


def _check_index(value: int, m_rows: int, n_cols: int) -> None:
    if value < 1:
        raise InvalidIndex("null index must be a positive integer")
    if value % m_rows == 0 or value % n_cols == 0:
        raise InvalidIndex(
            f"index {value} is a multiple of an array dimension "
            f"({m_rows}x{n_cols}); that factor has no zero there"
        )


def _null_residual(scenario: ScenarioConfig, position: Position3D) -> float:
    """|h_e^H h_b| recomputed from scratch at ``position``.

    Deliberately retraces the full pipeline (frame transform, look angles,
    explicit steering vectors, inner product) so solver candidates are
    certified independently of the closed-form algebra that produced them.
    """
    tf = canonicalize_frame(scenario.bob, scenario.eve)
    uav_c = tf.to_canonical(position)
    ang_b = look_angles(uav_c, Position3D(0.0, 0.0, 0.0), scenario.yaw)
    ang_e = look_angles(uav_c, tf.to_canonical(scenario.eve), scenario.yaw)
    h_b = steering_vector(scenario.array, ang_b.azimuth_rel, ang_b.pitch)
    h_e = steering_vector(scenario.array, ang_e.azimuth_rel, ang_e.pitch)
    return float(abs(np.vdot(h_e, h_b)))


def verify_null(solution: PlacementSolution, scenario: ScenarioConfig) -> float:
    """Recompute the correlation magnitude at a solution's position."""
    return _null_residual(scenario, solution.position)


def solve_azimuth_scheme(
    scenario: ScenarioConfig, index: NullIndex | None = None
) -> list[PlacementSolution]:
    """All bisector-scheme placements nulling the correlation.

    On x = x_e/2 the pitch cosines agree, and the row factor vanishes when

        y > 0 with  4*k^2*(y^2 + g^2) = (M^2*cos(yaw)^2 - k^2) * x_e^2,

    the column factor when M*cos is replaced by N*sin.  Up to four
    candidates arise (two equations, two signs); duplicates within 1e-6 m
    are merged and every survivor is certified against the recomputed
    correlation.

    Returns
    -------
    list of PlacementSolution
        In deterministic order: row factor before column, + branch before -.

    Raises
    ------
    InfeasibleGeometry
        If both radicands are negative (lower the altitude or rotate the
        yaw toward the ground axis).
    InvalidYaw, InvalidIndex
        For a quarter-turn yaw or an index with no matching zero.
    """
    index = index if index is not None else NullIndex()
    geom = scenario.array
    _check_index(index.k, geom.m_rows, geom.n_cols)
    _check_yaw(scenario.yaw)
    k = float(index.k)
    tf = canonicalize_frame(scenario.bob, scenario.eve)
    x_e = tf.to_canonical(scenario.eve).x
    g = scenario.uav_height_m
    half = x_e / 2.0

    candidates: list[tuple[str, str, float]] = []
    radicands: list[float] = []
    for factor, count, trig in (
        ("row", geom.m_rows, math.cos(scenario.yaw)),
        ("column", geom.n_cols, math.sin(scenario.yaw)),
    ):
        y_sq = ((count * trig * x_e) ** 2 - (k * x_e) ** 2 - (2.0 * k * g) ** 2) / (
            4.0 * k * k
        )
        radicands.append(y_sq)
        if y_sq < 0.0:
            continue
        y = math.sqrt(y_sq)
        if y > 0.0:
            candidates.append((factor, "+", y))
            candidates.append((factor, "-", -y))
        else:
            candidates.append((factor, "+", 0.0))

    if not candidates:
        raise InfeasibleGeometry(
            f"no real lateral offset on the bisector (largest radicand "
            f"{max(radicands):.6g} m^2); lower the altitude or rotate the "
            f"yaw closer to the ground axis"
        )

    solutions: list[PlacementSolution] = []
    accepted_y: list[float] = []
    for factor, branch, y in candidates:
        if any(abs(y - prev) < _DEDUP_M for prev in accepted_y):
            continue
        position = tf.from_canonical(Position3D(half, y, g))
        residual = _null_residual(scenario, position)
        if residual > _NULL_TOL:
            warnings.warn(
                f"bisector candidate y={y:.6f} failed verification "
                f"(|rho| = {residual:.3e}); discarded",
                stacklevel=2,
            )
            continue
        accepted_y.append(y)
        metrics = evaluate_link(scenario, position)
        solutions.append(
            PlacementSolution(
                position=position,
                scheme="azimuth",
                branch=branch,
                index_used=index,
                factor_used=factor,
                null_residual=residual,
                sr_at_solution=metrics.secrecy_rate_bps_hz,
            )
        )
    return solutions


def _pitch_gap(x_e: float, g: float, t: float) -> float:
    """cos(pitch) gap between the far and near ground node for a transmitter
    ``t`` meters beyond the segment end, altitude ``g``.

    Strictly decreasing in ``t``: from x_e/sqrt(x_e^2+g^2) at t -> 0 down to
    0 as t -> inf, which gives the bisection a single root.
    """
    far = x_e + t
    return far / math.hypot(far, g) - t / math.hypot(t, g)


def solve_pitch_scheme(
    scenario: ScenarioConfig,
    index: NullIndex | None = None,
    side: str = "left",
    factor: str | None = None,
) -> PlacementSolution:
    """Extension-scheme placement on one side of the ground segment.

    With y = 0 and the transmitter beyond the segment, both nodes share a
    yaw-relative azimuth, and the row factor vanishes when the pitch-cosine
    gap satisfies

        cos(pitch_e) - cos(pitch_b) = +/- 2*l / (M * cos(az_rel))

    (column factor: N*sin instead of M*cos).  The sign of the left side is
    fixed by the chosen ``side``, so the branch is selected automatically;
    the magnitude equation is solved by bisection over the outward distance
    in [1e-6, 1e6] m after a 64-point logarithmic pre-scan, terminating when
    the equation residual drops to 1e-12 or after 200 iterations.

    Parameters
    ----------
    side : {"left", "right"}
        "left" places the transmitter at x < 0, "right" at x > x_e.
    factor : {"row", "column"}, optional
        Force one factor; by default the row factor is tried first and the
        column factor is the fallback.

    Raises
    ------
    InfeasibleGeometry
        If the required gap exceeds the attainable range on this side for
        every allowed factor.
    """
    index = index if index is not None else NullIndex()
    geom = scenario.array
    _check_index(index.l, geom.m_rows, geom.n_cols)
    _check_yaw(scenario.yaw)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    tf = canonicalize_frame(scenario.bob, scenario.eve)
    eve_c = tf.to_canonical(scenario.eve)
    x_e = eve_c.x
    g = scenario.uav_height_m

    # The yaw-relative azimuth toward the eavesdropper is constant along
    # each side; probe it 1 m beyond the segment end.
    probe_x = -1.0 if side == "left" else x_e + 1.0
    ang_e = look_angles(Position3D(probe_x, 0.0, g), eve_c, scenario.yaw)
    side_sign = 1.0 if side == "left" else -1.0
    gap_max = x_e / math.hypot(x_e, g)

    factors = (factor,) if factor is not None else ("row", "column")
    failure = "no factor attempted"
    for fac in factors:
        if fac == "row":
            count, trig = geom.m_rows, math.cos(ang_e.azimuth_rel)
        elif fac == "column":
            count, trig = geom.n_cols, math.sin(ang_e.azimuth_rel)
        else:
            raise ValueError("factor must be 'row' or 'column'")
        target = 2.0 * index.l / (count * abs(trig))
        if not target < gap_max:
            failure = (
                f"{fac} factor needs a pitch-cosine gap of {target:.6g}, above "
                f"the attainable {gap_max:.6g} on the {side} side"
            )
            continue

        t = _bisect_gap(x_e, g, target)
        x_a = -t if side == "left" else x_e + t
        position = tf.from_canonical(Position3D(x_a, 0.0, g))
        residual = _null_residual(scenario, position)
        if residual > _NULL_TOL:
            warnings.warn(
                f"extension candidate x={x_a:.6f} failed verification "
                f"(|rho| = {residual:.3e}); discarded",
                stacklevel=2,
            )
            failure = f"{fac} factor candidate failed verification"
            continue
        # Branch sign of +/- as it appears in the defining equation.
        branch = "+" if side_sign * target * trig > 0.0 else "-"
        metrics = evaluate_link(scenario, position)
        return PlacementSolution(
            position=position,
            scheme="pitch",
            branch=branch,
            index_used=index,
            factor_used=fac,
            null_residual=residual,
            sr_at_solution=metrics.secrecy_rate_bps_hz,
        )
    raise InfeasibleGeometry(
        f"extension scheme infeasible on the {side} side: {failure}; lower "
        f"the altitude, shrink the index, or use a larger array"
    )


def _bisect_gap(x_e: float, g: float, target: float) -> float:
    """Root of _pitch_gap(x_e, g, t) = target by pre-scan plus bisection."""
    grid = np.logspace(
        math.log10(_BISECT_LO), math.log10(_BISECT_HI), _BISECT_SCAN
    )
    lo = hi = None
    prev_t, prev_v = None, None
    for t in grid:
        v = _pitch_gap(x_e, g, float(t)) - target
        if v == 0.0:
            return float(t)
        if prev_v is not None and prev_v > 0.0 > v:
            lo, hi = prev_t, float(t)
            break
        prev_t, prev_v = float(t), v
    if lo is None:
        # The gap is monotone, so a missing sign change means the target is
        # outside the attainable range on the scan interval.
        raise InfeasibleGeometry(
            f"no bracketing interval for a pitch-cosine gap of {target:.6g}"
        )
    best_t, best_v = lo, abs(_pitch_gap(x_e, g, lo) - target)
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        v = _pitch_gap(x_e, g, mid) - target
        if abs(v) < best_v:
            best_t, best_v = mid, abs(v)
        if abs(v) <= _BISECT_TOL:
            return mid
        if v > 0.0:
            lo = mid
        else:
            hi = mid
    return best_t


def correlation_map(
    scenario: ScenarioConfig, xs: np.ndarray, ys: np.ndarray
) -> np.ndarray:
    """|h_e^H h_b| over a canonical-frame position grid, shape (len(ys), len(xs)).

    Evaluates the element-by-element double sum directly (no geometric
    closed form), vectorized over positions; this is the brute-force oracle
    behind :func:`grid_null_oracle` and the coverage-map command.
    """
    geom = scenario.array
    tf = canonicalize_frame(scenario.bob, scenario.eve)
    x_e = tf.to_canonical(scenario.eve).x
    g = scenario.uav_height_m
    coef = geom.phase_coef
    m = np.arange(geom.m_rows, dtype=float).reshape(1, -1, 1)
    n = np.arange(geom.n_cols, dtype=float).reshape(1, 1, -1)

    gx, gy = np.meshgrid(np.asarray(xs, float), np.asarray(ys, float))
    flat_x = gx.ravel()
    flat_y = gy.ravel()
    out = np.empty(flat_x.size)
    chunk = max(1, 2_000_000 // geom.size)
    for start in range(0, flat_x.size, chunk):
        sl = slice(start, start + chunk)
        x = flat_x[sl][:, None, None]
        y = flat_y[sl][:, None, None]
        az_b = np.arctan2(y, x) - scenario.yaw
        az_e = np.arctan2(y, x - x_e) - scenario.yaw
        # cos(pitch) = horizontal range / slant range; at a point directly
        # over a node this evaluates to the continuous limit 0.
        cp_b = np.hypot(x, y)
        cp_b = cp_b / np.hypot(cp_b, g)
        cp_e = np.hypot(x - x_e, y)
        cp_e = cp_e / np.hypot(cp_e, g)
        psi_b = -coef * cp_b * (m * np.cos(az_b) + n * np.sin(az_b))
        psi_e = -coef * cp_e * (m * np.cos(az_e) + n * np.sin(az_e))
        out[sl] = np.abs(np.exp(1j * (psi_b - psi_e)).sum(axis=(1, 2))) / geom.size
    return out.reshape(gy.shape)


def grid_null_oracle(
    scenario: ScenarioConfig,
    locus: str,
    resolution: float,
    bounds: tuple | None = None,
) -> list[tuple[Position3D, float]]:
    """Brute-force search for correlation minima over candidate positions.

    Parameters
    ----------
    locus : {"midline", "axis", "box"}
        "midline" scans the perpendicular bisector (x = x_e/2), "axis" the
        ground-segment line (y = 0), "box" a full 2D rectangle.
    resolution : float
        Grid step in meters.
    bounds : tuple, optional
        (lo, hi) for the line loci, ((x_lo, x_hi), (y_lo, y_hi)) for "box".
        Defaults: +/-2000 m for lines, 1000 m square for the box.

    Returns
    -------
    list of (Position3D, float)
        Grid-local minima with residual below 1e-2, best first, positions
        mapped back to the caller's frame.
    """
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    tf = canonicalize_frame(scenario.bob, scenario.eve)
    x_e = tf.to_canonical(scenario.eve).x
    g = scenario.uav_height_m

    def _steps(lo: float, hi: float) -> np.ndarray:
        return np.arange(lo, hi + resolution / 2.0, resolution)

    if locus == "midline":
        lo, hi = bounds if bounds is not None else (-2000.0, 2000.0)
        ys = _steps(lo, hi)
        res = correlation_map(scenario, np.array([x_e / 2.0]), ys)[:, 0]
        keep = _local_minima_1d(res)
        points = [(x_e / 2.0, float(ys[i]), float(res[i])) for i in keep]
    elif locus == "axis":
        lo, hi = bounds if bounds is not None else (-2000.0, 2000.0)
        xs = _steps(lo, hi)
        res = correlation_map(scenario, xs, np.array([0.0]))[0, :]
        keep = _local_minima_1d(res)
        points = [(float(xs[i]), 0.0, float(res[i])) for i in keep]
    elif locus == "box":
        if bounds is not None:
            (x_lo, x_hi), (y_lo, y_hi) = bounds
        else:
            (x_lo, x_hi), (y_lo, y_hi) = (-1000.0, 1000.0), (-1000.0, 1000.0)
        xs = _steps(x_lo, x_hi)
        ys = _steps(y_lo, y_hi)
        res = correlation_map(scenario, xs, ys)
        points = [
            (float(xs[j]), float(ys[i]), float(res[i, j]))
            for i, j in _local_minima_2d(res)
        ]
    else:
        raise ValueError("locus must be 'midline', 'axis' or 'box'")

    points.sort(key=lambda p: p[2])
    return [
        (tf.from_canonical(Position3D(x, y, g)), r) for x, y, r in points
    ]


_MINIMUM_CUTOFF = 1e-2


def _local_minima_1d(values: np.ndarray) -> list[int]:
    if values.size < 3:
        return []
    interior = (
        (values[1:-1] < values[:-2])
        & (values[1:-1] < values[2:])
        & (values[1:-1] < _MINIMUM_CUTOFF)
    )
    return [int(i) + 1 for i in np.flatnonzero(interior)]


def _local_minima_2d(values: np.ndarray) -> list[tuple[int, int]]:
    if values.shape[0] < 3 or values.shape[1] < 3:
        return []
    center = values[1:-1, 1:-1]
    mask = center < _MINIMUM_CUTOFF
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            neighbor = values[1 + di : values.shape[0] - 1 + di,
                              1 + dj : values.shape[1] - 1 + dj]
            mask &= center < neighbor
    return [(int(i) + 1, int(j) + 1) for i, j in np.argwhere(mask)]
