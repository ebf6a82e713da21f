"""Secure directional transmission from an airborne planar array.

The package models a rectangular antenna array whose confidential beam
targets one ground receiver while artificial noise fills the complement,
then solves for transmitter positions that drive the receiver/eavesdropper
steering-vector correlation to zero, which pins the eavesdropper's SINR at
zero and lets the secrecy rate reach the interception-free bound without
spending power on noise.
"""

__version__ = "0.1.0"

from .arrays import (
    ArrayGeometry,
    cross_correlation,
    cross_correlation_closed_form,
    steering_vector,
)
from .errors import (
    DegenerateGeometry,
    DimensionMismatch,
    InfeasibleGeometry,
    InvalidCorrelation,
    InvalidIndex,
    InvalidYaw,
    SpwtError,
)
from .experiments import (
    SweepResult,
    random_baseline_positions,
    sweep_alpha,
    sweep_snr,
)
from .geometry import (
    FrameTransform,
    LookAngles,
    Position3D,
    canonicalize_frame,
    look_angles,
    midpoint_symmetry_check,
)
from .placement import (
    NullIndex,
    PlacementSolution,
    correlation_map,
    grid_null_oracle,
    solve_azimuth_scheme,
    solve_pitch_scheme,
    verify_null,
)
from .scenario import ScenarioConfig
from .signalmodel import (
    BeamformerPair,
    LinkMetrics,
    PowerConfig,
    build_beamformers,
    evaluate_link,
    secrecy_rate,
    sinr_bob,
    sinr_eve_analytic,
    sinr_eve_monte_carlo,
)

__all__ = [
    "__version__",
    "ArrayGeometry",
    "BeamformerPair",
    "DegenerateGeometry",
    "DimensionMismatch",
    "FrameTransform",
    "InfeasibleGeometry",
    "InvalidCorrelation",
    "InvalidIndex",
    "InvalidYaw",
    "LinkMetrics",
    "LookAngles",
    "NullIndex",
    "PlacementSolution",
    "Position3D",
    "PowerConfig",
    "ScenarioConfig",
    "SpwtError",
    "SweepResult",
    "build_beamformers",
    "canonicalize_frame",
    "correlation_map",
    "cross_correlation",
    "cross_correlation_closed_form",
    "evaluate_link",
    "grid_null_oracle",
    "look_angles",
    "midpoint_symmetry_check",
    "random_baseline_positions",
    "secrecy_rate",
    "sinr_bob",
    "sinr_eve_analytic",
    "sinr_eve_monte_carlo",
    "solve_azimuth_scheme",
    "solve_pitch_scheme",
    "steering_vector",
    "sweep_alpha",
    "sweep_snr",
    "verify_null",
]
