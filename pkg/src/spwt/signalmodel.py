"""Transmit construction and link metrics.

The confidential stream is beamformed with the receiver's own steering
vector, and artificial noise is projected onto the orthogonal complement of
that vector.  The receiver therefore sees no noise leakage and its SINR is
alpha*P/sigma_b^2 at every transmitter position; the eavesdropper's SINR is
governed entirely by the correlation rho between the two steering vectors.
Secrecy rate is log2(1+SINR_b) - log2(1+SINR_e), clipped at zero.
"""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .arrays import cross_correlation, steering_vector
from .errors import InvalidCorrelation
from .geometry import Position3D, canonicalize_frame, look_angles

if TYPE_CHECKING:  # pragma: no cover
    from .scenario import ScenarioConfig


@dataclass(frozen=True)
class PowerConfig:
    """Power budget: ``alpha`` of ``total_power_w`` goes to the confidential
    signal, the rest to artificial noise; per-receiver noise floors in W."""

    total_power_w: float
    alpha: float
    noise_b_w: float
    noise_e_w: float

    def __post_init__(self) -> None:
        if self.total_power_w <= 0.0:
            raise ValueError("total power must be positive")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.noise_b_w <= 0.0 or self.noise_e_w <= 0.0:
            raise ValueError("noise powers must be positive")


@dataclass(frozen=True)
class BeamformerPair:
    """Confidential beam ``v`` plus the noise projector I - v v^H."""

    v: np.ndarray
    projector: np.ndarray


@dataclass(frozen=True)
class LinkMetrics:
    sinr_b: float
    sinr_e: float
    secrecy_rate_bps_hz: float


def build_beamformers(h_b: np.ndarray) -> BeamformerPair:
    """Beam toward the receiver and the projector annihilating it.

    The projector is Hermitian and idempotent, and maps the receiver's
    steering vector to zero, so projected noise never reaches the receiver.
    """
    eye = np.eye(h_b.size, dtype=complex)
    return BeamformerPair(
        v=h_b.copy(), projector=eye - np.outer(h_b, h_b.conj())
    )


def sinr_bob(power: PowerConfig) -> float:
    """Receiver SINR: alpha*P/sigma_b^2, independent of placement."""
    return power.alpha * power.total_power_w / power.noise_b_w


def sinr_eve_analytic(rho: complex, power: PowerConfig) -> float:
    """Eavesdropper SINR from the steering-vector correlation ``rho``.

    The expected artificial-noise power reaching the eavesdropper is
    1 - |rho|^2 (norm of its channel after projection), giving

        alpha*P*|rho|^2 / ((1-alpha)*P*(1-|rho|^2) + sigma_e^2).
    """
    mag2 = abs(rho) ** 2
    if mag2 > 1.0 + 2e-9:
        raise InvalidCorrelation(f"|rho| = {math.sqrt(mag2):.6g} exceeds 1")
    mag2 = min(mag2, 1.0)
    p = power.total_power_w
    signal = power.alpha * p * mag2
    interference = (1.0 - power.alpha) * p * (1.0 - mag2)
    return signal / (interference + power.noise_e_w)


def sinr_eve_monte_carlo(
    h_e: np.ndarray,
    pair: BeamformerPair,
    power: PowerConfig,
    n_samples: int,
    seed: int,
) -> float:
    """Ergodic eavesdropper SINR over random noise realizations.

    Draws ``n_samples`` standard complex Gaussian vectors z (independent real
    and imaginary parts scaled by 1/sqrt(2)), projects them, and forms the
    ratio of the deterministic received signal power to the sample-mean
    interference power plus noise floor.  Averaging the interference before
    dividing estimates the ergodic SINR; the per-sample ratio has a heavy
    upper tail and converges to a larger, biased value.

    Deterministic for a fixed seed: same seed and n_samples give the same
    float exactly.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    size = h_e.size
    z = rng.standard_normal((n_samples, size)) + 1j * rng.standard_normal(
        (n_samples, size)
    )
    z *= 1.0 / math.sqrt(2.0)
    # h_e^H (P z) = (P h_e)^H z since the projector is Hermitian.
    leak = pair.projector @ h_e
    an_power = np.abs(z @ leak.conj()) ** 2
    p = power.total_power_w
    signal = power.alpha * p * abs(np.vdot(h_e, pair.v)) ** 2
    interference = (1.0 - power.alpha) * p * float(an_power.mean())
    return signal / (interference + power.noise_e_w)


def secrecy_rate(sinr_b: float, sinr_e: float) -> float:
    """max(0, log2(1+sinr_b) - log2(1+sinr_e)) in bits/s/Hz."""
    return max(0.0, math.log2(1.0 + sinr_b) - math.log2(1.0 + sinr_e))


def evaluate_link(scenario: "ScenarioConfig", uav: Position3D) -> LinkMetrics:
    """Link metrics for a transmitter at ``uav`` under ``scenario``.

    Composes geometry, steering vectors and the analytic SINRs.  The
    receiver-side SINR uses the exact closed form alpha*P/sigma_b^2; the
    eavesdropper SINR uses the correlation computed from explicit steering
    vectors.
    """
    tf = canonicalize_frame(scenario.bob, scenario.eve)
    uav_c = tf.to_canonical(uav)
    ang_b = look_angles(uav_c, Position3D(0.0, 0.0, 0.0), scenario.yaw)
    ang_e = look_angles(uav_c, tf.to_canonical(scenario.eve), scenario.yaw)
    h_b = steering_vector(scenario.array, ang_b.azimuth_rel, ang_b.pitch)
    h_e = steering_vector(scenario.array, ang_e.azimuth_rel, ang_e.pitch)
    rho = cross_correlation(h_e, h_b)
    s_b = sinr_bob(scenario.power)
    s_e = sinr_eve_analytic(rho, scenario.power)
    return LinkMetrics(
        sinr_b=s_b, sinr_e=s_e, secrecy_rate_bps_hz=secrecy_rate(s_b, s_e)
    )
