import math

import pytest

from spwt import ArrayGeometry, PowerConfig, Position3D, ScenarioConfig

# sigma^2 for a 15 dB SNR at 1 W total power
SIGMA2_15DB = 10.0 ** -1.5


def make_scenario(
    m=4,
    n=4,
    f_c=3.0e9,
    x_e=500.0,
    g=200.0,
    yaw=math.pi / 4.0,
    p=1.0,
    sigma2=SIGMA2_15DB,
    alpha=1.0,
    seed=0,
) -> ScenarioConfig:
    return ScenarioConfig(
        array=ArrayGeometry(m, n, f_c),
        bob=Position3D(0.0, 0.0, 0.0),
        eve=Position3D(x_e, 0.0, 0.0),
        uav_height_m=g,
        yaw=yaw,
        power=PowerConfig(p, alpha, sigma2, sigma2),
        seed=seed,
    )


@pytest.fixture
def reference_scenario() -> ScenarioConfig:
    """4x4 half-wavelength array at 3 GHz, nodes 500 m apart, 200 m altitude,
    45 degree yaw, 1 W at a 15 dB SNR."""
    return make_scenario()
