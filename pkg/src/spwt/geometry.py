"""Angle bookkeeping between ground nodes and an elevated transmitter.

Positions use a right-handed frame with z as altitude.  Solvers work in a
canonical frame with the intended receiver at the origin and the eavesdropper
on the positive x axis; ``canonicalize_frame`` builds the rigid transform
taking arbitrary ground coordinates into that frame and back.  The yaw angle
is measured from the receiver-to-eavesdropper axis, so it is unchanged by the
canonicalization.
"""

import math
from dataclasses import dataclass

from .errors import DegenerateGeometry

TWO_PI = 2.0 * math.pi

# Below this horizontal separation in meters the azimuth is undefined.
_FLAT_EPS = 1e-9


@dataclass(frozen=True)
class Position3D:
    """A point in meters; z is altitude above the ground plane."""

    x: float
    y: float
    z: float = 0.0


@dataclass(frozen=True)
class LookAngles:
    """Direction of the transmitter as seen from a ground node.

    Attributes
    ----------
    azimuth : float
        Ground-plane angle of the node-to-transmitter displacement, measured
        from the +x axis, wrapped to [0, 2*pi).
    pitch : float
        Elevation toward the transmitter, in [0, pi/2] while it flies above
        the node.
    azimuth_rel : float
        Azimuth expressed in the array frame, i.e. azimuth minus the
        transmitter yaw, wrapped to [0, 2*pi).
    """

    azimuth: float
    pitch: float
    azimuth_rel: float


@dataclass(frozen=True)
class FrameTransform:
    """Rigid ground-plane transform into the canonical solving frame.

    ``to_canonical`` first shifts by (shift_x, shift_y), then rotates by
    ``rotation`` about the z axis; ``from_canonical`` inverts it.  Altitude
    passes through untouched.
    """

    shift_x: float
    shift_y: float
    rotation: float

    def to_canonical(self, p: Position3D) -> Position3D:
        xt = p.x + self.shift_x
        yt = p.y + self.shift_y
        c = math.cos(self.rotation)
        s = math.sin(self.rotation)
        return Position3D(xt * c - yt * s, xt * s + yt * c, p.z)

    def from_canonical(self, p: Position3D) -> Position3D:
        c = math.cos(self.rotation)
        s = math.sin(self.rotation)
        xt = p.x * c + p.y * s
        yt = -p.x * s + p.y * c
        return Position3D(xt - self.shift_x, yt - self.shift_y, p.z)


def wrap_angle(angle: float) -> float:
    """Wrap an angle to [0, 2*pi)."""
    return angle % TWO_PI


def _wrap_pm_pi(angle: float) -> float:
    # Signed wrap to (-pi, pi], used for angle comparisons.
    return (angle + math.pi) % TWO_PI - math.pi


def look_angles(uav: Position3D, target: Position3D, yaw: float) -> LookAngles:
    """Azimuth, pitch and yaw-relative azimuth of ``uav`` seen from ``target``.

    The quadrant is resolved with atan2 on the horizontal displacement, so
    the returned sin/cos pairs always match the coordinate ratios.

    Raises
    ------
    DegenerateGeometry
        If the transmitter sits within 1e-9 m of the vertical over ``target``.
    """
    dx = uav.x - target.x
    dy = uav.y - target.y
    horiz = math.hypot(dx, dy)
    if horiz < _FLAT_EPS:
        raise DegenerateGeometry(
            "transmitter is directly above the node; azimuth undefined"
        )
    azimuth = wrap_angle(math.atan2(dy, dx))
    pitch = math.atan2(uav.z - target.z, horiz)
    return LookAngles(
        azimuth=azimuth,
        pitch=pitch,
        azimuth_rel=wrap_angle(azimuth - yaw),
    )


def midpoint_symmetry_check(
    uav: Position3D,
    bob: Position3D,
    eve: Position3D,
    tol: float = 1e-10,
) -> bool:
    """True when both ground nodes are seen under equal pitch and mirrored
    azimuth (azimuth_b = pi - azimuth_e), the signature of a transmitter on
    the perpendicular bisector of the ground segment.

    Expects the canonical frame: ``bob`` at the origin, ``eve`` on the +x
    axis.  Used as a solver postcondition.
    """
    ang_b = look_angles(uav, bob, 0.0)
    ang_e = look_angles(uav, eve, 0.0)
    mirror = _wrap_pm_pi(ang_b.azimuth - (math.pi - ang_e.azimuth))
    return abs(ang_b.pitch - ang_e.pitch) <= tol and abs(mirror) <= tol


def canonicalize_frame(bob_raw: Position3D, eve_raw: Position3D) -> FrameTransform:
    """Transform mapping ``bob_raw`` to the origin and ``eve_raw`` onto the
    positive x axis.

    Raises
    ------
    DegenerateGeometry
        If the two ground nodes coincide (within 1e-9 m horizontally).
    """
    dx = eve_raw.x - bob_raw.x
    dy = eve_raw.y - bob_raw.y
    if math.hypot(dx, dy) < _FLAT_EPS:
        raise DegenerateGeometry("ground nodes coincide; no axis to align")
    bearing = math.atan2(dy, dx)
    return FrameTransform(shift_x=-bob_raw.x, shift_y=-bob_raw.y, rotation=-bearing)
