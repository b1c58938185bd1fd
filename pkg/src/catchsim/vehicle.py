"""Kinematic UAV model: PD setpoint tracking under speed/accel/yaw-rate limits.

The model deliberately skips rigid-body attitude dynamics. The one
attitude effect that matters to the perception loop is kept: commanding
horizontal acceleration tilts the vehicle (pitch = atan(|a_h| / g)),
which the sensor adds to the camera's mount pitch and which can push the
ball out of view. Two mitigations are available: lowering the
acceleration limit in the config, or compensating height in proportion
to pitch (``height_comp_gain``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .planner import Setpoint, UavLimits

DEFAULT_KP = 4.0  # s^-2, position gain
DEFAULT_KD = 3.0  # s^-1, velocity damping


def wrap_angle(angle: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    w = (angle + math.pi) % (2.0 * math.pi) - math.pi
    return math.pi if w == -math.pi else w


@dataclass
class UavState:
    """Vehicle pose at a given time. Yaw is CCW about +z; pitch is accel-induced tilt."""

    position: np.ndarray  # m
    velocity: np.ndarray  # m/s
    yaw: float = 0.0  # rad, in (-pi, pi]
    pitch: float = 0.0  # rad, >= 0, added to the camera mount pitch
    time: float = 0.0  # s

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.velocity = np.asarray(self.velocity, dtype=float)


def hover_init(elevation: float) -> UavState:
    """UAV hovering at the world origin at the given height, facing +x."""
    if not (math.isfinite(elevation) and elevation > 0.0):
        raise ValueError(f"elevation must be > 0, got {elevation}")
    return UavState(
        position=np.array([0.0, 0.0, elevation]),
        velocity=np.zeros(3),
        yaw=0.0,
        pitch=0.0,
        time=0.0,
    )


def step_uav(
    state: UavState,
    sp: "Setpoint",
    limits: "UavLimits",
    dt: float,
    tilt_coupling: bool = True,
    kp: float = DEFAULT_KP,
    kd: float = DEFAULT_KD,
    gravity_g: float = 9.81,
    height_comp_gain: float = 0.0,
) -> UavState:
    """Advance the vehicle one step toward the setpoint.

    Commanded acceleration is PD on position error, norm-clamped to
    max_accel; velocity is norm-clamped to max_speed; yaw slews toward the
    target at most max_yaw_rate * dt per step. With tilt_coupling the new
    pitch is atan(|a_horizontal| / g). A nonzero height_comp_gain raises
    the commanded height by gain * current pitch before tracking (the
    "climb to keep the ball in view" mitigation).
    """
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be > 0, got {dt}")

    px, py, pz = (float(c) for c in state.position)
    vx, vy, vz = (float(c) for c in state.velocity)
    tx, ty, tz = (float(c) for c in sp.target_position)
    if height_comp_gain != 0.0:
        tz += height_comp_gain * state.pitch

    ax = kp * (tx - px) - kd * vx
    ay = kp * (ty - py) - kd * vy
    az = kp * (tz - pz) - kd * vz
    a_norm = math.sqrt(ax * ax + ay * ay + az * az)
    if a_norm > limits.max_accel:
        scale = limits.max_accel / a_norm
        ax *= scale
        ay *= scale
        az *= scale

    vx += ax * dt
    vy += ay * dt
    vz += az * dt
    v_norm = math.sqrt(vx * vx + vy * vy + vz * vz)
    if v_norm > limits.max_speed:
        scale = limits.max_speed / v_norm
        vx *= scale
        vy *= scale
        vz *= scale

    px += vx * dt
    py += vy * dt
    pz += vz * dt

    max_dyaw = limits.max_yaw_rate * dt
    dyaw = wrap_angle(sp.target_yaw - state.yaw)
    dyaw = max(-max_dyaw, min(max_dyaw, dyaw))
    yaw = wrap_angle(state.yaw + dyaw)

    pitch = math.atan(math.hypot(ax, ay) / gravity_g) if tilt_coupling else 0.0

    return UavState(
        position=np.array((px, py, pz)),
        velocity=np.array((vx, vy, vz)),
        yaw=yaw,
        pitch=pitch,
        time=state.time + dt,
    )
