"""Ground-truth projectile dynamics: gravity plus Reynolds-dependent drag.

The drag model follows the classic four-term sphere correlation

    Cd(Re) = 24/Re
           + 2.6 (Re/5) / (1 + (Re/5)^1.52)
           + 0.411 (Re/2.63e5)^-7.94 / (1 + (Re/2.63e5)^-8)
           + 0.25 (Re/1e6) / (1 + Re/1e6)

with Re = V D / nu and drag magnitude D_r = 1/2 rho Cd V^2 A.

Ground truth integrates with classical RK4 so it stays a strictly
finer-grained reference than the explicit kinematic propagation used by
the predictor. All functions here are pure; there is no shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Speeds below this are treated as rest: the Cd correlation diverges as
# Re -> 0 while the physical (Stokes) drag force vanishes, so we skip the
# drag term entirely instead of evaluating 24/Re on garbage.
_SPEED_FLOOR = 1e-12


class DragMode(str, Enum):
    """How drag enters the acceleration.

    velocity_opposed: drag magnitude applied along -v_hat in a z-up world
        frame with gravity (0, 0, -g). This is the physically consistent
        default.
    paper_exact: the component equations evaluated literally with
        phi = atan2(U, W), theta = atan2(V, U) and +g on the y axis.
        Kept for comparison; its output is NOT guaranteed to oppose the
        velocity vector (the angle/axis conventions are ambiguous).
    none: gravity only.
    """

    VELOCITY_OPPOSED = "velocity_opposed"
    PAPER_EXACT = "paper_exact"
    NONE = "none"


@dataclass
class Environment:
    """Ambient constants (room-temperature air by default)."""

    gravity_g: float = 9.81  # m/s^2
    air_density_rho: float = 1.204  # kg/m^3
    kinematic_viscosity_nu: float = 1.5e-5  # m^2/s

    def __post_init__(self):
        # gravity may be zeroed to isolate drag in experiments/tests
        if not (math.isfinite(self.gravity_g) and self.gravity_g >= 0.0):
            raise ValueError(f"gravity_g must be finite and >= 0, got {self.gravity_g}")
        for name in ("air_density_rho", "kinematic_viscosity_nu"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")


@dataclass
class ProjectileParams:
    """Ball properties. Defaults are a standard 40 mm, 2.7 g table-tennis ball."""

    mass_m: float = 2.7e-3  # kg
    diameter_D: float = 0.04  # m
    reference_area_A: float | None = None  # m^2; None -> pi D^2 / 4
    drag_mode: DragMode = DragMode.VELOCITY_OPPOSED

    def __post_init__(self):
        if self.reference_area_A is None:
            self.reference_area_A = math.pi * self.diameter_D**2 / 4.0
        self.drag_mode = DragMode(self.drag_mode)
        for name in ("mass_m", "diameter_D", "reference_area_A"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")


@dataclass
class BallState:
    """Projectile position/velocity in the world frame at a given time."""

    position: np.ndarray  # m, shape (3,)
    velocity: np.ndarray  # m/s, shape (3,)
    time: float = 0.0  # s

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.velocity = np.asarray(self.velocity, dtype=float)
        if self.position.shape != (3,) or self.velocity.shape != (3,):
            raise ValueError("position and velocity must be 3-vectors")
        if not (
            np.isfinite(self.position).all()
            and np.isfinite(self.velocity).all()
            and math.isfinite(self.time)
        ):
            raise ValueError("BallState components must be finite")

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.velocity))


@dataclass
class DragDecomposition:
    """Drag magnitude and the flight-direction angles used by paper_exact mode."""

    drag_magnitude_Dr: float  # N, >= 0
    phi: float  # rad, atan2(U, W)
    theta: float  # rad, atan2(V, U)


def reynolds_number(speed: float, diameter: float, nu: float) -> float:
    """Re = V D / nu for a sphere of the given diameter."""
    if not (math.isfinite(speed) and math.isfinite(diameter) and math.isfinite(nu)):
        raise ValueError("reynolds_number: inputs must be finite")
    if diameter <= 0.0 or nu <= 0.0:
        raise ValueError(f"reynolds_number: need diameter > 0 and nu > 0, got D={diameter}, nu={nu}")
    if speed < 0.0:
        raise ValueError(f"reynolds_number: speed must be >= 0, got {speed}")
    return speed * diameter / nu


def drag_coefficient(Re: float) -> float:
    """Four-term sphere drag correlation, evaluated term by term as written.

    Valid over the whole subcritical-to-supercritical range; the first
    term diverges as Re -> 0+, so Re must be strictly positive.
    """
    if not math.isfinite(Re) or Re <= 0.0:
        raise ValueError(f"drag_coefficient: Re must be finite and > 0, got {Re}")
    t1 = 24.0 / Re
    t2 = 2.6 * (Re / 5.0) / (1.0 + (Re / 5.0) ** 1.52)
    t3 = 0.411 * (Re / 2.63e5) ** (-7.94) / (1.0 + (Re / 2.63e5) ** (-8.00))
    t4 = 0.25 * (Re / 1.0e6) / (1.0 + Re / 1.0e6)
    return t1 + t2 + t3 + t4


def drag_force(rho: float, Cd: float, speed: float, area: float) -> float:
    """Drag magnitude D_r = 1/2 rho Cd V^2 A in newtons."""
    for name, v in (("rho", rho), ("Cd", Cd), ("speed", speed), ("area", area)):
        if not math.isfinite(v) or v < 0.0:
            raise ValueError(f"drag_force: {name} must be finite and >= 0, got {v}")
    return 0.5 * rho * Cd * speed * speed * area


def drag_decomposition(velocity: np.ndarray, params: ProjectileParams, env: Environment) -> DragDecomposition:
    """Drag magnitude plus the (phi, theta) angles of the literal component form."""
    u, v, w = (float(c) for c in velocity)
    speed = math.sqrt(u * u + v * v + w * w)
    if speed < _SPEED_FLOOR:
        return DragDecomposition(0.0, 0.0, 0.0)
    Re = reynolds_number(speed, params.diameter_D, env.kinematic_viscosity_nu)
    Dr = drag_force(env.air_density_rho, drag_coefficient(Re), speed, params.reference_area_A)
    return DragDecomposition(Dr, math.atan2(u, w), math.atan2(v, u))


def _drag_accel_over_speed(speed: float, params: ProjectileParams, env: Environment) -> float:
    """(D_r / m) / speed, i.e. the factor k such that a_drag = -k * v."""
    Re = speed * params.diameter_D / env.kinematic_viscosity_nu
    Cd = drag_coefficient(Re)
    Dr = 0.5 * env.air_density_rho * Cd * speed * speed * params.reference_area_A
    return Dr / params.mass_m / speed


def _accel_components(
    vx: float, vy: float, vz: float, params: ProjectileParams, env: Environment
) -> tuple[float, float, float]:
    """Scalar acceleration kernel shared by the public API and the integrator."""
    g = env.gravity_g
    mode = params.drag_mode
    if mode is DragMode.NONE:
        return 0.0, 0.0, -g
    speed = math.sqrt(vx * vx + vy * vy + vz * vz)
    if mode is DragMode.VELOCITY_OPPOSED:
        if speed < _SPEED_FLOOR:
            return 0.0, 0.0, -g
        k = _drag_accel_over_speed(speed, params, env)
        return -k * vx, -k * vy, -g - k * vz
    # paper_exact: the component equations verbatim, +g on the y axis
    if speed < _SPEED_FLOOR:
        return 0.0, g, 0.0
    Re = speed * params.diameter_D / env.kinematic_viscosity_nu
    Dr = 0.5 * env.air_density_rho * drag_coefficient(Re) * speed * speed * params.reference_area_A
    dm = Dr / params.mass_m
    phi = math.atan2(vx, vz)
    theta = math.atan2(vy, vx)
    ax = -dm * math.sin(phi) * math.cos(theta)
    ay = g - dm * math.sin(phi) * math.sin(theta)
    az = -dm * math.cos(phi) * math.cos(theta)
    return ax, ay, az


def acceleration(state: BallState, params: ProjectileParams, env: Environment) -> np.ndarray:
    """Total acceleration (gravity + drag) acting on the ball, m/s^2."""
    vx, vy, vz = (float(c) for c in state.velocity)
    return np.array(_accel_components(vx, vy, vz, params, env))


def _rk4_step(
    px: float, py: float, pz: float,
    vx: float, vy: float, vz: float,
    params: ProjectileParams, env: Environment, dt: float,
) -> tuple[float, float, float, float, float, float]:
    """One classical RK4 step of (p, v) under the acceleration field."""
    a1x, a1y, a1z = _accel_components(vx, vy, vz, params, env)

    h = 0.5 * dt
    v2x, v2y, v2z = vx + h * a1x, vy + h * a1y, vz + h * a1z
    a2x, a2y, a2z = _accel_components(v2x, v2y, v2z, params, env)

    v3x, v3y, v3z = vx + h * a2x, vy + h * a2y, vz + h * a2z
    a3x, a3y, a3z = _accel_components(v3x, v3y, v3z, params, env)

    v4x, v4y, v4z = vx + dt * a3x, vy + dt * a3y, vz + dt * a3z
    a4x, a4y, a4z = _accel_components(v4x, v4y, v4z, params, env)

    sixth = dt / 6.0
    # position slope samples are the stage velocities
    npx = px + sixth * (vx + 2.0 * v2x + 2.0 * v3x + v4x)
    npy = py + sixth * (vy + 2.0 * v2y + 2.0 * v3y + v4y)
    npz = pz + sixth * (vz + 2.0 * v2z + 2.0 * v3z + v4z)
    nvx = vx + sixth * (a1x + 2.0 * a2x + 2.0 * a3x + a4x)
    nvy = vy + sixth * (a1y + 2.0 * a2y + 2.0 * a3y + a4y)
    nvz = vz + sixth * (a1z + 2.0 * a2z + 2.0 * a3z + a4z)
    return npx, npy, npz, nvx, nvy, nvz


def step_ground_truth(state: BallState, params: ProjectileParams, env: Environment, dt: float) -> BallState:
    """Advance the ball by one RK4 step of length dt (deterministic)."""
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"step_ground_truth: dt must be > 0, got {dt}")
    px, py, pz = (float(c) for c in state.position)
    vx, vy, vz = (float(c) for c in state.velocity)
    npx, npy, npz, nvx, nvy, nvz = _rk4_step(px, py, pz, vx, vy, vz, params, env, dt)
    return BallState(
        position=np.array((npx, npy, npz)),
        velocity=np.array((nvx, nvy, nvz)),
        time=state.time + dt,
    )
