"""Trajectory prediction from a sliding window of camera detections.

Velocity comes from a per-axis least-squares line fit over a fixed-size
queue of timestamped positions (a moving window, so the estimate tracks
the ball as new detections arrive). The future path is then propagated
with the explicit kinematic update

    p <- p + v dt + 1/2 a dt^2
    v <- v + a dt

where the acceleration is recomputed every step from the shared drag
model. This is deliberately coarser than the RK4 ground truth so the two
can be compared as independent routes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .physics import BallState, Environment, ProjectileParams, _accel_components
from .sensor import Observation


class InsufficientDataError(ValueError):
    """Fewer than two queue entries: no velocity can be fit."""


class DegenerateRegressionError(ValueError):
    """All queue timestamps coincide: the regression denominator is zero."""


class ObservationOrderError(ValueError):
    """Pushed observation does not advance the queue's newest timestamp."""


@dataclass
class ObservationQueue:
    """FIFO window of (timestamp, position) pairs; oldest entry evicted first."""

    capacity: int = 5
    entries: list[tuple[float, np.ndarray]] = field(default_factory=list)

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {self.capacity}")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def newest(self) -> tuple[float, np.ndarray]:
        return self.entries[-1]


def push_observation(queue: ObservationQueue, obs: Observation) -> ObservationQueue:
    """Append an observation, evicting the oldest entry past capacity."""
    if queue.entries and obs.timestamp <= queue.entries[-1][0]:
        raise ObservationOrderError(
            f"timestamp {obs.timestamp} not after newest {queue.entries[-1][0]}"
        )
    queue.entries.append((obs.timestamp, np.asarray(obs.position, dtype=float)))
    if len(queue.entries) > queue.capacity:
        del queue.entries[0]
    return queue


def estimate_velocity(queue: ObservationQueue) -> np.ndarray:
    """Per-axis least-squares slope of position vs time over the queue.

    slope_i = (n * sum(t p_i) - sum(p_i) sum(t)) / (n * sum(t^2) - sum(t)^2)

    Timestamps are re-based to the oldest entry before summation so the
    denominator does not cancel catastrophically for large absolute times.
    """
    n = len(queue.entries)
    if n < 2:
        raise InsufficientDataError(f"need >= 2 observations, have {n}")
    ts = np.array([t for t, _ in queue.entries])
    ps = np.array([p for _, p in queue.entries])
    ts = ts - ts[0]
    st = ts.sum()
    stt = (ts * ts).sum()
    denom = n * stt - st * st
    if denom == 0.0:
        raise DegenerateRegressionError("all timestamps equal; slope undefined")
    stp = (ts[:, None] * ps).sum(axis=0)
    sp = ps.sum(axis=0)
    return (n * stp - sp * st) / denom


@dataclass
class PropagationStop:
    """When to stop propagating: horizon past the seed time, or ground reached."""

    max_horizon: float = 3.0  # s
    ground_height: float = 0.0  # m

    def __post_init__(self):
        if not (math.isfinite(self.max_horizon) and self.max_horizon > 0.0):
            raise ValueError(f"max_horizon must be > 0, got {self.max_horizon}")


@dataclass
class PredictedPath:
    """Ordered future samples of the object: positions[i] at times[i].

    Times increase by exactly t_step; the first sample is the seed state.
    """

    positions: np.ndarray  # (N, 3) m
    times: np.ndarray  # (N,) s
    t_step: float  # s

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        self.times = np.asarray(self.times, dtype=float)
        if len(self.times) == 0:
            raise ValueError("PredictedPath must be non-empty")
        if self.positions.shape != (len(self.times), 3):
            raise ValueError("positions must be (N, 3) matching times")
        if len(self.times) > 1 and not np.allclose(np.diff(self.times), self.t_step, rtol=0, atol=1e-9):
            raise ValueError("times must increase by exactly t_step")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def samples(self) -> list[tuple[np.ndarray, float]]:
        return [(self.positions[i], float(self.times[i])) for i in range(len(self.times))]


def predict_path(
    initial: BallState,
    params: ProjectileParams,
    env: Environment,
    t_step: float = 0.01,
    stop: PropagationStop | None = None,
) -> PredictedPath:
    """Propagate the ball forward from `initial` until the stop rule fires.

    Each step recomputes Re, Cd and the drag acceleration at the current
    velocity, then applies the explicit kinematic update. The sample that
    first dips below `stop.ground_height` is retained so a ground crossing
    can still be interpolated from the path.
    """
    if not (math.isfinite(t_step) and t_step > 0.0):
        raise ValueError(f"t_step must be > 0, got {t_step}")
    if stop is None:
        stop = PropagationStop()
    px, py, pz = (float(c) for c in initial.position)
    vx, vy, vz = (float(c) for c in initial.velocity)
    t0 = initial.time

    xs = [px]
    ys = [py]
    zs = [pz]
    max_steps = int(math.floor(stop.max_horizon / t_step + 1e-9))
    n_appended = 0
    for k in range(1, max_steps + 1):
        ax, ay, az = _accel_components(vx, vy, vz, params, env)
        half = 0.5 * t_step * t_step
        px += vx * t_step + ax * half
        py += vy * t_step + ay * half
        pz += vz * t_step + az * half
        vx += ax * t_step
        vy += ay * t_step
        vz += az * t_step
        xs.append(px)
        ys.append(py)
        zs.append(pz)
        n_appended = k
        if pz < stop.ground_height:
            break

    times = t0 + t_step * np.arange(n_appended + 1)
    return PredictedPath(
        positions=np.column_stack((xs, ys, zs)),
        times=times,
        t_step=t_step,
    )


def predict_from_queue(
    queue: ObservationQueue,
    params: ProjectileParams,
    env: Environment,
    t_step: float = 0.01,
    stop: PropagationStop | None = None,
) -> PredictedPath:
    """Seed a prediction from the queue: newest position, fitted velocity, newest time."""
    velocity = estimate_velocity(queue)
    t_newest, p_newest = queue.newest
    seed = BallState(position=p_newest.copy(), velocity=velocity, time=t_newest)
    return predict_path(seed, params, env, t_step=t_step, stop=stop)


def plane_crossing(
    path: PredictedPath, plane_point: np.ndarray, plane_normal: np.ndarray
) -> tuple[np.ndarray, float] | None:
    """First crossing of the path through the plane, linearly interpolated.

    Scans consecutive sample pairs for a sign change of the signed distance
    to the plane; a sample lying exactly on the plane counts as a crossing
    at that sample. Returns (position, time) or None if the path never
    crosses.
    """
    plane_normal = np.asarray(plane_normal, dtype=float)
    if abs(np.linalg.norm(plane_normal) - 1.0) > 1e-6:
        raise ValueError("plane_normal must have unit norm")
    plane_point = np.asarray(plane_point, dtype=float)

    s = (path.positions - plane_point) @ plane_normal
    on_plane = np.flatnonzero(s == 0.0)
    sign_flip = np.flatnonzero(s[:-1] * s[1:] < 0.0)

    i_on = int(on_plane[0]) if len(on_plane) else None
    i_flip = int(sign_flip[0]) if len(sign_flip) else None
    if i_on is None and i_flip is None:
        return None
    if i_flip is None or (i_on is not None and i_on <= i_flip):
        return path.positions[i_on].copy(), float(path.times[i_on])

    lam = s[i_flip] / (s[i_flip] - s[i_flip + 1])
    pos = path.positions[i_flip] + lam * (path.positions[i_flip + 1] - path.positions[i_flip])
    t = float(path.times[i_flip] + lam * (path.times[i_flip + 1] - path.times[i_flip]))
    return pos, t
