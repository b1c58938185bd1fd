"""Vehicle model verification: PD tracking envelopes, yaw slew, tilt coupling."""

import math

import numpy as np
import pytest

from catchsim.planner import PlanMethod, Setpoint, UavLimits
from catchsim.vehicle import UavState, hover_init, step_uav, wrap_angle


def setpoint(target, yaw=0.0):
    return Setpoint(
        target_position=np.asarray(target, dtype=float),
        target_yaw=yaw,
        source_method=PlanMethod.CAT_MOUSE,
    )


class TestHoverInit:
    def test_two_metre_hover(self):
        uav = hover_init(2.0)
        assert np.array_equal(uav.position, [0.0, 0.0, 2.0])

    def test_one_metre_hover(self):
        assert np.array_equal(hover_init(1.0).position, [0.0, 0.0, 1.0])

    def test_state_invariants(self):
        uav = hover_init(2.0)
        assert np.array_equal(uav.velocity, np.zeros(3))
        assert uav.yaw == 0.0 and uav.pitch == 0.0 and uav.time == 0.0
        assert -math.pi < uav.yaw <= math.pi

    def test_rejects_nonpositive_elevation(self):
        with pytest.raises(ValueError):
            hover_init(0.0)


class TestStepUav:
    def test_equilibrium_at_setpoint(self):
        limits = UavLimits()
        uav = hover_init(2.0)
        sp = setpoint([0.0, 0.0, 2.0])
        for _ in range(100):
            uav = step_uav(uav, sp, limits, 0.01)
        assert np.linalg.norm(uav.position - [0.0, 0.0, 2.0]) < 1e-6

    def test_speed_saturation_ramp(self):
        # far setpoint: |v| must hit max_speed within max_speed/max_accel + 2 dt
        limits = UavLimits(max_speed=3.0, max_accel=6.0)
        dt = 0.001
        uav = hover_init(2.0)
        sp = setpoint([100.0, 0.0, 2.0])
        n = round((limits.max_speed / limits.max_accel + 2 * dt) / dt)
        for _ in range(n):
            uav = step_uav(uav, sp, limits, dt)
        assert np.linalg.norm(uav.velocity) >= limits.max_speed - 1e-9

    def test_speed_never_exceeds_limit(self):
        limits = UavLimits(max_speed=3.0)
        rng = np.random.default_rng(8)
        uav = hover_init(2.0)
        for _ in range(500):
            sp = setpoint(rng.uniform(-5, 5, size=3))
            uav = step_uav(uav, sp, limits, 0.01)
            assert np.linalg.norm(uav.velocity) <= limits.max_speed + 1e-12

    def test_yaw_slew_rate_and_monotonicity(self):
        limits = UavLimits(max_yaw_rate=2.0)
        dt = 0.001
        uav = hover_init(2.0)
        sp = setpoint([0.0, 0.0, 2.0], yaw=math.pi / 4)
        yaws = [uav.yaw]
        t_arrive = None
        for k in range(1000):
            uav = step_uav(uav, sp, limits, dt)
            yaws.append(uav.yaw)
            if t_arrive is None and abs(uav.yaw - math.pi / 4) < 1e-12:
                t_arrive = (k + 1) * dt
        assert t_arrive is not None and t_arrive >= math.pi / 8 - 1e-9
        assert all(b >= a for a, b in zip(yaws, yaws[1:]))

    def test_yaw_change_bounded_per_step(self):
        limits = UavLimits(max_yaw_rate=2.0)
        dt = 0.01
        rng = np.random.default_rng(3)
        uav = hover_init(2.0)
        for _ in range(300):
            sp = setpoint([0.0, 0.0, 2.0], yaw=rng.uniform(-math.pi, math.pi))
            new = step_uav(uav, sp, limits, dt)
            assert abs(wrap_angle(new.yaw - uav.yaw)) <= limits.max_yaw_rate * dt + 1e-15
            uav = new

    def test_pitch_zero_without_horizontal_accel(self):
        limits = UavLimits()
        uav = hover_init(2.0)
        stepped = step_uav(uav, setpoint([0.0, 0.0, 5.0]), limits, 0.01, tilt_coupling=True)
        assert stepped.pitch == 0.0

    def test_pitch_matches_accel_tilt(self):
        limits = UavLimits(max_accel=6.0)
        uav = hover_init(2.0)
        stepped = step_uav(uav, setpoint([10.0, 0.0, 2.0]), limits, 0.01, tilt_coupling=True)
        # full saturation: horizontal accel = max_accel
        assert stepped.pitch == pytest.approx(math.atan(limits.max_accel / 9.81), rel=1e-9)

    def test_tilt_coupling_off(self):
        limits = UavLimits()
        stepped = step_uav(hover_init(2.0), setpoint([10.0, 0.0, 2.0]), limits, 0.01, tilt_coupling=False)
        assert stepped.pitch == 0.0

    def test_height_compensation_raises_target(self):
        limits = UavLimits()
        tilted = UavState(np.array([0.0, 0.0, 2.0]), np.zeros(3), pitch=0.4)
        sp = setpoint([0.0, 0.0, 2.0])
        plain = step_uav(tilted, sp, limits, 0.01, height_comp_gain=0.0)
        comp = step_uav(tilted, sp, limits, 0.01, height_comp_gain=0.5)
        assert comp.position[2] > plain.position[2]

    def test_deterministic(self):
        limits = UavLimits()
        sp = setpoint([1.0, 2.0, 3.0], yaw=0.3)
        a = step_uav(hover_init(2.0), sp, limits, 0.01)
        b = step_uav(hover_init(2.0), sp, limits, 0.01)
        assert np.array_equal(a.position, b.position)
        assert np.array_equal(a.velocity, b.velocity)
        assert a.yaw == b.yaw and a.pitch == b.pitch


class TestWrapAngle:
    def test_half_open_interval(self):
        assert wrap_angle(math.pi) == math.pi
        assert wrap_angle(-math.pi) == math.pi
        assert wrap_angle(3 * math.pi) == pytest.approx(math.pi)

    def test_identity_inside_range(self):
        for a in (-3.0, -1.0, 0.0, 1.0, 3.0):
            assert wrap_angle(a) == pytest.approx(a if abs(a) <= math.pi else a - np.sign(a) * 2 * math.pi)
