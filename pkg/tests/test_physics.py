"""Physics-layer verification against closed forms and independent arithmetic.

Frozen expected values were computed with the independent oracles noted
next to each assertion (term-by-term formula evaluation, analytic
ballistics, convergence-order measurements).
"""

import math

import numpy as np
import pytest

from catchsim.physics import (
    BallState,
    DragMode,
    Environment,
    ProjectileParams,
    acceleration,
    drag_coefficient,
    drag_force,
    reynolds_number,
    step_ground_truth,
)

# Independent term-by-term evaluation of the drag correlation (cross-checked
# against a 40-digit mpmath evaluation): t1 + t2 + t3 + t4 at Re = 2700.
CD_2700_ORACLE = 0.4204794478543115
# Same evaluation at Re = 0.01 (Stokes term dominates, others still counted).
CD_001_ORACLE = 2400.1526494899626


def ball(v, p=(0.0, 0.0, 2.0), t=0.0):
    return BallState(position=np.array(p, dtype=float), velocity=np.array(v, dtype=float), time=t)


class TestReynoldsNumber:
    def test_reference_ball_speed(self):
        # 1.0125 m/s on a 40 mm ball in room-temperature air
        assert reynolds_number(1.0125, 0.04, 1.5e-5) == pytest.approx(2700.0, abs=1e-9)

    def test_zero_speed(self):
        assert reynolds_number(0.0, 0.04, 1.5e-5) == 0.0

    def test_arithmetic(self):
        assert reynolds_number(2.0, 0.04, 1.5e-5) == pytest.approx(5333.333333333333, rel=1e-12)

    @pytest.mark.parametrize(
        "speed,diameter,nu",
        [(float("nan"), 0.04, 1.5e-5), (1.0, 0.0, 1.5e-5), (1.0, 0.04, 0.0), (-1.0, 0.04, 1.5e-5)],
    )
    def test_invalid_inputs(self, speed, diameter, nu):
        with pytest.raises(ValueError):
            reynolds_number(speed, diameter, nu)


class TestDragCoefficient:
    def test_reference_reynolds(self):
        cd = drag_coefficient(2700.0)
        assert cd == pytest.approx(CD_2700_ORACLE, abs=1e-12)
        assert cd == pytest.approx(0.4206, abs=1e-3)

    def test_stokes_regime(self):
        assert drag_coefficient(0.01) == pytest.approx(CD_001_ORACLE, rel=1e-12)

    def test_deterministic(self):
        assert drag_coefficient(2700.0) == drag_coefficient(2700.0)

    def test_positive_finite_over_range(self):
        for Re in np.geomspace(1e-3, 1e7, 200):
            cd = drag_coefficient(float(Re))
            assert math.isfinite(cd) and cd > 0.0, f"Cd({Re}) = {cd}"

    @pytest.mark.parametrize("Re", [0.0, -1.0, float("nan"), float("inf")])
    def test_domain_errors(self, Re):
        with pytest.raises(ValueError):
            drag_coefficient(Re)


class TestDragForce:
    def test_zero_speed(self):
        assert drag_force(1.204, 0.42, 0.0, 1.25e-3) == 0.0

    def test_arithmetic(self):
        area = math.pi * 0.04**2 / 4
        assert drag_force(1.204, 0.4206, 1.0125, area) == pytest.approx(3.261862781574116e-4, rel=1e-12)

    def test_quadratic_law(self):
        area = math.pi * 0.04**2 / 4
        f1 = drag_force(1.204, 0.42, 1.3, area)
        f2 = drag_force(1.204, 0.42, 2.6, area)
        assert f2 == 4.0 * f1  # power-of-two scaling is exact in IEEE754

    def test_negative_input_rejected(self):
        with pytest.raises(ValueError):
            drag_force(-1.0, 0.42, 1.0, 1e-3)


class TestAcceleration:
    def test_rest_gives_gravity_only(self):
        env = Environment()
        for mode in (DragMode.NONE, DragMode.VELOCITY_OPPOSED):
            a = acceleration(ball((0, 0, 0)), ProjectileParams(drag_mode=mode), env)
            assert np.array_equal(a, [0.0, 0.0, -env.gravity_g]), mode

    def test_rest_paper_exact_gravity_axis(self):
        # literal component equations place +g on the y axis
        env = Environment()
        a = acceleration(ball((0, 0, 0)), ProjectileParams(drag_mode=DragMode.PAPER_EXACT), env)
        assert np.array_equal(a, [0.0, env.gravity_g, 0.0])

    def test_vertical_ascent_drag_is_antiparallel(self):
        env = Environment()
        params = ProjectileParams()
        w = 3.0
        a = acceleration(ball((0, 0, w)), params, env)
        Re = reynolds_number(w, params.diameter_D, env.kinematic_viscosity_nu)
        Dr = drag_force(env.air_density_rho, drag_coefficient(Re), w, params.reference_area_A)
        assert a[0] == 0.0 and a[1] == 0.0
        assert a[2] == pytest.approx(-env.gravity_g - Dr / params.mass_m, rel=1e-12)

    def test_velocity_opposed_matches_vector_oracle(self):
        # independent route: assemble -(Dr/m) * v_hat + gravity with numpy
        env = Environment()
        params = ProjectileParams()
        v = np.array([1.0, 1.0, 1.0])
        speed = float(np.linalg.norm(v))
        Re = speed * params.diameter_D / env.kinematic_viscosity_nu
        Dr = 0.5 * env.air_density_rho * drag_coefficient(Re) * speed**2 * params.reference_area_A
        expected = np.array([0.0, 0.0, -env.gravity_g]) - (Dr / params.mass_m) * (v / speed)
        a = acceleration(ball(v), params, env)
        assert np.allclose(a, expected, rtol=1e-12, atol=0.0)

    def test_paper_exact_matches_literal_equations(self):
        env = Environment()
        params = ProjectileParams(drag_mode=DragMode.PAPER_EXACT)
        u, v, w = 2.0, -1.0, 3.0
        speed = math.sqrt(u * u + v * v + w * w)
        Re = speed * params.diameter_D / env.kinematic_viscosity_nu
        Dr = 0.5 * env.air_density_rho * drag_coefficient(Re) * speed**2 * params.reference_area_A
        dm = Dr / params.mass_m
        phi = math.atan2(u, w)
        theta = math.atan2(v, u)
        expected = [
            -dm * math.sin(phi) * math.cos(theta),
            env.gravity_g - dm * math.sin(phi) * math.sin(theta),
            -dm * math.cos(phi) * math.cos(theta),
        ]
        a = acceleration(ball((u, v, w)), params, env)
        assert np.allclose(a, expected, rtol=1e-12, atol=0.0)

    def test_drag_never_pushes_along_velocity(self):
        env = Environment()
        params = ProjectileParams()
        gravity = np.array([0.0, 0.0, -env.gravity_g])
        rng = np.random.default_rng(7)
        for _ in range(200):
            v = rng.uniform(-8, 8, size=3)
            drag = acceleration(ball(v), params, env) - gravity
            assert float(drag @ v) <= 1e-12, f"drag {drag} has positive component along {v}"


class TestStepGroundTruth:
    def test_drag_free_matches_parabola(self):
        env = Environment()
        params = ProjectileParams(drag_mode=DragMode.NONE)
        state = ball((1.0, 0.0, 1.0), p=(0.0, 0.0, 2.0))
        p0, v0 = state.position.copy(), state.velocity.copy()
        g = np.array([0.0, 0.0, -env.gravity_g])
        for _ in range(100):
            state = step_ground_truth(state, params, env, 0.01)
        t = state.time
        analytic = p0 + v0 * t + 0.5 * g * t * t
        assert np.linalg.norm(state.position - analytic) < 1e-9

    def test_fourth_order_convergence(self):
        # halving dt must shrink the endpoint error by at least 8x
        env = Environment()
        params = ProjectileParams()

        def endpoint(dt, t_end=0.4):
            s = ball((3.0, 2.0, 5.0))
            for _ in range(round(t_end / dt)):
                s = step_ground_truth(s, params, env, dt)
            return s.position

        ref = endpoint(0.4 / 1280)
        e1 = np.linalg.norm(endpoint(0.01) - ref)
        e2 = np.linalg.norm(endpoint(0.005) - ref)
        assert e1 / e2 >= 8.0, f"convergence ratio {e1 / e2:.2f}"

    def test_rest_drag_on_keeps_xy_exact(self):
        env = Environment()
        with_drag = step_ground_truth(ball((0, 0, 0)), ProjectileParams(), env, 0.01)
        assert with_drag.position[0] == 0.0 and with_drag.position[1] == 0.0
        assert with_drag.velocity[0] == 0.0 and with_drag.velocity[1] == 0.0

    def test_deterministic(self):
        env = Environment()
        params = ProjectileParams()
        a = step_ground_truth(ball((1, 2, 3)), params, env, 0.001)
        b = step_ground_truth(ball((1, 2, 3)), params, env, 0.001)
        assert np.array_equal(a.position, b.position)
        assert np.array_equal(a.velocity, b.velocity)

    def test_drag_only_speed_nonincreasing(self):
        env = Environment(gravity_g=0.0)
        params = ProjectileParams()
        rng = np.random.default_rng(3)
        for _ in range(20):
            state = ball(rng.uniform(-8, 8, size=3))
            speed = state.speed
            for _ in range(50):
                state = step_ground_truth(state, params, env, 0.002)
                assert state.speed <= speed + 1e-15
                speed = state.speed


class TestValidation:
    def test_environment_rejects_nonpositive_density(self):
        with pytest.raises(ValueError):
            Environment(air_density_rho=0.0)

    def test_environment_allows_zero_gravity(self):
        # g = 0 isolates drag in experiments
        assert Environment(gravity_g=0.0).gravity_g == 0.0

    def test_projectile_default_area(self):
        p = ProjectileParams(diameter_D=0.04)
        assert p.reference_area_A == pytest.approx(math.pi * 0.04**2 / 4, rel=1e-15)

    def test_ball_state_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            BallState(position=np.array([0.0, 0.0, float("nan")]), velocity=np.zeros(3))

    def test_step_rejects_nonpositive_dt(self):
        with pytest.raises(ValueError):
            step_ground_truth(ball((0, 0, 0)), ProjectileParams(), Environment(), 0.0)
