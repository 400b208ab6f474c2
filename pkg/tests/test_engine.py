import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import pursuitsim as ps
from pursuitsim.engine import TRAJECTORY_COLUMNS

CONSTS = ps.PhysicsConstants()


def plain_state(**kw):
    base = dict(t=0.0, r=5000.0, psi=0.0, v_p=400.0, gamma_p=0.0,
                v_e=400.0, gamma_e=0.0, d_p=0.0, h_p=3000.0, d_e=5000.0, h_e=3000.0)
    base.update(kw)
    return ps.EngagementState(**base)


class TestRk4Step:
    def test_pure_gravity_vertical_deceleration(self):
        coast = ps.VehicleParams(thrust=0.0, mass=100.0, drag_coefficient=0.0, frontal_area=1.0)
        s = plain_state(gamma_p=math.pi / 2, gamma_e=math.pi / 2, v_p=900.0, v_e=700.0)
        for _ in range(1000):
            s = ps.rk4_step(s, 0.0, 0.0, coast, coast, CONSTS, 0.001)
        assert s.v_p == pytest.approx(900.0 - CONSTS.g * 1.0, rel=1e-9)
        assert s.gamma_p == math.pi / 2

    def test_fourth_order_convergence(self, pursuer_params, evader_params):
        s0 = plain_state(psi=0.5, gamma_p=0.2, gamma_e=-0.1, v_p=800.0, v_e=500.0)

        def integrate(dt, t_end=0.5):
            s = s0
            for _ in range(round(t_end / dt)):
                s = ps.rk4_step(s, 25.0, -15.0, pursuer_params, evader_params, CONSTS, dt)
            return np.array([s.r, s.psi, s.v_p, s.gamma_p, s.v_e, s.gamma_e])

        ref = integrate(0.02 / 8)
        err1 = np.linalg.norm(integrate(0.02) - ref)
        err2 = np.linalg.norm(integrate(0.01) - ref)
        assert 10.0 < err1 / err2 < 25.0  # ~16x for a 4th-order method

    def test_stationary_components_are_fixed(self, evader_params):
        # Equal speeds, level flight, aligned LOS, gravity-compensating
        # commands: every rate except the parallel downrange drift is zero.
        balanced = ps.VehicleParams(
            thrust=ps.drag(400.0, 3000.0, evader_params, CONSTS),
            mass=evader_params.mass,
            drag_coefficient=evader_params.drag_coefficient,
            frontal_area=evader_params.frontal_area,
        )
        s0 = plain_state()
        s1 = ps.rk4_step(s0, -CONSTS.g, -CONSTS.g, balanced, balanced, CONSTS, 0.01)
        assert (s1.r, s1.psi, s1.v_p, s1.gamma_p, s1.v_e, s1.gamma_e) == (
            s0.r, s0.psi, s0.v_p, s0.gamma_p, s0.v_e, s0.gamma_e)
        assert s1.d_p - s0.d_p == pytest.approx(4.0, rel=1e-12)
        assert s1.d_e - s0.d_e == pytest.approx(4.0, rel=1e-12)

    def test_rejects_bad_dt(self, pursuer_params, evader_params):
        with pytest.raises(ValueError):
            ps.rk4_step(plain_state(), 0.0, 0.0, pursuer_params, evader_params, CONSTS, 0.0)


def flyby_sample(t, dt_offset):
    # Pursuer at origin moving +x at 1 m/s, evader fixed at (1, 0.5).
    tt = t + dt_offset
    d_p = tt
    r = math.hypot(1.0 - d_p, 0.5)
    psi = math.atan2(0.5, 1.0 - d_p)
    return ps.EngagementState(t=tt, r=r, psi=psi, v_p=1.0, gamma_p=0.0,
                              v_e=1e-12, gamma_e=0.0, d_p=d_p, h_p=0.0, d_e=1.0, h_e=0.5)


class TestClosestApproach:
    def test_point_to_line_distance(self):
        h = 0.001
        t_star, miss, _ = ps.closest_approach(
            flyby_sample(1.0, -h), flyby_sample(1.0, 0.0), flyby_sample(1.0, h))
        assert miss == pytest.approx(0.5, abs=1e-6)
        assert t_star == pytest.approx(1.0, abs=1e-6)

    def test_exact_minimum_at_sample(self):
        s0, s1, s2 = flyby_sample(1.0, -0.2), flyby_sample(1.0, 0.0), flyby_sample(1.0, 0.2)
        t_star, miss, _ = ps.closest_approach(s0, s1, s2)
        assert t_star == 1.0  # symmetric bracket: vertex at the middle sample
        assert miss <= s1.r

    @given(st.floats(0.01, 2.0), st.floats(0.0, 0.9), st.floats(0.001, 0.1))
    def test_interpolated_miss_below_sampled(self, depth, asym, dt):
        def sample(k):
            tt = k * dt
            rr = math.hypot(depth, tt - asym * dt)
            return ps.EngagementState(t=tt, r=rr, psi=0.0, v_p=1.0, gamma_p=0.0,
                                      v_e=1.0, gamma_e=0.0, d_p=0.0, h_p=0.0, d_e=rr, h_e=0.0)

        s0, s1, s2 = sample(-1), sample(0), sample(1)
        if not (s1.r <= s0.r and s1.r <= s2.r):
            return
        _, miss, _ = ps.closest_approach(s0, s1, s2)
        assert miss <= min(s0.r, s1.r, s2.r) + 1e-9

    def test_middle_must_be_smallest(self):
        with pytest.raises(ValueError):
            ps.closest_approach(flyby_sample(0.0, 0.0), flyby_sample(0.0, 0.1), flyby_sample(0.0, 0.2))


NOMINAL_LAWS = [ps.LawKind.PG, ps.LawKind.RANGE_IOL, ps.LawKind.LOS_IOL]


class TestSimulate:
    @pytest.mark.parametrize("law", NOMINAL_LAWS)
    def test_nominal_interception(self, make_scenario, law):
        result = ps.simulate(make_scenario(law), record=False).result
        assert result.termination is ps.Termination.INTERCEPTED
        assert result.success and result.miss_distance < 10.0

    def test_deterministic(self, make_scenario):
        sc = make_scenario(ps.LawKind.RANGE_IOL)
        a = ps.simulate(sc, record=True)
        b = ps.simulate(sc, record=True)
        assert a.result == b.result
        assert np.array_equal(a.trajectory.data, b.trajectory.data)

    @pytest.mark.parametrize("law", NOMINAL_LAWS)
    def test_step_halving_miss_stable(self, make_scenario, law):
        m1 = ps.simulate(make_scenario(law, dt=0.001), record=False).result.miss_distance
        m2 = ps.simulate(make_scenario(law, dt=0.0005), record=False).result.miss_distance
        assert abs(m1 - m2) < 0.01

    @pytest.mark.parametrize("law", NOMINAL_LAWS)
    def test_saturation_respected_in_log(self, make_scenario, law):
        limit = 20 * 9.81
        sc = make_scenario(guidance=ps.GuidanceSpec(law=law, saturation_limit=limit))
        tr = ps.simulate(sc, record=True).trajectory
        assert np.max(np.abs(tr.column("u"))) <= limit
        if law is not ps.LawKind.PG:  # the IOL opening transients clip
            assert tr.column("saturated").max() == 1.0

    def test_pg_monotone_approach(self, make_scenario):
        tr = ps.simulate(make_scenario(ps.LawKind.PG), record=True).trajectory
        r = tr.column("R")
        assert np.all(np.diff(r[:-1]) < 0.0)

    def test_trajectory_framing(self, make_scenario):
        sc = make_scenario(ps.LawKind.LOS_IOL)
        tr = ps.simulate(sc, record=True).trajectory
        t = tr.column("t")
        assert t[0] == 0.0
        assert np.all(np.diff(t) > 0.0)
        np.testing.assert_allclose(np.diff(t), sc.dt, rtol=0, atol=1e-12)
        first = tr.state(0)
        assert (first.r, first.psi) == (sc.r0, sc.psi0)
        assert (first.v_p, first.gamma_p, first.d_p, first.h_p) == (
            sc.v_p0, sc.gamma_p0, sc.d_p0, sc.h_p0)
        assert len(TRAJECTORY_COLUMNS) == tr.data.shape[1]

    def test_timeout(self, make_scenario):
        result = ps.simulate(make_scenario(ps.LawKind.PG, t_max=1.0), record=False).result
        assert result.termination is ps.Termination.TIMEOUT
        assert not result.success

    def test_diverged(self, make_scenario):
        # Point the pursuer straight away from the LOS and disable the
        # correction so it keeps receding.
        sc = make_scenario(
            ps.LawKind.LOS_IOL_UNCORRECTED,
            gamma_p0=math.atan2(5000.0, 5000.0) + math.radians(120.0),
            diverge_factor=2.0, t_max=40.0,
        )
        result = ps.simulate(sc, record=False).result
        assert result.termination is ps.Termination.DIVERGED
        assert not result.success

    def test_success_iff_within_radius(self, make_scenario):
        for law in NOMINAL_LAWS:
            r = ps.simulate(make_scenario(law), record=False).result
            assert r.success == (r.miss_distance < 10.0)

    def test_polar_cartesian_consistency_random_scenarios(self, pursuer_params, evader_params):
        rng = np.random.default_rng(7)
        for i in range(10):
            law = NOMINAL_LAWS[i % 3]
            sc = ps.Scenario(
                v_p0=rng.uniform(700, 1100), gamma_p0=rng.uniform(-0.6, 0.6),
                h_p0=rng.uniform(3000, 15000), d_p0=0.0,
                v_e0=rng.uniform(300, 600), gamma_e0=rng.uniform(-0.6, 0.6),
                h_e0=rng.uniform(5000, 15000), d_e0=rng.uniform(6000, 15000),
                params_p=pursuer_params, params_e=evader_params,
                guidance=ps.GuidanceSpec(law=law), t_max=20.0,
                evasion=ps.EvasionSpec(start_time=5.0) if i % 2 else None,
            )
            tr = ps.simulate(sc, record=True).trajectory
            dist = np.hypot(tr.column("d_E") - tr.column("d_P"),
                            tr.column("h_E") - tr.column("h_P"))
            ang = np.arctan2(tr.column("h_E") - tr.column("h_P"),
                             tr.column("d_E") - tr.column("d_P"))
            assert np.max(np.abs(tr.column("R") - dist)) < 0.1
            keep = dist > 50.0  # the LOS angle is ill-conditioned in the final flyby
            dpsi = np.abs([ps.wrap_angle(x) for x in (tr.column("psi") - ang)[keep]])
            assert np.max(dpsi) < 1e-4

    def test_scenario_validation(self, pursuer_params, evader_params):
        with pytest.raises(ValueError):
            ps.Scenario(v_p0=800.0, gamma_p0=0.0, h_p0=0.0, d_p0=0.0,
                        v_e0=500.0, gamma_e0=0.0, h_e0=0.0, d_e0=5.0,  # r0 < success radius
                        params_p=pursuer_params, params_e=evader_params,
                        guidance=ps.GuidanceSpec(law=ps.LawKind.PG))
