import math

import pytest

import pursuitsim as ps


class TestValidation:
    def test_vehicle_params(self):
        ps.VehicleParams(thrust=0.0, mass=1.0, drag_coefficient=0.0, frontal_area=0.0)
        for kw in (dict(mass=0.0), dict(thrust=-1.0), dict(drag_coefficient=-0.1),
                   dict(frontal_area=-1.0)):
            with pytest.raises(ValueError):
                ps.VehicleParams(**{**dict(thrust=1.0, mass=1.0, drag_coefficient=0.1,
                                           frontal_area=1.0), **kw})

    def test_physics_constants(self):
        ps.PhysicsConstants(g=0.0, rho0=0.0)  # allowed for symmetry checks
        with pytest.raises(ValueError):
            ps.PhysicsConstants(g=-1.0)
        with pytest.raises(ValueError):
            ps.PhysicsConstants(scale_height=0.0)

    def test_guidance_spec(self):
        spec = ps.GuidanceSpec(law=ps.LawKind.PG)
        assert spec.pg_gain == 3.0
        assert spec.saturation_limit == pytest.approx(40.0 * 9.81)
        for kw in (dict(pg_gain=0.0), dict(k_range=-1.0), dict(k_los=0.0),
                   dict(saturation_limit=0.0), dict(beta_floor=0.0)):
            with pytest.raises(ValueError):
                ps.GuidanceSpec(law=ps.LawKind.PG, **kw)

    def test_evasion_spec(self):
        ev = ps.EvasionSpec(start_time=0.0)
        assert ev.magnitude == pytest.approx(98.1)
        with pytest.raises(ValueError):
            ps.EvasionSpec(start_time=-1.0)

    def test_scenario_geometry(self, pursuer_params, evader_params):
        sc = ps.Scenario(
            v_p0=800.0, gamma_p0=0.0, h_p0=5000.0, d_p0=0.0,
            v_e0=584.0, gamma_e0=0.0, h_e0=10000.0, d_e0=5000.0,
            params_p=pursuer_params, params_e=evader_params,
            guidance=ps.GuidanceSpec(law=ps.LawKind.PG))
        assert sc.r0 == pytest.approx(math.hypot(5000.0, 5000.0))
        assert sc.psi0 == pytest.approx(math.atan2(5000.0, 5000.0))
        s0 = sc.initial_state()
        assert s0.pos_p == (0.0, 5000.0)
        assert s0.pos_e == (5000.0, 10000.0)
        assert s0.t == 0.0

    def test_scenario_invariants(self, pursuer_params, evader_params):
        base = dict(
            v_p0=800.0, gamma_p0=0.0, h_p0=5000.0, d_p0=0.0,
            v_e0=584.0, gamma_e0=0.0, h_e0=10000.0, d_e0=5000.0,
            params_p=pursuer_params, params_e=evader_params,
            guidance=ps.GuidanceSpec(law=ps.LawKind.PG))
        for kw in (dict(dt=0.0), dict(t_max=0.0005), dict(success_radius=0.0),
                   dict(v_p0=0.0), dict(diverge_factor=1.0)):
            with pytest.raises(ValueError):
                ps.Scenario(**{**base, **kw})
