import math

import pytest

import pursuitsim as ps

# Engagement used throughout: pursuer launched low and behind, evader
# cruising above (the simulator's stock demo scenario).
NOMINAL = dict(
    v_p0=800.0, gamma_p0=math.radians(1.0), h_p0=5000.0, d_p0=0.0,
    v_e0=584.0, gamma_e0=math.radians(10.0), h_e0=10000.0, d_e0=5000.0,
)


@pytest.fixture(scope="session")
def pursuer_params():
    return ps.VehicleParams(thrust=15000.0, mass=204.0, drag_coefficient=0.025, frontal_area=2.3)


@pytest.fixture(scope="session")
def evader_params():
    return ps.VehicleParams(thrust=50000.0, mass=10000.0, drag_coefficient=0.025, frontal_area=28.0)


@pytest.fixture
def make_scenario(pursuer_params, evader_params):
    def build(law=ps.LawKind.PG, guidance=None, **overrides):
        spec = guidance or ps.GuidanceSpec(law=law)
        fields = dict(NOMINAL)
        scenario_kw = {}
        for key, value in overrides.items():
            (fields if key in fields else scenario_kw)[key] = value
        return ps.Scenario(
            **fields, params_p=pursuer_params, params_e=evader_params,
            guidance=spec, **scenario_kw,
        )

    return build
