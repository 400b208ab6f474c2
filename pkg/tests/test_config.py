import math

import pytest

import pursuitsim as ps
from pursuitsim.config import ConfigError, parse_config

SINGLE = """
mode = "single"

[pursuer]
thrust = 15000.0
mass = 204.0
drag_coefficient = 0.025
frontal_area = 2.3

[evader]
thrust = 50000.0
mass = 10000.0
drag_coefficient = 0.025
frontal_area = 28.0

[guidance]
law = "range_iol"

[scenario.pursuer]
speed = 800.0
flight_path_angle_deg = 1.0
altitude = 5000.0
downrange = 0.0

[scenario.evader]
speed = 584.0
flight_path_angle_deg = 10.0
altitude = 10000.0
downrange = 5000.0
"""

CAMPAIGN = """
mode = "campaign"
seed = 99

[pursuer]
thrust = 15000.0
mass = 204.0
drag_coefficient = 0.025
frontal_area = 2.3

[evader]
thrust = 50000.0
mass = 10000.0
drag_coefficient = 0.025
frontal_area = 28.0

[guidance]
law = "los_iol"

[campaign]
n_trials = 4
laws = ["los_iol", "pg"]

[campaign.pursuer]
speed = [800.0, 1100.0]
flight_path_angle_deg = [-45.0, 45.0]
altitude = [12500.0, 20000.0]
downrange = 0.0

[campaign.evader]
speed = [300.0, 600.0]
flight_path_angle_deg = [-45.0, 45.0]
altitude = [10000.0, 20000.0]
downrange = [5000.0, 10000.0]

[campaign.evasion]
start_time = [1.0, 8.0]
magnitude_g = 10.0
"""


class TestSingleMode:
    def test_defaults_applied(self):
        cfg = parse_config(SINGLE)
        sc = cfg.scenario
        assert cfg.mode == "single"
        assert sc.dt == 0.001
        assert sc.t_max == 50.0
        assert sc.success_radius == 10.0
        assert sc.v_p0 == 800.0
        assert sc.gamma_p0 == pytest.approx(math.radians(1.0))
        assert sc.gamma_e0 == pytest.approx(math.radians(10.0))
        assert cfg.guidance.law is ps.LawKind.RANGE_IOL
        assert cfg.guidance.pg_gain == 3.0
        assert cfg.guidance.saturation_limit == pytest.approx(40.0 * 9.81)

    def test_saturation_inf_disables_limit(self):
        cfg = parse_config(SINGLE.replace('law = "range_iol"',
                                          'law = "range_iol"\nsaturation_g = inf'))
        assert cfg.guidance.saturation_limit is None

    def test_evasion_section(self):
        text = SINGLE + """
[scenario.evasion]
start_time = 2.0
direction = "down"
magnitude_g = 10.0
"""
        sc = parse_config(text).scenario
        assert sc.evasion.direction is ps.EvasionDirection.DOWN
        assert sc.evasion.magnitude == pytest.approx(98.1)


class TestCampaignMode:
    def test_parses_ranges_and_scalar_bounds(self):
        cfg = parse_config(CAMPAIGN)
        cc = cfg.campaign
        assert cc.seed == 99
        assert cc.n_trials == 4
        assert cc.pursuer.downrange == (0.0, 0.0)  # scalar becomes degenerate
        assert cc.pursuer.flight_path_angle == (
            pytest.approx(math.radians(-45)), pytest.approx(math.radians(45)))
        assert [spec.law for spec in cc.laws] == [ps.LawKind.LOS_IOL, ps.LawKind.PG]
        assert cc.evasion.start_time == (1.0, 8.0)
        assert cc.evasion.magnitude == (pytest.approx(98.1), pytest.approx(98.1))

    def test_mode_override(self):
        cfg = parse_config(CAMPAIGN, mode="campaign")
        assert cfg.mode == "campaign"

    def test_unknown_law(self):
        with pytest.raises(ConfigError, match="unknown law"):
            parse_config(CAMPAIGN.replace('"pg"', '"apn"'))


class TestSweepMode:
    def test_sweep(self):
        text = SINGLE.replace('mode = "single"', 'mode = "sweep"') + """
[sweep]
parameter = "k_range"
values = [0.05, 0.2, 0.5, 1.0, 2.0]
"""
        cfg = parse_config(text)
        assert cfg.sweep_parameter == "k_range"
        assert cfg.sweep_values == (0.05, 0.2, 0.5, 1.0, 2.0)

    def test_sweep_requires_values(self):
        text = SINGLE.replace('mode = "single"', 'mode = "sweep"') + """
[sweep]
parameter = "k_los"
values = []
"""
        with pytest.raises(ConfigError, match="sweep.values"):
            parse_config(text)


class TestRejection:
    def test_empty_input(self):
        with pytest.raises(ConfigError, match="empty"):
            parse_config("")

    def test_parse_error_has_line_info(self):
        with pytest.raises(ConfigError, match="line"):
            parse_config("mode = 'single'\nbad ===")

    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="unknown key.*turbo"):
            parse_config('turbo = true\n' + SINGLE)

    def test_unknown_nested_key(self):
        with pytest.raises(ConfigError, match="scenario.pursuer"):
            parse_config(SINGLE.replace("speed = 800.0", "speed = 800.0\ncolor = 3"))

    def test_negative_mass(self):
        with pytest.raises(ConfigError, match="pursuer"):
            parse_config(SINGLE.replace("mass = 204.0", "mass = -204.0"))

    def test_missing_section(self):
        with pytest.raises(ConfigError, match="guidance"):
            parse_config(SINGLE.replace('[guidance]\nlaw = "range_iol"', ""))

    def test_bad_mode(self):
        with pytest.raises(ConfigError, match="mode"):
            parse_config(SINGLE.replace('"single"', '"turbo"'))

    def test_bounds_order(self):
        with pytest.raises(ConfigError, match="min.*exceeds"):
            parse_config(CAMPAIGN.replace("speed = [800.0, 1100.0]", "speed = [1100.0, 800.0]"))

    def test_wrong_type(self):
        with pytest.raises(ConfigError, match="n_trials"):
            parse_config(CAMPAIGN.replace("n_trials = 4", 'n_trials = "four"'))
