"""TOML run configuration.

Angles in config files are degrees (matching how engagement tables are
usually stated); everything internal is radians. Unknown keys are rejected.
See README for the full schema; the three modes are:

  single    one engagement, trajectory + result
  campaign  seeded Monte Carlo over uniform ranges, all configured laws
  sweep     one engagement per gain value of the active law
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .montecarlo import CampaignConfig, EvasionRanges, SampleRanges
from .types import (
    EvasionDirection,
    EvasionSpec,
    GuidanceSpec,
    LawKind,
    MembershipParams,
    PhysicsConstants,
    Scenario,
    VehicleParams,
)

G0 = 9.81


class ConfigError(ValueError):
    """Malformed or invalid run configuration; the message names the field."""


@dataclass(frozen=True)
class RunConfig:
    mode: str  # single | campaign | sweep
    output_dir: Optional[str]
    seed: int
    workers: int
    emit_trajectories: int  # campaign mode: trajectories per law to write
    scenario: Optional[Scenario]
    guidance: Optional[GuidanceSpec]
    campaign: Optional[CampaignConfig]
    sweep_parameter: Optional[str]
    sweep_values: tuple[float, ...] = field(default=())


def parse_config(text: str, mode: Optional[str] = None) -> RunConfig:
    """Parse and validate a TOML run configuration; `mode` overrides the
    configured mode (the sections that mode needs are then required)."""
    if not text.strip():
        raise ConfigError("empty configuration")
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML parse error: {exc}") from exc
    if mode is not None:
        raw["mode"] = mode
    return _build(raw)


def load_config(path: str, mode: Optional[str] = None) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), mode=mode)


def _build(raw: dict) -> RunConfig:
    _check_keys(raw, {
        "mode", "output_dir", "seed", "workers",
        "physics", "pursuer", "evader", "guidance",
        "scenario", "campaign", "sweep",
    }, where="top level")

    mode = _get(raw, "mode", str, "single")
    if mode not in ("single", "campaign", "sweep"):
        raise ConfigError(f"mode: expected single|campaign|sweep, got {mode!r}")
    output_dir = _get(raw, "output_dir", str, None)
    seed = _get(raw, "seed", int, 0)
    workers = _get(raw, "workers", int, 1)
    if workers < 1:
        raise ConfigError(f"workers: must be >= 1, got {workers}")

    consts = _physics(raw.get("physics", {}))
    params_p = _vehicle(raw.get("pursuer"), "pursuer")
    params_e = _vehicle(raw.get("evader"), "evader")
    guidance = _guidance(raw.get("guidance"), consts)

    scenario = campaign = None
    sweep_parameter = None
    sweep_values: tuple[float, ...] = ()
    emit_trajectories = 0

    if mode in ("single", "sweep"):
        scenario = _scenario(raw.get("scenario"), params_p, params_e, guidance, consts)
    if mode == "sweep":
        sweep_parameter, sweep_values = _sweep(raw.get("sweep"))
    if mode == "campaign":
        campaign, emit_trajectories = _campaign(
            raw.get("campaign"), params_p, params_e, guidance, consts, seed
        )

    return RunConfig(
        mode=mode, output_dir=output_dir, seed=seed, workers=workers,
        emit_trajectories=emit_trajectories, scenario=scenario,
        guidance=guidance, campaign=campaign,
        sweep_parameter=sweep_parameter, sweep_values=sweep_values,
    )


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _get(section: dict, key: str, kind, default):
    if key not in section:
        return default
    value = section[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}")
    return value


def _require(section: dict, key: str, kind, where: str):
    if key not in section:
        raise ConfigError(f"{where}.{key}: missing required key")
    return _get(section, key, kind, None)


def _physics(section: dict) -> PhysicsConstants:
    _check_keys(section, {"g", "rho0", "scale_height"}, "physics")
    try:
        return PhysicsConstants(
            g=_get(section, "g", float, G0),
            rho0=_get(section, "rho0", float, 1.225),
            scale_height=_get(section, "scale_height", float, 8500.0),
        )
    except ValueError as exc:
        raise ConfigError(f"physics: {exc}") from exc


def _vehicle(section: Optional[dict], where: str) -> VehicleParams:
    if section is None:
        raise ConfigError(f"{where}: missing required section")
    _check_keys(section, {"thrust", "mass", "drag_coefficient", "frontal_area"}, where)
    try:
        return VehicleParams(
            thrust=_require(section, "thrust", float, where),
            mass=_require(section, "mass", float, where),
            drag_coefficient=_require(section, "drag_coefficient", float, where),
            frontal_area=_require(section, "frontal_area", float, where),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


_LAWS = {law.value: law for law in LawKind}


def _guidance(section: Optional[dict], consts: PhysicsConstants) -> GuidanceSpec:
    if section is None:
        raise ConfigError("guidance: missing required section")
    _check_keys(section, {
        "law", "pg_gain", "k_range", "k_los",
        "saturation_g", "dead_band", "ramp_end", "beta_floor",
    }, "guidance")
    law_name = _require(section, "law", str, "guidance")
    if law_name not in _LAWS:
        raise ConfigError(f"guidance.law: expected one of {sorted(_LAWS)}, got {law_name!r}")
    sat_g = _get(section, "saturation_g", float, 40.0)
    saturation = None if math.isinf(sat_g) else sat_g * consts.g
    try:
        membership = MembershipParams(
            dead_band=_get(section, "dead_band", float, 0.1),
            ramp_end=_get(section, "ramp_end", float, 0.2),
        )
        return GuidanceSpec(
            law=_LAWS[law_name],
            pg_gain=_get(section, "pg_gain", float, 3.0),
            k_range=_get(section, "k_range", float, 0.5),
            k_los=_get(section, "k_los", float, 2.0),
            membership=membership,
            saturation_limit=saturation,
            beta_floor=_get(section, "beta_floor", float, 1e-6),
        )
    except ValueError as exc:
        raise ConfigError(f"guidance: {exc}") from exc


def _initial(section: Optional[dict], where: str) -> tuple[float, float, float, float]:
    if section is None:
        raise ConfigError(f"{where}: missing required section")
    _check_keys(section, {"speed", "flight_path_angle_deg", "altitude", "downrange"}, where)
    return (
        _require(section, "speed", float, where),
        math.radians(_require(section, "flight_path_angle_deg", float, where)),
        _require(section, "altitude", float, where),
        _require(section, "downrange", float, where),
    )


def _evasion(section: Optional[dict], consts: PhysicsConstants) -> Optional[EvasionSpec]:
    if section is None:
        return None
    _check_keys(section, {"start_time", "direction", "magnitude_g"}, "scenario.evasion")
    direction = _get(section, "direction", str, "up")
    if direction not in ("up", "down"):
        raise ConfigError(f"scenario.evasion.direction: expected up|down, got {direction!r}")
    try:
        return EvasionSpec(
            start_time=_require(section, "start_time", float, "scenario.evasion"),
            direction=EvasionDirection(direction),
            magnitude=_get(section, "magnitude_g", float, 10.0) * consts.g,
        )
    except ValueError as exc:
        raise ConfigError(f"scenario.evasion: {exc}") from exc


def _scenario(
    section: Optional[dict],
    params_p: VehicleParams,
    params_e: VehicleParams,
    guidance: GuidanceSpec,
    consts: PhysicsConstants,
) -> Scenario:
    if section is None:
        raise ConfigError("scenario: missing required section")
    _check_keys(section, {
        "dt", "t_max", "success_radius", "diverge_factor",
        "pursuer", "evader", "evasion",
    }, "scenario")
    v_p, g_p, h_p, d_p = _initial(section.get("pursuer"), "scenario.pursuer")
    v_e, g_e, h_e, d_e = _initial(section.get("evader"), "scenario.evader")
    try:
        return Scenario(
            v_p0=v_p, gamma_p0=g_p, h_p0=h_p, d_p0=d_p,
            v_e0=v_e, gamma_e0=g_e, h_e0=h_e, d_e0=d_e,
            params_p=params_p, params_e=params_e, guidance=guidance,
            evasion=_evasion(section.get("evasion"), consts),
            consts=consts,
            dt=_get(section, "dt", float, 0.001),
            t_max=_get(section, "t_max", float, 50.0),
            success_radius=_get(section, "success_radius", float, 10.0),
            diverge_factor=_get(section, "diverge_factor", float, 10.0),
        )
    except ValueError as exc:
        raise ConfigError(f"scenario: {exc}") from exc


def _bounds(section: dict, key: str, where: str, degrees: bool = False) -> tuple[float, float]:
    if key not in section:
        raise ConfigError(f"{where}.{key}: missing required key")
    value = section[key]
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        lo = hi = float(value)
    elif (
        isinstance(value, list) and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        lo, hi = float(value[0]), float(value[1])
    else:
        raise ConfigError(f"{where}.{key}: expected a number or [min, max], got {value!r}")
    if lo > hi:
        raise ConfigError(f"{where}.{key}: min {lo} exceeds max {hi}")
    if degrees:
        lo, hi = math.radians(lo), math.radians(hi)
    return lo, hi


def _ranges(section: Optional[dict], where: str) -> SampleRanges:
    if section is None:
        raise ConfigError(f"{where}: missing required section")
    _check_keys(section, {"speed", "flight_path_angle_deg", "altitude", "downrange"}, where)
    return SampleRanges(
        speed=_bounds(section, "speed", where),
        flight_path_angle=_bounds(section, "flight_path_angle_deg", where, degrees=True),
        altitude=_bounds(section, "altitude", where),
        downrange=_bounds(section, "downrange", where),
    )


def _campaign(
    section: Optional[dict],
    params_p: VehicleParams,
    params_e: VehicleParams,
    guidance: GuidanceSpec,
    consts: PhysicsConstants,
    seed: int,
) -> tuple[CampaignConfig, int]:
    if section is None:
        raise ConfigError("campaign: missing required section")
    _check_keys(section, {
        "n_trials", "laws", "emit_trajectories",
        "dt", "t_max", "success_radius",
        "pursuer", "evader", "evasion",
    }, "campaign")
    law_names = section.get("laws")
    if not isinstance(law_names, list) or not law_names:
        raise ConfigError("campaign.laws: expected a non-empty list of law names")
    laws = []
    for name in law_names:
        if name not in _LAWS:
            raise ConfigError(f"campaign.laws: unknown law {name!r}")
        laws.append(GuidanceSpec(
            law=_LAWS[name],
            pg_gain=guidance.pg_gain, k_range=guidance.k_range, k_los=guidance.k_los,
            membership=guidance.membership,
            saturation_limit=guidance.saturation_limit,
            beta_floor=guidance.beta_floor,
        ))

    evasion = None
    ev_section = section.get("evasion")
    if ev_section is not None:
        _check_keys(ev_section, {"start_time", "magnitude_g"}, "campaign.evasion")
        mag_lo, mag_hi = _bounds(ev_section, "magnitude_g", "campaign.evasion")
        evasion = EvasionRanges(
            start_time=_bounds(ev_section, "start_time", "campaign.evasion"),
            magnitude=(mag_lo * consts.g, mag_hi * consts.g),
        )

    emit = _get(section, "emit_trajectories", int, 0)
    if emit < 0:
        raise ConfigError(f"campaign.emit_trajectories: must be >= 0, got {emit}")
    try:
        config = CampaignConfig(
            n_trials=_require(section, "n_trials", int, "campaign"),
            seed=seed,
            pursuer=_ranges(section.get("pursuer"), "campaign.pursuer"),
            evader=_ranges(section.get("evader"), "campaign.evader"),
            laws=tuple(laws),
            params_p=params_p, params_e=params_e,
            evasion=evasion, consts=consts,
            dt=_get(section, "dt", float, 0.001),
            t_max=_get(section, "t_max", float, 50.0),
            success_radius=_get(section, "success_radius", float, 10.0),
        )
    except ValueError as exc:
        raise ConfigError(f"campaign: {exc}") from exc
    return config, emit


_SWEEPABLE = ("k_range", "k_los", "pg_gain")


def _sweep(section: Optional[dict]) -> tuple[str, tuple[float, ...]]:
    if section is None:
        raise ConfigError("sweep: missing required section")
    _check_keys(section, {"parameter", "values"}, "sweep")
    parameter = _require(section, "parameter", str, "sweep")
    if parameter not in _SWEEPABLE:
        raise ConfigError(f"sweep.parameter: expected one of {_SWEEPABLE}, got {parameter!r}")
    values = section.get("values")
    if (
        not isinstance(values, list) or not values
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values)
    ):
        raise ConfigError("sweep.values: expected a non-empty list of numbers")
    return parameter, tuple(float(v) for v in values)
