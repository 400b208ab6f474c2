"""Seeded Monte Carlo campaigns over randomized engagement scenarios.

Each trial draws one set of initial conditions from its own RNG substream
(SeedSequence(seed, spawn_key=(trial,)), so results do not depend on worker
count or execution order) and every configured guidance law flies that same
scenario. Statistics follow the campaign-table convention: metric
distributions over successful trials, percent failure over all trials.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .engine import simulate
from .types import (
    EvasionDirection,
    EvasionSpec,
    GuidanceSpec,
    PhysicsConstants,
    Scenario,
    Termination,
    TrialResult,
    VehicleParams,
)

Bounds = tuple[float, float]


@dataclass(frozen=True)
class SampleRanges:
    """Closed uniform bounds for one vehicle's initial conditions.
    Degenerate bounds (min == max) pin the value."""

    speed: Bounds
    flight_path_angle: Bounds  # rad
    altitude: Bounds
    downrange: Bounds

    def __post_init__(self):
        for name in ("speed", "flight_path_angle", "altitude", "downrange"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: min {lo} exceeds max {hi}")


@dataclass(frozen=True)
class EvasionRanges:
    """Uniform bounds for the evasive maneuver; direction is a fair coin."""

    start_time: Bounds
    magnitude: Bounds = (98.1, 98.1)

    def __post_init__(self):
        for name in ("start_time", "magnitude"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: min {lo} exceeds max {hi}")


@dataclass(frozen=True)
class CampaignConfig:
    n_trials: int
    seed: int
    pursuer: SampleRanges
    evader: SampleRanges
    laws: tuple[GuidanceSpec, ...]
    params_p: VehicleParams
    params_e: VehicleParams
    evasion: Optional[EvasionRanges] = None
    consts: PhysicsConstants = field(default_factory=PhysicsConstants)
    dt: float = 0.001
    t_max: float = 50.0
    success_radius: float = 10.0

    def __post_init__(self):
        if self.n_trials <= 0:
            raise ValueError(f"n_trials must be > 0, got {self.n_trials}")
        if not self.laws:
            raise ValueError("need at least one guidance law")

    def law_names(self) -> list[str]:
        return [spec.law.value for spec in self.laws]


@dataclass(frozen=True)
class ScenarioDraw:
    """The sampled quantities of one trial (shared by every law)."""

    v_p: float
    gamma_p: float
    h_p: float
    d_p: float
    v_e: float
    gamma_e: float
    h_e: float
    d_e: float
    evasion_start: Optional[float] = None
    evasion_direction: Optional[EvasionDirection] = None
    evasion_magnitude: Optional[float] = None


@dataclass(frozen=True)
class MetricStats:
    average: float
    median: float
    variance: float  # population variance
    minimum: float
    maximum: float


@dataclass(frozen=True)
class CampaignStats:
    """Per-metric statistics over successful trials plus the failure rate."""

    n_trials: int
    n_success: int
    percent_failure: float
    intercept_time: Optional[MetricStats]
    miss_distance: Optional[MetricStats]
    closing_velocity: Optional[MetricStats]


@dataclass(frozen=True)
class CampaignOutput:
    config: CampaignConfig
    draws: list[ScenarioDraw]
    results: dict[str, list[TrialResult]]  # law name -> per-trial results


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent, order-insensitive RNG substream for one trial."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def sample_scenario(config: CampaignConfig, rng: np.random.Generator) -> ScenarioDraw:
    """Draw one trial's initial conditions. Draw order is fixed: pursuer
    speed/angle/altitude/downrange, evader likewise, then evasion start,
    direction, magnitude."""
    p, e = config.pursuer, config.evader
    draw = [
        rng.uniform(*p.speed), rng.uniform(*p.flight_path_angle),
        rng.uniform(*p.altitude), rng.uniform(*p.downrange),
        rng.uniform(*e.speed), rng.uniform(*e.flight_path_angle),
        rng.uniform(*e.altitude), rng.uniform(*e.downrange),
    ]
    ev_start = ev_dir = ev_mag = None
    if config.evasion is not None:
        ev_start = rng.uniform(*config.evasion.start_time)
        ev_dir = EvasionDirection.UP if rng.integers(0, 2) == 0 else EvasionDirection.DOWN
        ev_mag = rng.uniform(*config.evasion.magnitude)
    return ScenarioDraw(*draw, ev_start, ev_dir, ev_mag)


def build_scenario(config: CampaignConfig, draw: ScenarioDraw, law: GuidanceSpec) -> Scenario:
    evasion = None
    if draw.evasion_start is not None:
        evasion = EvasionSpec(
            start_time=draw.evasion_start,
            direction=draw.evasion_direction,
            magnitude=draw.evasion_magnitude,
        )
    return Scenario(
        v_p0=draw.v_p, gamma_p0=draw.gamma_p, h_p0=draw.h_p, d_p0=draw.d_p,
        v_e0=draw.v_e, gamma_e0=draw.gamma_e, h_e0=draw.h_e, d_e0=draw.d_e,
        params_p=config.params_p, params_e=config.params_e,
        guidance=law, evasion=evasion, consts=config.consts,
        dt=config.dt, t_max=config.t_max, success_radius=config.success_radius,
    )


_FAILED_TRIAL = TrialResult(
    intercept_time=math.nan, miss_distance=math.inf, closing_velocity=math.nan,
    success=False, termination=Termination.DIVERGED,
)


def run_trial(config: CampaignConfig, trial: int) -> tuple[ScenarioDraw, list[TrialResult]]:
    """Simulate one trial under every configured law (no recording).
    A law whose simulation raises is recorded as a failed trial."""
    draw = sample_scenario(config, trial_rng(config.seed, trial))
    outcomes = []
    for law in config.laws:
        try:
            scenario = build_scenario(config, draw, law)
            outcomes.append(simulate(scenario, record=False).result)
        except (ValueError, ArithmeticError):
            outcomes.append(_FAILED_TRIAL)
    return draw, outcomes


def _run_block(config: CampaignConfig, trials: range) -> list[tuple[ScenarioDraw, list[TrialResult]]]:
    return [run_trial(config, i) for i in trials]


def run_campaign(config: CampaignConfig, workers: int = 1) -> CampaignOutput:
    """Run the full campaign; output ordering is by (trial, law) and is
    identical for any worker count."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    n = config.n_trials
    if workers == 1:
        rows = _run_block(config, range(n))
    else:
        chunk = max(1, -(-n // workers))
        blocks = [range(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_block, [config] * len(blocks), blocks))
        rows = [row for part in parts for row in part]

    draws = [draw for draw, _ in rows]
    results = {
        name: [outcomes[j] for _, outcomes in rows]
        for j, name in enumerate(config.law_names())
    }
    return CampaignOutput(config=config, draws=draws, results=results)


def aggregate(results: list[TrialResult]) -> CampaignStats:
    """Fold per-trial results into campaign statistics. Metrics cover
    successful trials only; an all-failure campaign reports 100% failure
    with the metric blocks flagged empty (None)."""
    if not results:
        raise ValueError("results must be non-empty")
    n = len(results)
    wins = [r for r in results if r.success]
    percent_failure = 100.0 * (n - len(wins)) / n

    def stats(values: list[float]) -> MetricStats:
        arr = np.asarray(values)
        return MetricStats(
            average=float(np.mean(arr)),
            median=float(np.median(arr)),
            variance=float(np.var(arr)),
            minimum=float(np.min(arr)),
            maximum=float(np.max(arr)),
        )

    if not wins:
        return CampaignStats(n, 0, percent_failure, None, None, None)
    return CampaignStats(
        n_trials=n,
        n_success=len(wins),
        percent_failure=percent_failure,
        intercept_time=stats([r.intercept_time for r in wins]),
        miss_distance=stats([r.miss_distance for r in wins]),
        closing_velocity=stats([r.closing_velocity for r in wins]),
    )
