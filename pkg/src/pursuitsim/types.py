"""Domain types shared across the simulator.

Angles are radians and everything else is SI unless a name says otherwise.
Positive normal acceleration n_z decreases the flight-path angle (the
equations of motion carry the minus sign), so a "up" evasive pull labels the
n_z axis, not the direction the trajectory bends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

G0 = 9.81  # default gravitational acceleration (m/s^2)


class LawKind(Enum):
    PG = "pg"
    RANGE_IOL = "range_iol"
    LOS_IOL = "los_iol"
    LOS_IOL_UNCORRECTED = "los_iol_uncorrected"


class EvasionDirection(Enum):
    UP = "up"
    DOWN = "down"


class Termination(Enum):
    INTERCEPTED = "intercepted"
    MISS = "miss"
    DIVERGED = "diverged"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class PhysicsConstants:
    """Gravity and the exponential-atmosphere constants for the drag model."""

    g: float = G0
    rho0: float = 1.225          # sea-level density (kg/m^3)
    scale_height: float = 8500.0  # atmosphere scale height (m)

    def __post_init__(self):
        # g and rho0 may be zeroed for symmetry/conservation checks.
        if self.g < 0.0:
            raise ValueError(f"g must be >= 0, got {self.g}")
        if self.rho0 < 0.0:
            raise ValueError(f"rho0 must be >= 0, got {self.rho0}")
        if self.scale_height <= 0.0:
            raise ValueError(f"scale_height must be > 0, got {self.scale_height}")


@dataclass(frozen=True)
class VehicleParams:
    """Constant thrust, mass and drag parameters of one vehicle."""

    thrust: float            # N
    mass: float              # kg
    drag_coefficient: float  # dimensionless
    frontal_area: float      # m^2

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.thrust < 0.0:
            raise ValueError(f"thrust must be >= 0, got {self.thrust}")
        if self.drag_coefficient < 0.0:
            raise ValueError(f"drag_coefficient must be >= 0, got {self.drag_coefficient}")
        if self.frontal_area < 0.0:
            raise ValueError(f"frontal_area must be >= 0, got {self.frontal_area}")


@dataclass(frozen=True)
class EngagementState:
    """Full kinematic state of both vehicles at one instant.

    Carries the polar relative coordinates (r, psi) and the Cartesian
    positions redundantly; the two stay consistent along integrated
    trajectories to within integration tolerance. psi is integrated as a
    continuous angle and may leave (-pi, pi].
    """

    t: float        # s
    r: float        # range (m)
    psi: float      # LOS angle (rad)
    v_p: float      # pursuer speed (m/s)
    gamma_p: float  # pursuer flight-path angle (rad)
    v_e: float      # evader speed (m/s)
    gamma_e: float  # evader flight-path angle (rad)
    d_p: float      # pursuer downrange (m)
    h_p: float      # pursuer altitude (m)
    d_e: float      # evader downrange (m)
    h_e: float      # evader altitude (m)

    @property
    def pos_p(self) -> tuple[float, float]:
        return (self.d_p, self.h_p)

    @property
    def pos_e(self) -> tuple[float, float]:
        return (self.d_e, self.h_e)


@dataclass(frozen=True)
class StateRates:
    """Time derivative of every dynamic EngagementState field."""

    r_dot: float
    psi_dot: float
    v_p_dot: float
    gamma_p_dot: float
    v_e_dot: float
    gamma_e_dot: float
    d_p_dot: float
    h_p_dot: float
    d_e_dot: float
    h_e_dot: float


@dataclass(frozen=True)
class EvasionSpec:
    """Step maneuver: zero normal acceleration before start_time, then a
    constant pull of the given magnitude, signed by direction."""

    start_time: float    # s
    direction: EvasionDirection = EvasionDirection.UP
    magnitude: float = 10.0 * G0  # m/s^2

    def __post_init__(self):
        if self.start_time < 0.0:
            raise ValueError(f"start_time must be >= 0, got {self.start_time}")
        if self.magnitude < 0.0:
            raise ValueError(f"magnitude must be >= 0, got {self.magnitude}")


@dataclass(frozen=True)
class MembershipParams:
    """Shape of the IOL-branch membership function on s = sin(psi - gamma_p):
    zero inside the dead band, linear ramp to one at ramp_end, one beyond."""

    dead_band: float = 0.1
    ramp_end: float = 0.2

    def __post_init__(self):
        if not (0.0 < self.dead_band < self.ramp_end <= 1.0):
            raise ValueError(
                f"need 0 < dead_band < ramp_end <= 1, got {self.dead_band}, {self.ramp_end}"
            )


@dataclass(frozen=True)
class GuidanceSpec:
    """Which guidance law to fly and its gains/limits.

    saturation_limit is the symmetric command clamp in m/s^2; None disables
    clamping. beta_floor keeps the LOS-law denominator invertible near
    |psi - gamma_p| = 90 deg.
    """

    law: LawKind
    pg_gain: float = 3.0               # dimensionless
    k_range: float = 0.5               # 1/s^2
    k_los: float = 2.0                 # 1/s
    membership: MembershipParams = field(default_factory=MembershipParams)
    saturation_limit: Optional[float] = 40.0 * G0  # m/s^2
    beta_floor: float = 1e-6           # 1/m

    def __post_init__(self):
        if self.pg_gain <= 0.0:
            raise ValueError(f"pg_gain must be > 0, got {self.pg_gain}")
        if self.k_range <= 0.0:
            raise ValueError(f"k_range must be > 0, got {self.k_range}")
        if self.k_los <= 0.0:
            raise ValueError(f"k_los must be > 0, got {self.k_los}")
        if self.saturation_limit is not None and self.saturation_limit <= 0.0:
            raise ValueError(f"saturation_limit must be > 0, got {self.saturation_limit}")
        if self.beta_floor <= 0.0:
            raise ValueError(f"beta_floor must be > 0, got {self.beta_floor}")


@dataclass(frozen=True)
class GuidanceCommand:
    """One commanded pursuer normal acceleration with its blend weight."""

    u: float               # m/s^2, post-saturation
    mu_iol: float          # weight of the IOL branch in [0, 1]
    saturated: bool
    near_singular: bool = False  # LOS-law beta floor engaged


@dataclass(frozen=True)
class Scenario:
    """Initial conditions, vehicles, guidance and integration settings for
    one engagement. Initial range/LOS angle derive from the positions."""

    v_p0: float
    gamma_p0: float
    h_p0: float
    d_p0: float
    v_e0: float
    gamma_e0: float
    h_e0: float
    d_e0: float
    params_p: VehicleParams
    params_e: VehicleParams
    guidance: GuidanceSpec
    evasion: Optional[EvasionSpec] = None
    consts: PhysicsConstants = field(default_factory=PhysicsConstants)
    dt: float = 0.001           # s
    t_max: float = 50.0         # s
    success_radius: float = 10.0  # m
    diverge_factor: float = 10.0  # terminate when r > diverge_factor * r0

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.t_max <= self.dt:
            raise ValueError(f"t_max must exceed dt, got {self.t_max}")
        if self.success_radius <= 0.0:
            raise ValueError(f"success_radius must be > 0, got {self.success_radius}")
        if self.v_p0 <= 0.0 or self.v_e0 <= 0.0:
            raise ValueError("initial speeds must be > 0")
        if self.diverge_factor <= 1.0:
            raise ValueError(f"diverge_factor must be > 1, got {self.diverge_factor}")
        if self.r0 <= self.success_radius:
            raise ValueError(
                f"initial range {self.r0:.3f} must exceed success_radius {self.success_radius}"
            )

    @property
    def r0(self) -> float:
        return math.hypot(self.d_e0 - self.d_p0, self.h_e0 - self.h_p0)

    @property
    def psi0(self) -> float:
        return math.atan2(self.h_e0 - self.h_p0, self.d_e0 - self.d_p0)

    def initial_state(self) -> EngagementState:
        return EngagementState(
            t=0.0, r=self.r0, psi=self.psi0,
            v_p=self.v_p0, gamma_p=self.gamma_p0,
            v_e=self.v_e0, gamma_e=self.gamma_e0,
            d_p=self.d_p0, h_p=self.h_p0, d_e=self.d_e0, h_e=self.h_e0,
        )


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one engagement at its closest approach."""

    intercept_time: float    # s
    miss_distance: float     # m
    closing_velocity: float  # m/s, -Rdot at closest approach
    success: bool
    termination: Termination
