"""Planar pursuer-evader interception simulator.

Guidance laws: classical proportional guidance, range-based feedback
linearization blended with PG through a fuzzy membership on
sin(psi - gamma_p), and LOS-rate-based feedback linearization with a
heading-aware sign correction. A fixed-step RK4 engine integrates full
engagements; a seeded Monte Carlo harness reruns identical initial
conditions under every law and aggregates the outcome statistics.

The hot loop runs in the compiled `_fastloop` extension when available and
falls back to the pure-Python engine otherwise (see `pursuitsim.backend`).
"""

from . import _backend as backend
from .dynamics import DomainError, derivatives, drag, evader_normal_accel
from .engine import (
    TRAJECTORY_COLUMNS,
    SimulationOutput,
    Trajectory,
    closest_approach,
    rk4_step,
    simulate,
)
from .guidance import (
    SingularGuidanceError,
    compute_command,
    los_iol_alpha,
    los_iol_beta,
    los_iol_command,
    los_rate,
    membership_iol,
    pg_command,
    range_iol_alpha,
    range_iol_beta,
    range_iol_blended,
    range_iol_raw,
    saturate,
    wrap_angle,
)
from .montecarlo import (
    CampaignConfig,
    CampaignOutput,
    CampaignStats,
    EvasionRanges,
    MetricStats,
    SampleRanges,
    ScenarioDraw,
    aggregate,
    run_campaign,
    sample_scenario,
    trial_rng,
)
from .types import (
    EngagementState,
    EvasionDirection,
    EvasionSpec,
    GuidanceCommand,
    GuidanceSpec,
    LawKind,
    MembershipParams,
    PhysicsConstants,
    Scenario,
    StateRates,
    Termination,
    TrialResult,
    VehicleParams,
)

__version__ = "0.1.0"
