"""Pursuer normal-acceleration commands: proportional guidance, range-based
feedback linearization with fuzzy blending, and LOS-rate-based feedback
linearization with divergence correction.

The feedback-linearizing laws invert the input coefficient of the chosen
output (range or LOS rate); the range law is singular on the tail-chase /
head-on set sin(psi - gamma_p) = 0 and is therefore blended into
proportional guidance there, while the LOS law floors its denominator and
flips sign when the pursuer heading points away from the line of sight.
"""

from __future__ import annotations

import math

from .dynamics import DomainError, drag
from .types import (
    EngagementState,
    GuidanceCommand,
    GuidanceSpec,
    LawKind,
    MembershipParams,
    PhysicsConstants,
    VehicleParams,
)


class SingularGuidanceError(ArithmeticError):
    """The raw range-IOL inversion was evaluated exactly on its singular set."""


def wrap_angle(x: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    w = math.remainder(x, math.tau)
    if w <= -math.pi:
        w += math.tau
    return w


def saturate(u: float, limit: float | None) -> float:
    """Clamp u to [-limit, limit]; identity when limit is None."""
    if limit is None:
        return u
    if u > limit:
        return limit
    if u < -limit:
        return -limit
    return u


def los_rate(state: EngagementState) -> float:
    """LOS angular rate psi_dot (rad/s)."""
    if state.r <= 0.0:
        raise DomainError(f"range must be > 0, got {state.r}")
    return (
        state.v_p * math.sin(state.psi - state.gamma_p)
        - state.v_e * math.sin(state.psi - state.gamma_e)
    ) / state.r


def pg_command(state: EngagementState, pg_gain: float, consts: PhysicsConstants) -> float:
    """Classical proportional guidance command (pre-saturation)."""
    if state.r <= 0.0:
        raise DomainError(f"range must be > 0, got {state.r}")
    return (
        -pg_gain
        * (state.v_p / state.r)
        * (
            state.v_p * math.sin(state.psi - state.gamma_p)
            - state.v_e * math.sin(state.psi - state.gamma_e)
        )
        - consts.g * math.cos(state.gamma_p)
    )


def range_iol_alpha(
    state: EngagementState, params_p: VehicleParams, consts: PhysicsConstants
) -> float:
    """Drift term of the second range derivative: the u-free part of Rddot
    with the evader state held fixed.

    Equals delta^2/R + cos(psi-gamma_p)(D_p-T_p)/m_p + g sin(psi) with
    delta = V_e sin(psi-gamma_e) - V_p sin(psi-gamma_p); the g sin(psi)
    term expands to g(sin gamma_p cos(psi-gamma_p) + cos gamma_p
    sin(psi-gamma_p)), both gravity contributions of the pursuer channel.
    """
    if state.r <= 0.0:
        raise DomainError(f"range must be > 0, got {state.r}")
    d_p = drag(state.v_p, state.h_p, params_p, consts)
    delta = (
        state.v_e * math.sin(state.psi - state.gamma_e)
        - state.v_p * math.sin(state.psi - state.gamma_p)
    )
    return (
        delta * delta / state.r
        + math.cos(state.psi - state.gamma_p) * (d_p - params_p.thrust) / params_p.mass
        + consts.g * math.sin(state.psi)
    )


def range_iol_beta(state: EngagementState) -> float:
    """Input coefficient of the range law: sin(psi - gamma_p). Zero on the
    tail-chase / head-on set; callers must treat small values as singular."""
    return math.sin(state.psi - state.gamma_p)


def range_iol_raw(
    state: EngagementState,
    k_range: float,
    params_p: VehicleParams,
    consts: PhysicsConstants,
) -> float:
    """Unblended range-IOL command beta^-1 (-alpha + v) with v = -k_range R."""
    beta = range_iol_beta(state)
    if beta == 0.0:
        raise SingularGuidanceError("range-IOL beta is exactly zero (psi - gamma_p = n*pi)")
    alpha = range_iol_alpha(state, params_p, consts)
    v = -k_range * state.r
    return (-alpha + v) / beta


def membership_iol(s: float, params: MembershipParams) -> float:
    """IOL-branch weight for s = sin(psi - gamma_p): 0 inside the dead band,
    linear ramp, 1 from ramp_end on. Even and continuous; the PG weight is
    its complement."""
    a = abs(s)
    if a <= params.dead_band:
        return 0.0
    if a >= params.ramp_end:
        return 1.0
    return (a - params.dead_band) / (params.ramp_end - params.dead_band)


def membership_pg(s: float, params: MembershipParams) -> float:
    """Proportional-guidance weight, the complement of membership_iol."""
    return 1.0 - membership_iol(s, params)


def range_iol_blended(
    state: EngagementState,
    spec: GuidanceSpec,
    params_p: VehicleParams,
    consts: PhysicsConstants,
) -> GuidanceCommand:
    """Fuzzy blend of the raw range-IOL command with proportional guidance.

    The IOL branch is never evaluated at zero weight, so the blend stays
    finite through the singular set.
    """
    s = range_iol_beta(state)
    mu = membership_iol(s, spec.membership)
    if mu == 0.0:
        u = pg_command(state, spec.pg_gain, consts)
    elif mu == 1.0:
        u = range_iol_raw(state, spec.k_range, params_p, consts)
    else:
        u_iol = range_iol_raw(state, spec.k_range, params_p, consts)
        u_pg = pg_command(state, spec.pg_gain, consts)
        u = mu * u_iol + (1.0 - mu) * u_pg
    u_sat = saturate(u, spec.saturation_limit)
    return GuidanceCommand(u=u_sat, mu_iol=mu, saturated=u_sat != u)


def los_iol_alpha(
    state: EngagementState, params_p: VehicleParams, consts: PhysicsConstants
) -> float:
    """Drift term of the LOS-rate derivative: the u-free part of psi_ddot
    with the evader state held fixed."""
    if state.r <= 0.0:
        raise DomainError(f"range must be > 0, got {state.r}")
    d_p = drag(state.v_p, state.h_p, params_p, consts)
    sin_p = math.sin(state.psi - state.gamma_p)
    cos_p = math.cos(state.psi - state.gamma_p)
    sin_e = math.sin(state.psi - state.gamma_e)
    cos_e = math.cos(state.psi - state.gamma_e)
    return (
        2.0
        * (state.v_e * cos_e - state.v_p * cos_p)
        * (state.v_e * sin_e - state.v_p * sin_p)
        / (state.r * state.r)
        - sin_p
        * ((d_p - params_p.thrust) / params_p.mass + consts.g * math.sin(state.gamma_p))
        / state.r
        + consts.g * math.cos(state.gamma_p) * cos_p / state.r
    )


def los_iol_beta(state: EngagementState) -> float:
    """Input coefficient of the LOS law: cos(psi - gamma_p) / R."""
    if state.r <= 0.0:
        raise DomainError(f"range must be > 0, got {state.r}")
    return math.cos(state.psi - state.gamma_p) / state.r


def _iol_combine(alpha: float, beta: float, v: float) -> float:
    """Linearizing input beta^-1 (-alpha + v)."""
    return (-alpha + v) / beta


def _correction_sign(gamma_p: float, psi: float) -> float:
    """-1 when the pursuer heading points more than 90 deg off the LOS
    (wrapped), +1 otherwise; the boundary itself does not flip."""
    return -1.0 if abs(wrap_angle(gamma_p - psi)) > 0.5 * math.pi else 1.0


def los_iol_command(
    state: EngagementState,
    spec: GuidanceSpec,
    params_p: VehicleParams,
    consts: PhysicsConstants,
    corrected: bool = True,
) -> GuidanceCommand:
    """LOS-rate-IOL command with v = -k_los psi_dot.

    |beta| is floored at spec.beta_floor before inversion (flag reported);
    with `corrected`, the command sign flips when |gamma_p - psi| > 90 deg
    so the pursuer cannot settle on a receding zero-LOS-rate course.
    """
    beta = los_iol_beta(state)
    near_singular = abs(beta) < spec.beta_floor
    if near_singular:
        beta = math.copysign(spec.beta_floor, beta)
    alpha = los_iol_alpha(state, params_p, consts)
    v = -spec.k_los * los_rate(state)
    u = _iol_combine(alpha, beta, v)
    if corrected:
        u = _correction_sign(state.gamma_p, state.psi) * u
    u_sat = saturate(u, spec.saturation_limit)
    return GuidanceCommand(
        u=u_sat, mu_iol=1.0, saturated=u_sat != u, near_singular=near_singular
    )


def compute_command(
    state: EngagementState,
    spec: GuidanceSpec,
    params_p: VehicleParams,
    consts: PhysicsConstants,
) -> GuidanceCommand:
    """Dispatch to the configured guidance law."""
    if spec.law is LawKind.PG:
        u = pg_command(state, spec.pg_gain, consts)
        u_sat = saturate(u, spec.saturation_limit)
        return GuidanceCommand(u=u_sat, mu_iol=0.0, saturated=u_sat != u)
    if spec.law is LawKind.RANGE_IOL:
        return range_iol_blended(state, spec, params_p, consts)
    if spec.law is LawKind.LOS_IOL:
        return los_iol_command(state, spec, params_p, consts, corrected=True)
    if spec.law is LawKind.LOS_IOL_UNCORRECTED:
        return los_iol_command(state, spec, params_p, consts, corrected=False)
    raise ValueError(f"unknown guidance law {spec.law!r}")
