"""Planar point-mass equations of motion for pursuer and evader.

Both vehicles fly under constant thrust along the velocity vector, quadratic
drag with an exponential atmosphere, gravity, and a commanded normal
acceleration. The relative motion is carried in polar form (range r, LOS
angle psi) alongside the Cartesian positions.
"""

from __future__ import annotations

import math

from .types import EngagementState, EvasionSpec, EvasionDirection, PhysicsConstants, StateRates, VehicleParams


class DomainError(ValueError):
    """The state left the region where the equations of motion are defined."""


def drag(v: float, h: float, params: VehicleParams, consts: PhysicsConstants) -> float:
    """Drag force (N) at speed v and altitude h: 0.5 rho(h) C_d S v^2 with
    rho(h) = rho0 exp(-h / scale_height)."""
    if v < 0.0:
        raise DomainError(f"speed must be >= 0, got {v}")
    rho = consts.rho0 * math.exp(-h / consts.scale_height)
    return 0.5 * rho * params.drag_coefficient * params.frontal_area * v * v


def evader_normal_accel(t: float, evasion: EvasionSpec | None) -> float:
    """Evader n_z at time t: zero before the evasion starts (gravity enters
    the flight-path equation separately), a constant signed pull afterwards.
    The onset interval is closed on the left: the maneuver is active at
    exactly t = start_time."""
    if evasion is None or t < evasion.start_time:
        return 0.0
    if evasion.direction is EvasionDirection.UP:
        return evasion.magnitude
    return -evasion.magnitude


def derivatives(
    state: EngagementState,
    u: float,
    n_ze: float,
    params_p: VehicleParams,
    params_e: VehicleParams,
    consts: PhysicsConstants,
) -> StateRates:
    """Time derivative of every state field for pursuer command u and evader
    normal acceleration n_ze."""
    if state.r <= 0.0:
        raise DomainError(f"range must be > 0, got {state.r}")
    if state.v_p <= 0.0:
        raise DomainError(f"pursuer speed must be > 0, got {state.v_p}")
    if state.v_e <= 0.0:
        raise DomainError(f"evader speed must be > 0, got {state.v_e}")

    rates = _rates_flat(
        state.r, state.psi, state.v_p, state.gamma_p, state.v_e, state.gamma_e,
        state.h_p, state.h_e, u, n_ze,
        params_p.thrust, params_p.mass, params_p.drag_coefficient, params_p.frontal_area,
        params_e.thrust, params_e.mass, params_e.drag_coefficient, params_e.frontal_area,
        consts.g, consts.rho0, consts.scale_height,
    )
    return StateRates(*rates)


def _rates_flat(
    r, psi, v_p, gamma_p, v_e, gamma_e, h_p, h_e, u, n_ze,
    t_p, m_p, cd_p, s_p, t_e, m_e, cd_e, s_e, g, rho0, hscale,
):
    """Scalar core of `derivatives`; the compiled kernel mirrors this
    expression for expression."""
    d_p = 0.5 * rho0 * math.exp(-h_p / hscale) * cd_p * s_p * v_p * v_p
    d_e = 0.5 * rho0 * math.exp(-h_e / hscale) * cd_e * s_e * v_e * v_e
    sin_p = math.sin(psi - gamma_p)
    cos_p = math.cos(psi - gamma_p)
    sin_e = math.sin(psi - gamma_e)
    cos_e = math.cos(psi - gamma_e)

    r_dot = v_e * cos_e - v_p * cos_p
    psi_dot = (v_p * sin_p - v_e * sin_e) / r
    v_p_dot = (t_p - d_p) / m_p - g * math.sin(gamma_p)
    gamma_p_dot = -(u + g * math.cos(gamma_p)) / v_p
    v_e_dot = (t_e - d_e) / m_e - g * math.sin(gamma_e)
    gamma_e_dot = -(n_ze + g * math.cos(gamma_e)) / v_e
    d_p_dot = v_p * math.cos(gamma_p)
    h_p_dot = v_p * math.sin(gamma_p)
    d_e_dot = v_e * math.cos(gamma_e)
    h_e_dot = v_e * math.sin(gamma_e)
    return (r_dot, psi_dot, v_p_dot, gamma_p_dot, v_e_dot, gamma_e_dot,
            d_p_dot, h_p_dot, d_e_dot, h_e_dot)
