"""Fixed-step engagement integration with guidance in the loop.

The command is recomputed from the sampled state once per step and held
constant across the RK4 substeps (zero-order hold). A trial ends at the
first sampled local range minimum that is also the running global minimum
(closest approach, refined by parabolic interpolation), on divergence
(range exceeding diverge_factor times the initial range), or at t_max.

This module is the readable reference implementation; `pursuitsim._fastloop`
is a compiled mirror of the same arithmetic, selected via `_backend`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _backend
from .dynamics import DomainError, _rates_flat, evader_normal_accel
from .guidance import compute_command
from .types import (
    EngagementState,
    EvasionDirection,
    GuidanceCommand,
    LawKind,
    Scenario,
    Termination,
    TrialResult,
)

#: Column order of Trajectory.data and of the trajectory CSV.
TRAJECTORY_COLUMNS = (
    "t", "R", "psi", "V_P", "gamma_P", "V_E", "gamma_E",
    "d_P", "h_P", "d_E", "h_E", "u", "mu_iol", "saturated",
)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled (state, command) history of one trial."""

    data: np.ndarray  # shape (n, len(TRAJECTORY_COLUMNS))

    def __len__(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, TRAJECTORY_COLUMNS.index(name)]

    def state(self, i: int) -> EngagementState:
        row = self.data[i]
        return EngagementState(
            t=row[0], r=row[1], psi=row[2], v_p=row[3], gamma_p=row[4],
            v_e=row[5], gamma_e=row[6], d_p=row[7], h_p=row[8],
            d_e=row[9], h_e=row[10],
        )

    def command(self, i: int) -> GuidanceCommand:
        row = self.data[i]
        return GuidanceCommand(u=row[11], mu_iol=row[12], saturated=bool(row[13]))


@dataclass(frozen=True)
class SimulationOutput:
    trajectory: Optional[Trajectory]
    result: TrialResult


def rk4_step(
    state: EngagementState,
    u: float,
    n_ze: float,
    params_p,
    params_e,
    consts,
    dt: float,
) -> EngagementState:
    """One classical RK4 step with both commands held constant."""
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    y = [state.r, state.psi, state.v_p, state.gamma_p, state.v_e,
         state.gamma_e, state.d_p, state.h_p, state.d_e, state.h_e]
    yn = _rk4_flat(
        y, u, n_ze, dt,
        params_p.thrust, params_p.mass, params_p.drag_coefficient, params_p.frontal_area,
        params_e.thrust, params_e.mass, params_e.drag_coefficient, params_e.frontal_area,
        consts.g, consts.rho0, consts.scale_height,
    )
    return EngagementState(
        t=state.t + dt, r=yn[0], psi=yn[1], v_p=yn[2], gamma_p=yn[3],
        v_e=yn[4], gamma_e=yn[5], d_p=yn[6], h_p=yn[7], d_e=yn[8], h_e=yn[9],
    )


def _rk4_flat(y, u, n_ze, dt, t_p, m_p, cd_p, s_p, t_e, m_e, cd_e, s_e, g, rho0, hscale):
    """Classical RK4 update on the flat 10-state; mirrored by the kernel."""
    def f(z):
        if z[0] <= 0.0:
            raise DomainError(f"range must be > 0, got {z[0]}")
        if z[2] <= 0.0:
            raise DomainError(f"pursuer speed must be > 0, got {z[2]}")
        if z[4] <= 0.0:
            raise DomainError(f"evader speed must be > 0, got {z[4]}")
        return _rates_flat(
            z[0], z[1], z[2], z[3], z[4], z[5], z[7], z[9], u, n_ze,
            t_p, m_p, cd_p, s_p, t_e, m_e, cd_e, s_e, g, rho0, hscale,
        )

    k1 = f(y)
    k2 = f([y[i] + 0.5 * dt * k1[i] for i in range(10)])
    k3 = f([y[i] + 0.5 * dt * k2[i] for i in range(10)])
    k4 = f([y[i] + dt * k3[i] for i in range(10)])
    return [
        y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        for i in range(10)
    ]


def closest_approach(
    s0: EngagementState, s1: EngagementState, s2: EngagementState
) -> tuple[float, float, float]:
    """Refine a three-sample range-minimum bracket.

    Fits a parabola to (t, R) of the samples (middle must be the smallest)
    and returns (t*, interpolated miss, closing velocity), the last being
    -Rdot evaluated at the middle sample. Falls back to the middle sample
    verbatim when the fitted curvature is not positive.
    """
    if not (s1.r <= s0.r and s1.r <= s2.r):
        raise ValueError("middle sample must have the smallest range")
    closing = -_r_dot(s1)
    curv = s0.r - 2.0 * s1.r + s2.r
    if curv <= 0.0:
        return s1.t, s1.r, closing
    delta = 0.25 * (s2.t - s0.t) * (s0.r - s2.r) / curv
    miss = s1.r - (s0.r - s2.r) * (s0.r - s2.r) / (8.0 * curv)
    if miss < 0.0:
        miss = 0.0
    return s1.t + delta, miss, closing


def _r_dot(s: EngagementState) -> float:
    return s.v_e * math.cos(s.psi - s.gamma_e) - s.v_p * math.cos(s.psi - s.gamma_p)


def _bracket_minimum(
    s0: EngagementState, s1: EngagementState, s2: EngagementState
) -> tuple[float, float, float]:
    """Closest approach from a range-minimum bracket, interpolating R^2.

    R(t) of a sub-step flyby has a |.|-shaped kink, but R^2 of locally
    linear relative motion is exactly quadratic, so the R^2 vertex recovers
    deep sub-step misses that a parabola in R overestimates by O(closing*dt).
    """
    closing = -_r_dot(s1)
    q0, q1, q2 = s0.r * s0.r, s1.r * s1.r, s2.r * s2.r
    curv = q0 - 2.0 * q1 + q2
    if curv <= 0.0:
        return s1.t, s1.r, closing
    delta = 0.25 * (s2.t - s0.t) * (q0 - q2) / curv
    vertex = q1 - (q0 - q2) * (q0 - q2) / (8.0 * curv)
    miss = math.sqrt(vertex) if vertex > 0.0 else 0.0
    return s1.t + delta, miss, closing


def _linear_flyby(s: EngagementState) -> tuple[float, float, float]:
    """Closest approach when the next step cannot be integrated (the range
    would cross zero mid-step): extrapolate straight-line relative motion
    from the last valid sample. Works in Cartesian coordinates, which stay
    meaningful even when the polar range state is at the edge of validity."""
    rel_x = s.d_e - s.d_p
    rel_y = s.h_e - s.h_p
    vel_x = s.v_e * math.cos(s.gamma_e) - s.v_p * math.cos(s.gamma_p)
    vel_y = s.v_e * math.sin(s.gamma_e) - s.v_p * math.sin(s.gamma_p)
    dist = math.hypot(rel_x, rel_y)
    if dist <= 0.0:
        return s.t, 0.0, 0.0
    closing = -(rel_x * vel_x + rel_y * vel_y) / dist
    vv = vel_x * vel_x + vel_y * vel_y
    if vv <= 0.0:
        return s.t, dist, closing
    tau = -(rel_x * vel_x + rel_y * vel_y) / vv
    if tau <= 0.0:
        return s.t, dist, closing
    mx = rel_x + tau * vel_x
    my = rel_y + tau * vel_y
    return s.t + tau, math.hypot(mx, my), closing


def _signed_evasion_nz(scenario: Scenario) -> float:
    ev = scenario.evasion
    if ev is None:
        return 0.0
    return ev.magnitude if ev.direction is EvasionDirection.UP else -ev.magnitude


def simulate(
    scenario: Scenario, record: bool = True, backend: str | None = None
) -> SimulationOutput:
    """Run one engagement; deterministic for a fixed scenario.

    backend: None picks the active backend ("compiled" when the extension
    imported, else "python"); pass "python" or "compiled" to force one.
    """
    name = _backend.resolve(backend)
    if name == "compiled":
        return _simulate_compiled(scenario, record)
    return _simulate_python(scenario, record)


def _law_code(law: LawKind) -> int:
    return {
        LawKind.PG: 0,
        LawKind.RANGE_IOL: 1,
        LawKind.LOS_IOL: 2,
        LawKind.LOS_IOL_UNCORRECTED: 3,
    }[law]


_TERMINATIONS = (
    Termination.INTERCEPTED, Termination.MISS,
    Termination.DIVERGED, Termination.TIMEOUT,
)


def _result_from_flat(status, t_star, miss, closing, success_radius) -> TrialResult:
    return TrialResult(
        intercept_time=t_star,
        miss_distance=miss,
        closing_velocity=closing,
        success=miss < success_radius,
        termination=_TERMINATIONS[status],
    )


def _simulate_compiled(scenario: Scenario, record: bool) -> SimulationOutput:
    from . import _fastloop

    sc = scenario
    gs = sc.guidance
    n_max = int(round(sc.t_max / sc.dt))
    status, t_star, miss, closing, n_samples, data = _fastloop.run_engagement(
        sc.r0, sc.psi0, sc.v_p0, sc.gamma_p0, sc.v_e0, sc.gamma_e0,
        sc.d_p0, sc.h_p0, sc.d_e0, sc.h_e0,
        sc.params_p.thrust, sc.params_p.mass,
        sc.params_p.drag_coefficient, sc.params_p.frontal_area,
        sc.params_e.thrust, sc.params_e.mass,
        sc.params_e.drag_coefficient, sc.params_e.frontal_area,
        sc.consts.g, sc.consts.rho0, sc.consts.scale_height,
        _law_code(gs.law), gs.pg_gain, gs.k_range, gs.k_los,
        gs.membership.dead_band, gs.membership.ramp_end,
        math.inf if gs.saturation_limit is None else gs.saturation_limit,
        gs.beta_floor,
        sc.evasion is not None,
        0.0 if sc.evasion is None else sc.evasion.start_time,
        _signed_evasion_nz(sc),
        sc.dt, n_max, sc.diverge_factor,
        record,
    )
    if status == 0 and miss >= sc.success_radius:
        status = 1
    trajectory = Trajectory(data=np.asarray(data)[:n_samples].copy()) if record else None
    result = _result_from_flat(status, t_star, miss, closing, sc.success_radius)
    return SimulationOutput(trajectory=trajectory, result=result)


def _simulate_python(scenario: Scenario, record: bool) -> SimulationOutput:
    sc = scenario
    state = sc.initial_state()
    r0 = state.r
    n_max = int(round(sc.t_max / sc.dt))
    rows = np.empty((n_max + 1, len(TRAJECTORY_COLUMNS))) if record else None
    ev_nz = _signed_evasion_nz(sc)
    ev_start = sc.evasion.start_time if sc.evasion is not None else math.inf

    prev2: Optional[EngagementState] = None
    prev: Optional[EngagementState] = None
    min_state = state  # running global minimum of sampled range

    n = 0  # samples recorded
    k = 0  # current sample index; t = k * dt
    while True:
        try:
            cmd = compute_command(state, sc.guidance, sc.params_p, sc.consts)
        except DomainError:  # unreachable with post-step validation; belt and braces
            status = 0
            t_star, miss, closing = _linear_flyby(prev if prev is not None else state)
            break
        if record:
            rows[n] = (
                state.t, state.r, state.psi, state.v_p, state.gamma_p,
                state.v_e, state.gamma_e, state.d_p, state.h_p,
                state.d_e, state.h_e, cmd.u, cmd.mu_iol, float(cmd.saturated),
            )
        n += 1

        # Closest approach: the previous sample is a local range minimum and
        # carries the smallest range seen so far.
        if (
            prev is not None
            and prev2 is not None
            and state.r > prev.r
            and prev.r <= prev2.r
            and prev.r <= min_state.r
        ):
            status = 0
            t_star, miss, closing = _bracket_minimum(prev2, prev, state)
            break
        if state.r > sc.diverge_factor * r0:
            status = 2
            t_star, miss, closing = min_state.t, min_state.r, -_r_dot(min_state)
            break
        if k >= n_max:
            status = 3
            t_star, miss, closing = min_state.t, min_state.r, -_r_dot(min_state)
            break

        n_ze = ev_nz if state.t >= ev_start else 0.0
        try:
            nxt = rk4_step(state, cmd.u, n_ze, sc.params_p, sc.params_e, sc.consts, sc.dt)
        except DomainError:
            status = 0
            t_star, miss, closing = _linear_flyby(state)
            break
        if nxt.r <= 0.0 or nxt.v_p <= 0.0 or nxt.v_e <= 0.0:
            # The step itself left the valid domain (range crossed zero
            # inside the step); reconstruct the flyby it jumped over.
            status = 0
            t_star, miss, closing = _linear_flyby(state)
            break
        k += 1
        # Rebuild with t = k*dt so sample times are exactly step-uniform.
        state, prev, prev2 = (
            EngagementState(
                t=k * sc.dt, r=nxt.r, psi=nxt.psi, v_p=nxt.v_p, gamma_p=nxt.gamma_p,
                v_e=nxt.v_e, gamma_e=nxt.gamma_e, d_p=nxt.d_p, h_p=nxt.h_p,
                d_e=nxt.d_e, h_e=nxt.h_e,
            ),
            state,
            prev,
        )
        if state.r < min_state.r:
            min_state = state

    if status == 0 and miss >= sc.success_radius:
        status = 1
    result = _result_from_flat(status, t_star, miss, closing, sc.success_radius)
    trajectory = Trajectory(data=rows[:n].copy()) if record else None
    return SimulationOutput(trajectory=trajectory, result=result)
