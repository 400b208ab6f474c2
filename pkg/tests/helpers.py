"""Shared analysis helpers for the acceptance suite."""

import numpy as np

import pursuitsim as ps


def unblended_segments(trajectory, min_len=50):
    """Maximal sample runs where the command was pure IOL (mu == 1) and
    unsaturated."""
    ok = (trajectory.column("mu_iol") == 1.0) & (trajectory.column("saturated") == 0.0)
    edges = np.flatnonzero(np.diff(np.concatenate(([0], ok.astype(int), [0]))))
    return [(int(a), int(b)) for a, b in zip(edges[::2], edges[1::2]) if b - a >= min_len]


def los_rate_column(trajectory):
    return (
        trajectory.column("V_P") * np.sin(trajectory.column("psi") - trajectory.column("gamma_P"))
        - trajectory.column("V_E") * np.sin(trajectory.column("psi") - trajectory.column("gamma_E"))
    ) / trajectory.column("R")


def r_dot_column(trajectory):
    return (
        trajectory.column("V_E") * np.cos(trajectory.column("psi") - trajectory.column("gamma_E"))
        - trajectory.column("V_P") * np.cos(trajectory.column("psi") - trajectory.column("gamma_P"))
    )


def resolvable(trajectory, dt, steps=50):
    """Samples far enough from a zero-range flyby for dt-resolution finite
    differences to be meaningful: R >= steps * |Rdot| * dt."""
    return trajectory.column("R") >= steps * np.abs(r_dot_column(trajectory)) * dt


def second_difference(values, dt):
    """Central second difference, aligned with values[1:-1]."""
    return (values[:-2] - 2.0 * values[1:-1] + values[2:]) / (dt * dt)


def first_difference(values, dt):
    """Central first difference, aligned with values[1:-1]."""
    return (values[2:] - values[:-2]) / (2.0 * dt)


def evader_coupling_column(trajectory, params_e, consts):
    """Analytic bias the moving evader injects into the LOS-rate loop:
    d(psi_dot)/d(V_E, gamma_E) contracted with the evader's own dynamics."""
    v_e = trajectory.column("V_E")
    gamma_e = trajectory.column("gamma_E")
    psi = trajectory.column("psi")
    r = trajectory.column("R")
    h_e = trajectory.column("h_E")
    drag_e = (0.5 * consts.rho0 * np.exp(-h_e / consts.scale_height)
              * params_e.drag_coefficient * params_e.frontal_area * v_e * v_e)
    v_e_dot = (params_e.thrust - drag_e) / params_e.mass - consts.g * np.sin(gamma_e)
    gamma_e_dot = -consts.g * np.cos(gamma_e) / v_e  # no evasive maneuver
    return (-v_e_dot * np.sin(psi - gamma_e) + v_e * gamma_e_dot * np.cos(psi - gamma_e)) / r
