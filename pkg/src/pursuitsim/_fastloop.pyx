# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled engagement loop.

Expression-for-expression mirror of the pure-Python reference in
`pursuitsim.engine` / `pursuitsim.guidance` / `pursuitsim.dynamics`; the
backend parity tests hold the two to identical trajectories. Keep any change
here in lockstep with the reference.
"""

from libc.math cimport M_PI, copysign, cos, exp, fabs, hypot, remainder, sin, sqrt

import numpy as np

cdef enum:
    NSTATE = 10
    NCOL = 14  # t, r, psi, v_p, gamma_p, v_e, gamma_e, d_p, h_p, d_e, h_e, u, mu, saturated


cdef struct Params:
    double t_p, m_p, cd_p, s_p
    double t_e, m_e, cd_e, s_e
    double g, rho0, hscale
    int law
    double pg_gain, k_range, k_los
    double dead_band, ramp_end, sat_limit, beta_floor
    double u, n_ze


cdef int _rates(double* y, Params* p, double* out) nogil:
    # y: r, psi, v_p, gamma_p, v_e, gamma_e, d_p, h_p, d_e, h_e
    cdef double r = y[0], psi = y[1], v_p = y[2], gamma_p = y[3]
    cdef double v_e = y[4], gamma_e = y[5], h_p = y[7], h_e = y[9]
    if r <= 0.0 or v_p <= 0.0 or v_e <= 0.0:
        return -1
    cdef double d_p = 0.5 * p.rho0 * exp(-h_p / p.hscale) * p.cd_p * p.s_p * v_p * v_p
    cdef double d_e = 0.5 * p.rho0 * exp(-h_e / p.hscale) * p.cd_e * p.s_e * v_e * v_e
    cdef double sin_p = sin(psi - gamma_p)
    cdef double cos_p = cos(psi - gamma_p)
    cdef double sin_e = sin(psi - gamma_e)
    cdef double cos_e = cos(psi - gamma_e)
    out[0] = v_e * cos_e - v_p * cos_p
    out[1] = (v_p * sin_p - v_e * sin_e) / r
    out[2] = (p.t_p - d_p) / p.m_p - p.g * sin(gamma_p)
    out[3] = -(p.u + p.g * cos(gamma_p)) / v_p
    out[4] = (p.t_e - d_e) / p.m_e - p.g * sin(gamma_e)
    out[5] = -(p.n_ze + p.g * cos(gamma_e)) / v_e
    out[6] = v_p * cos(gamma_p)
    out[7] = v_p * sin(gamma_p)
    out[8] = v_e * cos(gamma_e)
    out[9] = v_e * sin(gamma_e)
    return 0


cdef int _rk4(double* y, Params* p, double dt) nogil:
    cdef double k1[NSTATE]
    cdef double k2[NSTATE]
    cdef double k3[NSTATE]
    cdef double k4[NSTATE]
    cdef double z[NSTATE]
    cdef int i
    if _rates(y, p, k1) != 0:
        return -1
    for i in range(NSTATE):
        z[i] = y[i] + 0.5 * dt * k1[i]
    if _rates(z, p, k2) != 0:
        return -1
    for i in range(NSTATE):
        z[i] = y[i] + 0.5 * dt * k2[i]
    if _rates(z, p, k3) != 0:
        return -1
    for i in range(NSTATE):
        z[i] = y[i] + dt * k3[i]
    if _rates(z, p, k4) != 0:
        return -1
    for i in range(NSTATE):
        y[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    return 0


cdef inline double _wrap_angle(double x) nogil:
    cdef double w = remainder(x, 2.0 * M_PI)
    if w <= -M_PI:
        w += 2.0 * M_PI
    return w


cdef inline double _membership(double s, double dead_band, double ramp_end) nogil:
    cdef double a = fabs(s)
    if a <= dead_band:
        return 0.0
    if a >= ramp_end:
        return 1.0
    return (a - dead_band) / (ramp_end - dead_band)


cdef int _command(double* y, Params* p, double* u_out, double* mu_out,
                  double* sat_out) nogil:
    """Guidance dispatch; mirrors pursuitsim.guidance.compute_command."""
    cdef double r = y[0], psi = y[1], v_p = y[2], gamma_p = y[3]
    cdef double v_e = y[4], gamma_e = y[5], h_p = y[7]
    if r <= 0.0:
        return -1
    cdef double sin_p = sin(psi - gamma_p)
    cdef double sin_e = sin(psi - gamma_e)
    cdef double cos_p = cos(psi - gamma_p)
    cdef double d_p, alpha, beta, v, delta, u, u_iol, u_pg, mu

    mu = 0.0
    if p.law == 0:  # proportional guidance
        u = (-p.pg_gain * (v_p / r) * (v_p * sin_p - v_e * sin_e)
             - p.g * cos(gamma_p))
    elif p.law == 1:  # range-IOL blended with PG
        mu = _membership(sin_p, p.dead_band, p.ramp_end)
        if mu > 0.0:
            d_p = 0.5 * p.rho0 * exp(-h_p / p.hscale) * p.cd_p * p.s_p * v_p * v_p
            delta = v_e * sin_e - v_p * sin_p
            alpha = (delta * delta / r
                     + cos_p * (d_p - p.t_p) / p.m_p
                     + p.g * sin(psi))
            v = -p.k_range * r
            u_iol = (-alpha + v) / sin_p
            if mu == 1.0:
                u = u_iol
            else:
                u_pg = (-p.pg_gain * (v_p / r) * (v_p * sin_p - v_e * sin_e)
                        - p.g * cos(gamma_p))
                u = mu * u_iol + (1.0 - mu) * u_pg
        else:
            u = (-p.pg_gain * (v_p / r) * (v_p * sin_p - v_e * sin_e)
                 - p.g * cos(gamma_p))
    else:  # LOS-rate IOL, law 2 corrected / 3 uncorrected
        mu = 1.0
        beta = cos_p / r
        if fabs(beta) < p.beta_floor:
            beta = copysign(p.beta_floor, beta)
        d_p = 0.5 * p.rho0 * exp(-h_p / p.hscale) * p.cd_p * p.s_p * v_p * v_p
        alpha = (2.0 * (v_e * cos(psi - gamma_e) - v_p * cos_p)
                 * (v_e * sin_e - v_p * sin_p) / (r * r)
                 - sin_p * ((d_p - p.t_p) / p.m_p + p.g * sin(gamma_p)) / r
                 + p.g * cos(gamma_p) * cos_p / r)
        v = -p.k_los * ((v_p * sin_p - v_e * sin_e) / r)
        u = (-alpha + v) / beta
        if p.law == 2 and fabs(_wrap_angle(gamma_p - psi)) > 0.5 * M_PI:
            u = -u

    cdef double u_sat = u
    if u_sat > p.sat_limit:
        u_sat = p.sat_limit
    elif u_sat < -p.sat_limit:
        u_sat = -p.sat_limit
    u_out[0] = u_sat
    mu_out[0] = mu
    sat_out[0] = 1.0 if u_sat != u else 0.0
    return 0


cdef double _rdot(double* y) nogil:
    return y[4] * cos(y[1] - y[5]) - y[2] * cos(y[1] - y[3])


cdef void _linear_flyby(double* y, double t, double* t_star, double* miss,
                        double* closing) nogil:
    """Mirror of engine._linear_flyby: straight-line relative-motion closest
    approach from the last valid sample."""
    cdef double rel_x = y[8] - y[6]
    cdef double rel_y = y[9] - y[7]
    cdef double vel_x = y[4] * cos(y[5]) - y[2] * cos(y[3])
    cdef double vel_y = y[4] * sin(y[5]) - y[2] * sin(y[3])
    cdef double dist = hypot(rel_x, rel_y)
    cdef double vv, tau, mx, my
    if dist <= 0.0:
        t_star[0] = t
        miss[0] = 0.0
        closing[0] = 0.0
        return
    closing[0] = -(rel_x * vel_x + rel_y * vel_y) / dist
    vv = vel_x * vel_x + vel_y * vel_y
    if vv <= 0.0:
        t_star[0] = t
        miss[0] = dist
        return
    tau = -(rel_x * vel_x + rel_y * vel_y) / vv
    if tau <= 0.0:
        t_star[0] = t
        miss[0] = dist
        return
    mx = rel_x + tau * vel_x
    my = rel_y + tau * vel_y
    t_star[0] = t + tau
    miss[0] = hypot(mx, my)


def run_engagement(
    double r0, double psi0, double v_p0, double gamma_p0,
    double v_e0, double gamma_e0,
    double d_p0, double h_p0, double d_e0, double h_e0,
    double t_p, double m_p, double cd_p, double s_p,
    double t_e, double m_e, double cd_e, double s_e,
    double g, double rho0, double hscale,
    int law, double pg_gain, double k_range, double k_los,
    double dead_band, double ramp_end, double sat_limit, double beta_floor,
    bint has_evasion, double ev_start, double ev_nz,
    double dt, long n_max, double diverge_factor,
    bint record,
):
    """Integrate one engagement; returns
    (status, t_star, miss, closing_velocity, n_samples, trajectory|None)
    with status 0=closest approach (the caller splits it into intercepted
    or miss by the success radius), 2=diverged, 3=timeout."""
    cdef Params p
    p.t_p = t_p; p.m_p = m_p; p.cd_p = cd_p; p.s_p = s_p
    p.t_e = t_e; p.m_e = m_e; p.cd_e = cd_e; p.s_e = s_e
    p.g = g; p.rho0 = rho0; p.hscale = hscale
    p.law = law; p.pg_gain = pg_gain; p.k_range = k_range; p.k_los = k_los
    p.dead_band = dead_band; p.ramp_end = ramp_end
    p.sat_limit = sat_limit; p.beta_floor = beta_floor
    p.u = 0.0; p.n_ze = 0.0

    cdef double y[NSTATE]
    y[0] = r0; y[1] = psi0; y[2] = v_p0; y[3] = gamma_p0
    y[4] = v_e0; y[5] = gamma_e0; y[6] = d_p0; y[7] = h_p0
    y[8] = d_e0; y[9] = h_e0

    buf = np.empty((n_max + 1, NCOL)) if record else None
    cdef double[:, ::1] rows = buf if record else None

    # Rolling bracket: previous sample (full state) plus the range/time of
    # the sample before it, and the running global range minimum.
    cdef double prev_y[NSTATE]
    cdef double min_y[NSTATE]
    cdef double prev2_r = 0.0, prev2_t = 0.0, prev_t = 0.0
    cdef bint have_prev = False, have_prev2 = False
    cdef double min_r = r0, min_t = 0.0
    cdef int i
    for i in range(NSTATE):
        min_y[i] = y[i]
        prev_y[i] = y[i]

    cdef int status = 3
    cdef double t_star = 0.0, miss = 0.0, closing = 0.0
    cdef double t = 0.0, u = 0.0, mu = 0.0, sat = 0.0
    cdef double curv, dlt, q0, q1, q2, vertex
    cdef long k = 0
    cdef long n = 0

    while True:
        if _command(y, &p, &u, &mu, &sat) != 0:
            # unreachable with post-step validation; belt and braces
            status = 0
            if have_prev:
                _linear_flyby(prev_y, prev_t, &t_star, &miss, &closing)
            else:
                _linear_flyby(y, t, &t_star, &miss, &closing)
            break
        if record:
            rows[n, 0] = t
            for i in range(NSTATE):
                rows[n, 1 + i] = y[i]
            rows[n, 11] = u; rows[n, 12] = mu; rows[n, 13] = sat
        n += 1

        # Closest approach: the previous sample is a local range minimum and
        # carries the smallest range seen so far.
        # Closest approach from the R^2 parabola (mirror of
        # engine._bracket_minimum).
        if have_prev and have_prev2 and y[0] > prev_y[0] \
                and prev_y[0] <= prev2_r and prev_y[0] <= min_r:
            status = 0
            closing = -_rdot(prev_y)
            q0 = prev2_r * prev2_r
            q1 = prev_y[0] * prev_y[0]
            q2 = y[0] * y[0]
            curv = q0 - 2.0 * q1 + q2
            if curv <= 0.0:
                t_star = prev_t
                miss = prev_y[0]
            else:
                dlt = 0.25 * (t - prev2_t) * (q0 - q2) / curv
                vertex = q1 - (q0 - q2) * (q0 - q2) / (8.0 * curv)
                miss = sqrt(vertex) if vertex > 0.0 else 0.0
                t_star = prev_t + dlt
            break
        if y[0] > diverge_factor * r0:
            status = 2
            t_star = min_t; miss = min_r; closing = -_rdot(min_y)
            break
        if k >= n_max:
            status = 3
            t_star = min_t; miss = min_r; closing = -_rdot(min_y)
            break

        p.u = u
        p.n_ze = ev_nz if (has_evasion and t >= ev_start) else 0.0
        prev2_r = prev_y[0]
        prev2_t = prev_t
        have_prev2 = have_prev
        for i in range(NSTATE):
            prev_y[i] = y[i]
        prev_t = t
        have_prev = True
        if _rk4(y, &p, dt) != 0:
            status = 0
            _linear_flyby(prev_y, prev_t, &t_star, &miss, &closing)
            break
        if y[0] <= 0.0 or y[2] <= 0.0 or y[4] <= 0.0:
            # The step itself left the valid domain (range crossed zero
            # inside the step); reconstruct the flyby it jumped over.
            status = 0
            _linear_flyby(prev_y, prev_t, &t_star, &miss, &closing)
            break
        k += 1
        t = k * dt
        if y[0] < min_r:
            min_r = y[0]
            min_t = t
            for i in range(NSTATE):
                min_y[i] = y[i]

    return status, t_star, miss, closing, n, buf
