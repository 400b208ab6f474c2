/**
 * Column contracts of the simulator's CSV outputs.
 *
 * These must stay in lockstep with the emitting side; the schema test
 * regenerates a trajectory through the simulator CLI and fails on drift.
 */

export const TRAJECTORY_COLUMNS = [
  "t", "R", "psi", "V_P", "gamma_P", "V_E", "gamma_E",
  "d_P", "h_P", "d_E", "h_E", "u", "mu_iol", "saturated",
] as const;

export const RESULTS_COLUMNS = [
  "trial", "law", "success", "termination",
  "intercept_time", "miss_distance", "closing_velocity",
  "v_p0", "gamma_p0", "h_p0", "d_p0",
  "v_e0", "gamma_e0", "h_e0", "d_e0",
  "evasion_start", "evasion_direction", "evasion_magnitude",
] as const;

export type TrajectoryColumn = (typeof TRAJECTORY_COLUMNS)[number];
