/**
 * The five figure kinds, all fed by simulator CSVs (or, for the membership
 * plot, by the blend parameters). Pursuer traces are solid, evader traces
 * dashed; colors cycle per trajectory file.
 */

import { numberColumn, requireColumns, stringColumn, Table } from "./csv.js";
import { RESULTS_COLUMNS, TRAJECTORY_COLUMNS } from "./schema.js";
import { renderChart, Series } from "./svg.js";

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

const EVADER_DASH = "6,4";

// --- membership ------------------------------------------------------------

export function membershipIol(s: number, deadBand: number, rampEnd: number): number {
  const a = Math.abs(s);
  if (a <= deadBand) return 0;
  if (a >= rampEnd) return 1;
  return (a - deadBand) / (rampEnd - deadBand);
}

export function membershipFigure(deadBand = 0.1, rampEnd = 0.2): string {
  if (!(deadBand > 0 && deadBand < rampEnd && rampEnd <= 1)) {
    throw new Error(`invalid membership shape: dead_band=${deadBand}, ramp_end=${rampEnd}`);
  }
  const n = 801;
  const s: number[] = [];
  const iol: number[] = [];
  const pg: number[] = [];
  for (let i = 0; i < n; i++) {
    const v = -1 + (2 * i) / (n - 1);
    s.push(v);
    const mu = membershipIol(v, deadBand, rampEnd);
    iol.push(mu);
    pg.push(1 - mu);
  }
  const series: Series[] = [
    { x: s, y: iol, color: "#d62728", label: "IOL weight", width: 2 },
    { x: s, y: pg, color: "#1f77b4", label: "PG weight", width: 2 },
  ];
  return renderChart(series, {
    title: "Guidance-blend membership functions",
    xLabel: "sin(psi - gamma_P)",
    yLabel: "membership",
  });
}

// --- trajectory-based figures ----------------------------------------------

const MAX_POINTS = 1500;

/** Thin dense trajectories down to what the raster can resolve, always
 * keeping the final sample (the interception endpoint). */
function decimate(values: number[]): number[] {
  const stride = Math.ceil(values.length / MAX_POINTS);
  if (stride <= 1) return values;
  const out: number[] = [];
  for (let i = 0; i < values.length; i += stride) out.push(values[i]);
  if (out[out.length - 1] !== values[values.length - 1]) {
    out.push(values[values.length - 1]);
  }
  return out;
}

function trajectoryPair(table: Table, color: string, label?: string): Series[] {
  requireColumns(table, TRAJECTORY_COLUMNS);
  if (table.rows.length === 0) {
    throw new Error("empty trajectory");
  }
  return [
    {
      x: decimate(numberColumn(table, "d_P")), y: decimate(numberColumn(table, "h_P")),
      color, label, width: 1.8,
    },
    {
      x: decimate(numberColumn(table, "d_E")), y: decimate(numberColumn(table, "h_E")),
      color, dash: EVADER_DASH, width: 1.4,
    },
  ];
}

export function singleTrajectoryFigure(table: Table): string {
  const series = trajectoryPair(table, PALETTE[0], "pursuer");
  series[1].label = "evader";
  return renderChart(series, {
    title: "Engagement trajectory (pursuer solid, evader dashed)",
    xLabel: "downrange (m)",
    yLabel: "altitude (m)",
    equalAspect: true,
  });
}

export function gainSweepFigure(tables: Table[], labels: string[]): string {
  if (tables.length === 0) {
    throw new Error("no trajectories given");
  }
  const series: Series[] = [];
  tables.forEach((table, i) => {
    const pair = trajectoryPair(table, PALETTE[i % PALETTE.length], labels[i] ?? `run ${i}`);
    series.push(pair[0]);
    if (i === 0) {
      pair[1].label = "evader";
      series.push(pair[1]); // the evader flies the same path in a gain sweep
    }
  });
  return renderChart(series, {
    title: "Gain sweep (pursuer solid per gain, evader dashed)",
    xLabel: "downrange (m)",
    yLabel: "altitude (m)",
    equalAspect: true,
  });
}

export function campaignSamplesFigure(tables: Table[]): string {
  if (tables.length === 0) {
    throw new Error("no trajectories given");
  }
  const series: Series[] = [];
  tables.forEach((table, i) => {
    series.push(...trajectoryPair(table, PALETTE[i % PALETTE.length]));
  });
  return renderChart(series, {
    title: `${tables.length} sampled engagements (pursuer solid, evader dashed)`,
    xLabel: "downrange (m)",
    yLabel: "altitude (m)",
    legend: false,
    equalAspect: true,
  });
}

// --- failure comparison ------------------------------------------------------

export interface FailureComparison {
  trials: number[];
  baselineMiss: number[];
  comparisonMiss: number[];
  baselineTime: number[];
  comparisonTime: number[];
}

/**
 * Pick a deterministic fraction of the baseline law's failed trials and
 * pair them with the comparison law's outcome on the identical initial
 * conditions.
 */
export function selectFailures(
  results: Table,
  baseline: string,
  comparison: string,
  fraction: number,
): FailureComparison {
  requireColumns(results, RESULTS_COLUMNS);
  const law = stringColumn(results, "law");
  const trial = numberColumn(results, "trial");
  const success = numberColumn(results, "success");
  const miss = numberColumn(results, "miss_distance");
  const time = numberColumn(results, "intercept_time");

  const byTrial = new Map<number, { miss: number; time: number }>();
  for (let i = 0; i < law.length; i++) {
    if (law[i] === comparison) {
      byTrial.set(trial[i], { miss: miss[i], time: time[i] });
    }
  }

  const failed: number[] = [];
  for (let i = 0; i < law.length; i++) {
    if (law[i] === baseline && success[i] === 0 && byTrial.has(trial[i])) {
      failed.push(i);
    }
  }
  if (failed.length === 0) {
    throw new Error(`no failed ${baseline} trials to compare`);
  }
  const stride = Math.max(1, Math.round(1 / fraction));
  const picked = failed.filter((_, k) => k % stride === 0);

  const out: FailureComparison = {
    trials: [], baselineMiss: [], comparisonMiss: [], baselineTime: [], comparisonTime: [],
  };
  for (const i of picked) {
    const other = byTrial.get(trial[i])!;
    out.trials.push(trial[i]);
    out.baselineMiss.push(miss[i]);
    out.comparisonMiss.push(other.miss);
    out.baselineTime.push(time[i]);
    out.comparisonTime.push(other.time);
  }
  return out;
}

export function failureComparisonFigure(
  results: Table,
  baseline = "pg",
  comparison = "los_iol",
  fraction = 0.1,
): string {
  const cmp = selectFailures(results, baseline, comparison, fraction);
  const series: Series[] = [
    { x: cmp.trials, y: cmp.baselineMiss, color: "#d62728", label: `${baseline} miss (m)`, markers: true },
    { x: cmp.trials, y: cmp.comparisonMiss, color: "#1f77b4", label: `${comparison} miss (m)`, markers: true },
  ];
  return renderChart(series, {
    title: `${baseline} failures vs ${comparison} on identical trials`,
    xLabel: "trial index",
    yLabel: "miss distance (m)",
  });
}
