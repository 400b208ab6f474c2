"""CSV emission and re-parsing for trajectories, per-trial results and
campaign statistics.

Floats are written with repr (shortest round-tripping decimal, up to 17
significant digits) so downstream tooling and the round-trip readers recover
the in-memory values exactly.
"""

from __future__ import annotations

import csv
import math
from typing import IO, Iterable

from .engine import TRAJECTORY_COLUMNS, Trajectory
from .montecarlo import CampaignOutput, CampaignStats, MetricStats
from .types import Termination, TrialResult

RESULTS_COLUMNS = (
    "trial", "law", "success", "termination",
    "intercept_time", "miss_distance", "closing_velocity",
    "v_p0", "gamma_p0", "h_p0", "d_p0",
    "v_e0", "gamma_e0", "h_e0", "d_e0",
    "evasion_start", "evasion_direction", "evasion_magnitude",
)

STATS_COLUMNS = (
    "law", "metric", "n_trials", "n_success", "percent_failure",
    "average", "median", "variance", "minimum", "maximum",
)

_METRICS = ("intercept_time", "miss_distance", "closing_velocity")


def _fmt(x: float) -> str:
    return repr(float(x))


def write_trajectory(fh: IO[str], trajectory: Trajectory) -> None:
    writer = csv.writer(fh)
    writer.writerow(TRAJECTORY_COLUMNS)
    sat_col = len(TRAJECTORY_COLUMNS) - 1
    for row in trajectory.data:
        out = [_fmt(v) for v in row]
        out[sat_col] = str(int(row[sat_col]))
        writer.writerow(out)


def read_trajectory(fh: IO[str]) -> Trajectory:
    import numpy as np

    reader = csv.reader(fh)
    header = tuple(next(reader))
    if header != TRAJECTORY_COLUMNS:
        raise ValueError(f"unexpected trajectory header {header!r}")
    data = np.array([[float(v) for v in row] for row in reader])
    return Trajectory(data=data.reshape(-1, len(TRAJECTORY_COLUMNS)))


def write_results(fh: IO[str], output: CampaignOutput) -> None:
    writer = csv.writer(fh)
    writer.writerow(RESULTS_COLUMNS)
    names = output.config.law_names()
    for trial, draw in enumerate(output.draws):
        ev = draw.evasion_start is not None
        for name in names:
            r = output.results[name][trial]
            writer.writerow([
                trial, name, int(r.success), r.termination.value,
                _fmt(r.intercept_time), _fmt(r.miss_distance), _fmt(r.closing_velocity),
                _fmt(draw.v_p), _fmt(draw.gamma_p), _fmt(draw.h_p), _fmt(draw.d_p),
                _fmt(draw.v_e), _fmt(draw.gamma_e), _fmt(draw.h_e), _fmt(draw.d_e),
                _fmt(draw.evasion_start) if ev else "",
                draw.evasion_direction.value if ev else "",
                _fmt(draw.evasion_magnitude) if ev else "",
            ])


def read_results(fh: IO[str]) -> list[dict]:
    """Rows of the results CSV with numeric fields restored."""
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != RESULTS_COLUMNS:
        raise ValueError(f"unexpected results header {reader.fieldnames!r}")
    rows = []
    for rec in reader:
        rows.append({
            "trial": int(rec["trial"]),
            "law": rec["law"],
            "success": bool(int(rec["success"])),
            "termination": Termination(rec["termination"]),
            **{k: float(rec[k]) for k in (
                "intercept_time", "miss_distance", "closing_velocity",
                "v_p0", "gamma_p0", "h_p0", "d_p0",
                "v_e0", "gamma_e0", "h_e0", "d_e0",
            )},
            "evasion_start": float(rec["evasion_start"]) if rec["evasion_start"] else None,
            "evasion_direction": rec["evasion_direction"] or None,
            "evasion_magnitude": float(rec["evasion_magnitude"]) if rec["evasion_magnitude"] else None,
        })
    return rows


def results_to_trial_results(rows: Iterable[dict]) -> dict[str, list[TrialResult]]:
    out: dict[str, list[TrialResult]] = {}
    for rec in rows:
        out.setdefault(rec["law"], []).append(TrialResult(
            intercept_time=rec["intercept_time"],
            miss_distance=rec["miss_distance"],
            closing_velocity=rec["closing_velocity"],
            success=rec["success"],
            termination=rec["termination"],
        ))
    return out


def write_stats(fh: IO[str], stats_by_law: dict[str, CampaignStats]) -> None:
    writer = csv.writer(fh)
    writer.writerow(STATS_COLUMNS)
    for law, st in stats_by_law.items():
        for metric in _METRICS:
            ms: MetricStats | None = getattr(st, metric)
            base = [law, metric, st.n_trials, st.n_success, _fmt(st.percent_failure)]
            if ms is None:
                writer.writerow(base + [""] * 5)
            else:
                writer.writerow(base + [
                    _fmt(ms.average), _fmt(ms.median), _fmt(ms.variance),
                    _fmt(ms.minimum), _fmt(ms.maximum),
                ])


def read_stats(fh: IO[str]) -> dict[str, CampaignStats]:
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != STATS_COLUMNS:
        raise ValueError(f"unexpected stats header {reader.fieldnames!r}")
    partial: dict[str, dict] = {}
    for rec in reader:
        law = rec["law"]
        entry = partial.setdefault(law, {
            "n_trials": int(rec["n_trials"]),
            "n_success": int(rec["n_success"]),
            "percent_failure": float(rec["percent_failure"]),
        })
        if rec["average"] == "":
            entry[rec["metric"]] = None
        else:
            entry[rec["metric"]] = MetricStats(
                average=float(rec["average"]), median=float(rec["median"]),
                variance=float(rec["variance"]), minimum=float(rec["minimum"]),
                maximum=float(rec["maximum"]),
            )
    return {
        law: CampaignStats(
            n_trials=e["n_trials"], n_success=e["n_success"],
            percent_failure=e["percent_failure"],
            intercept_time=e.get("intercept_time"),
            miss_distance=e.get("miss_distance"),
            closing_velocity=e.get("closing_velocity"),
        )
        for law, e in partial.items()
    }


def format_stats_table(stats_by_law: dict[str, CampaignStats]) -> str:
    """Human-readable statistics table: one column group per law, one row per
    statistic, plus the failure-percentage line."""
    laws = list(stats_by_law)
    lines = []
    header = f"{'':<16}"
    sub = f"{'':<16}"
    for law in laws:
        header += f"{law:^42}"
        sub += f"{'time (s)':>14}{'miss (m)':>14}{'closing (m/s)':>14}"
    lines.append(header.rstrip())
    lines.append(sub.rstrip())

    def row(label: str, attr: str) -> str:
        line = f"{label:<16}"
        for law in laws:
            st = stats_by_law[law]
            for metric in _METRICS:
                ms = getattr(st, metric)
                line += f"{'-':>14}" if ms is None else f"{getattr(ms, attr):>14.4g}"
        return line.rstrip()

    for label, attr in (
        ("Average", "average"), ("Median", "median"), ("Variance", "variance"),
        ("Minimum", "minimum"), ("Maximum", "maximum"),
    ):
        lines.append(row(label, attr))
    fail = f"{'Percent Failure':<16}"
    for law in laws:
        fail += f"{stats_by_law[law].percent_failure:^42.4g}"
    lines.append(fail.rstrip())
    return "\n".join(lines) + "\n"
