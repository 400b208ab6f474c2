"""Command-line front end.

    pursuitsim --config run.toml [--mode M] [--seed N] [--output-dir D]
               [--workers K] [--emit-trajectories N]

Single mode writes trajectory.csv and result.csv; campaign mode writes
results.csv, stats.csv and stats.txt (plus per-trial trajectories when
requested); sweep mode writes one trajectory per gain value and a summary
CSV. PURSUITSIM_OUTPUT_DIR supplies the default output directory.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from . import csvio
from .config import ConfigError, RunConfig, load_config
from .engine import simulate
from .montecarlo import aggregate, build_scenario, run_campaign, sample_scenario, trial_rng
from .types import GuidanceSpec


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pursuitsim",
        description="Planar pursuer-evader interception simulator",
    )
    parser.add_argument("--config", required=True, help="TOML run configuration")
    parser.add_argument("--mode", choices=["single", "campaign", "sweep"],
                        help="override the configured mode")
    parser.add_argument("--seed", type=int, help="override the configured seed")
    parser.add_argument("--output-dir", help="output directory (default: config, "
                        "then PURSUITSIM_OUTPUT_DIR, then current directory)")
    parser.add_argument("--workers", type=int, help="campaign worker processes")
    parser.add_argument("--emit-trajectories", type=int, default=None,
                        help="campaign mode: write trajectories for the first N trials per law")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config, mode=args.mode)
        cfg = _apply_overrides(cfg, args)
    except (OSError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out_dir = Path(
        args.output_dir
        or cfg.output_dir
        or os.environ.get("PURSUITSIM_OUTPUT_DIR")
        or "."
    )
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if cfg.mode == "single":
            _run_single(cfg, out_dir)
        elif cfg.mode == "campaign":
            _run_campaign(cfg, out_dir)
        else:
            _run_sweep(cfg, out_dir)
    except OSError as exc:
        print(f"error: {exc.filename or out_dir}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
        if cfg.campaign is not None:
            updates["campaign"] = dataclasses.replace(cfg.campaign, seed=args.seed)
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError(f"workers: must be >= 1, got {args.workers}")
        updates["workers"] = args.workers
    if args.emit_trajectories is not None:
        if args.emit_trajectories < 0:
            raise ConfigError("emit-trajectories: must be >= 0")
        updates["emit_trajectories"] = args.emit_trajectories
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _write(path: Path, writer, *payload) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer(fh, *payload)


def _run_single(cfg: RunConfig, out_dir: Path) -> None:
    output = simulate(cfg.scenario, record=True)
    _write(out_dir / "trajectory.csv", csvio.write_trajectory, output.trajectory)
    _write_single_result(out_dir / "result.csv", cfg.guidance, output.result)
    r = output.result
    print(
        f"{cfg.guidance.law.value}: {r.termination.value} "
        f"t={r.intercept_time:.3f} s miss={r.miss_distance:.3g} m "
        f"closing={r.closing_velocity:.4g} m/s"
    )


def _write_single_result(path: Path, guidance: GuidanceSpec, result) -> None:
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["law", "success", "termination",
                         "intercept_time", "miss_distance", "closing_velocity"])
        writer.writerow([
            guidance.law.value, int(result.success), result.termination.value,
            repr(result.intercept_time), repr(result.miss_distance),
            repr(result.closing_velocity),
        ])


def _run_campaign(cfg: RunConfig, out_dir: Path) -> None:
    output = run_campaign(cfg.campaign, workers=cfg.workers)
    _write(out_dir / "results.csv", csvio.write_results, output)
    stats = {law: aggregate(res) for law, res in output.results.items()}
    _write(out_dir / "stats.csv", csvio.write_stats, stats)
    table = csvio.format_stats_table(stats)
    (out_dir / "stats.txt").write_text(table, encoding="utf-8")
    print(table, end="")
    if cfg.emit_trajectories > 0:
        _emit_campaign_trajectories(cfg, out_dir)


def _emit_campaign_trajectories(cfg: RunConfig, out_dir: Path) -> None:
    traj_dir = out_dir / "trajectories"
    traj_dir.mkdir(exist_ok=True)
    cc = cfg.campaign
    n = min(cfg.emit_trajectories, cc.n_trials)
    for trial in range(n):
        draw = sample_scenario(cc, trial_rng(cc.seed, trial))
        for law in cc.laws:
            output = simulate(build_scenario(cc, draw, law), record=True)
            path = traj_dir / f"trial{trial:04d}_{law.law.value}.csv"
            _write(path, csvio.write_trajectory, output.trajectory)


def _run_sweep(cfg: RunConfig, out_dir: Path) -> None:
    import csv

    rows = []
    for value in cfg.sweep_values:
        guidance = dataclasses.replace(cfg.guidance, **{cfg.sweep_parameter: value})
        scenario = dataclasses.replace(cfg.scenario, guidance=guidance)
        output = simulate(scenario, record=True)
        name = f"trajectory_{cfg.sweep_parameter}_{value:g}.csv"
        _write(out_dir / name, csvio.write_trajectory, output.trajectory)
        r = output.result
        rows.append([value, r.termination.value, int(r.success),
                     repr(r.intercept_time), repr(r.miss_distance),
                     repr(r.closing_velocity)])
        print(
            f"{cfg.sweep_parameter}={value:g}: {r.termination.value} "
            f"t={r.intercept_time:.3f} s miss={r.miss_distance:.3g} m"
        )
    with open(out_dir / "sweep_results.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([cfg.sweep_parameter, "termination", "success",
                         "intercept_time", "miss_distance", "closing_velocity"])
        writer.writerows(rows)


if __name__ == "__main__":
    sys.exit(main())
