#!/usr/bin/env python3
"""Compare the compiled engagement loop against the pure-Python fallback.

Runs the stock engagement under each guidance law on both backends and
reports wall time, steps/second and the speedup, then times a small
campaign on the active backend.

    python benchmarks/bench_backends.py [--trials 100]
"""

import argparse
import math
import time

import pursuitsim as ps

deg = math.radians

PURSUER = ps.VehicleParams(thrust=15000.0, mass=204.0, drag_coefficient=0.025, frontal_area=2.3)
EVADER = ps.VehicleParams(thrust=50000.0, mass=10000.0, drag_coefficient=0.025, frontal_area=28.0)


def nominal(law):
    return ps.Scenario(
        v_p0=800.0, gamma_p0=deg(1.0), h_p0=5000.0, d_p0=0.0,
        v_e0=584.0, gamma_e0=deg(10.0), h_e0=10000.0, d_e0=5000.0,
        params_p=PURSUER, params_e=EVADER, guidance=ps.GuidanceSpec(law=law),
    )


def time_run(scenario, backend):
    t0 = time.perf_counter()
    out = ps.simulate(scenario, record=False, backend=backend)
    elapsed = time.perf_counter() - t0
    steps = out.result.intercept_time / scenario.dt
    return elapsed, steps, out.result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=100,
                        help="campaign size for the batch benchmark")
    args = parser.parse_args()

    backends = ps.backend.available()
    print(f"available backends: {', '.join(backends)}\n")

    print(f"{'law':22s} {'backend':9s} {'time':>9s} {'steps/s':>12s} {'speedup':>8s}")
    for law in ps.LawKind:
        scenario = nominal(law)
        base = None
        for backend in ("python", "compiled"):
            if backend not in backends:
                continue
            elapsed, steps, result = time_run(scenario, backend)
            speed = steps / elapsed
            tag = ""
            if backend == "python":
                base = elapsed
            elif base is not None:
                tag = f"{base / elapsed:7.1f}x"
            print(f"{law.value:22s} {backend:9s} {elapsed:8.3f}s {speed:12.3g} {tag:>8s}")

    pur = ps.SampleRanges(speed=(800.0, 1100.0), flight_path_angle=(deg(-45), deg(45)),
                          altitude=(12500.0, 20000.0), downrange=(0.0, 0.0))
    eva = ps.SampleRanges(speed=(300.0, 600.0), flight_path_angle=(deg(-45), deg(45)),
                          altitude=(10000.0, 20000.0), downrange=(5000.0, 10000.0))
    cfg = ps.CampaignConfig(
        n_trials=args.trials, seed=1, pursuer=pur, evader=eva,
        laws=tuple(ps.GuidanceSpec(law=k) for k in
                   (ps.LawKind.LOS_IOL, ps.LawKind.RANGE_IOL, ps.LawKind.PG)),
        params_p=PURSUER, params_e=EVADER,
    )
    t0 = time.perf_counter()
    out = ps.run_campaign(cfg)
    elapsed = time.perf_counter() - t0
    n_runs = cfg.n_trials * len(cfg.laws)
    print(f"\ncampaign: {n_runs} engagements in {elapsed:.2f}s on the "
          f"'{ps.backend.active()}' backend ({n_runs / elapsed:.1f} engagements/s)")
    for law, results in out.results.items():
        print(f"  {law:10s} failure {ps.aggregate(results).percent_failure:.2f}%")


if __name__ == "__main__":
    main()
