import csv
import io
import math

import numpy as np
import pytest

import pursuitsim as ps
from pursuitsim import csvio
from pursuitsim.cli import main
from pursuitsim.engine import TRAJECTORY_COLUMNS

from test_config import CAMPAIGN, SINGLE

SWEEP = SINGLE.replace('mode = "single"', 'mode = "sweep"') + """
[sweep]
parameter = "k_range"
values = [0.2, 0.5, 1.0, 2.0]
"""


@pytest.fixture
def write_config(tmp_path):
    def put(text, name="run.toml"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return put


class TestSingleMode:
    def test_end_to_end(self, tmp_path, write_config, capsys):
        cfg = write_config(SINGLE)
        assert main(["--config", cfg, "--output-dir", str(tmp_path / "out")]) == 0
        out = capsys.readouterr().out
        assert "intercepted" in out

        with open(tmp_path / "out" / "trajectory.csv", newline="") as fh:
            tr = csvio.read_trajectory(fh)
        t = tr.column("t")
        assert t[0] == 0.0
        assert np.all(np.diff(t) > 0)
        first = tr.state(0)
        assert first.v_p == 800.0
        assert first.h_p == 5000.0
        assert first.gamma_p == math.radians(1.0)
        assert (tmp_path / "out" / "result.csv").exists()

    def test_trajectory_csv_roundtrip_exact(self, tmp_path, write_config):
        cfg = write_config(SINGLE)
        out = tmp_path / "out"
        assert main(["--config", cfg, "--output-dir", str(out)]) == 0
        with open(out / "trajectory.csv", newline="") as fh:
            header = fh.readline().strip().split(",")
        assert tuple(header) == TRAJECTORY_COLUMNS

        scenario = ps.config.load_config(cfg).scenario
        trajectory = ps.simulate(scenario, record=True).trajectory
        buf = io.StringIO()
        csvio.write_trajectory(buf, trajectory)
        buf.seek(0)
        again = csvio.read_trajectory(buf)
        assert np.array_equal(again.data, trajectory.data)


class TestCampaignMode:
    def run(self, tmp_path, write_config, extra=()):
        cfg = write_config(CAMPAIGN)
        out = tmp_path / "out"
        code = main(["--config", cfg, "--output-dir", str(out), *extra])
        return code, out

    def test_outputs_and_roundtrip(self, tmp_path, write_config):
        code, out = self.run(tmp_path, write_config)
        assert code == 0
        for name in ("results.csv", "stats.csv", "stats.txt"):
            assert (out / name).exists()

        with open(out / "results.csv", newline="") as fh:
            rows = csvio.read_results(fh)
        assert len(rows) == 8  # 4 trials x 2 laws
        assert {r["law"] for r in rows} == {"los_iol", "pg"}

        per_law = csvio.results_to_trial_results(rows)
        stats = {law: ps.aggregate(res) for law, res in per_law.items()}
        with open(out / "stats.csv", newline="") as fh:
            parsed = csvio.read_stats(fh)
        assert parsed == stats

        text = (out / "stats.txt").read_text()
        assert "Average" in text and "Percent Failure" in text

    def test_rerun_byte_identical(self, tmp_path, write_config):
        _, out1 = self.run(tmp_path / "a", write_config)
        cfg = (tmp_path / "run.toml")
        code = main(["--config", str(cfg), "--output-dir", str(tmp_path / "b")])
        assert code == 0
        assert (tmp_path / "a" / "out" / "results.csv").read_bytes() == \
            (tmp_path / "b" / "results.csv").read_bytes()

    def test_worker_count_does_not_change_bytes(self, tmp_path, write_config):
        cfg = write_config(CAMPAIGN)
        assert main(["--config", cfg, "--output-dir", str(tmp_path / "w1"), "--workers", "1"]) == 0
        assert main(["--config", cfg, "--output-dir", str(tmp_path / "w2"), "--workers", "2"]) == 0
        assert (tmp_path / "w1" / "results.csv").read_bytes() == \
            (tmp_path / "w2" / "results.csv").read_bytes()

    def test_seed_override_changes_results(self, tmp_path, write_config):
        cfg = write_config(CAMPAIGN)
        assert main(["--config", cfg, "--output-dir", str(tmp_path / "s1")]) == 0
        assert main(["--config", cfg, "--output-dir", str(tmp_path / "s2"), "--seed", "5"]) == 0
        assert (tmp_path / "s1" / "results.csv").read_bytes() != \
            (tmp_path / "s2" / "results.csv").read_bytes()

    def test_emit_trajectories(self, tmp_path, write_config):
        code, out = self.run(tmp_path, write_config, extra=["--emit-trajectories", "2"])
        assert code == 0
        files = sorted(p.name for p in (out / "trajectories").iterdir())
        assert files == [
            "trial0000_los_iol.csv", "trial0000_pg.csv",
            "trial0001_los_iol.csv", "trial0001_pg.csv",
        ]


class TestSweepMode:
    def test_one_trajectory_per_gain(self, tmp_path, write_config, capsys):
        cfg = write_config(SWEEP)
        out = tmp_path / "out"
        assert main(["--config", cfg, "--output-dir", str(out)]) == 0
        for value in ("0.2", "0.5", "1", "2"):
            assert (out / f"trajectory_k_range_{value}.csv").exists()
        with open(out / "sweep_results.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4
        assert all(row["termination"] == "intercepted" for row in rows)


class TestErrors:
    def test_missing_config(self, tmp_path):
        assert main(["--config", str(tmp_path / "absent.toml")]) == 1

    def test_invalid_config(self, write_config, capsys):
        cfg = write_config("mode = 'single'\n[pursuer]\nmass = -1\n")
        assert main(["--config", cfg]) == 1
        assert "error:" in capsys.readouterr().err

    def test_output_dir_collides_with_file(self, tmp_path, write_config):
        target = tmp_path / "blocked"
        target.write_text("")
        cfg = write_config(SINGLE)
        assert main(["--config", cfg, "--output-dir", str(target)]) == 1


class TestStatsFormatting:
    def test_all_failure_stats_roundtrip(self):
        failed = [ps.TrialResult(intercept_time=float("nan"), miss_distance=50.0,
                                 closing_velocity=1.0, success=False,
                                 termination=ps.Termination.MISS)]
        stats = {"pg": ps.aggregate(failed)}
        buf = io.StringIO()
        csvio.write_stats(buf, stats)
        buf.seek(0)
        assert csvio.read_stats(buf) == stats
        table = csvio.format_stats_table(stats)
        assert "100" in table  # percent failure
