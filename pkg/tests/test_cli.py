import math
import subprocess
import sys

import pytest

from isacrom.cli import main
from isacrom.config import DEFAULTS, parse_config
from isacrom.errors import ConfigError

REF_CONFIG = "delta_psi_rad = 0.0174533\n"


def run_cli(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "isacrom.cli", *argv],
                          capture_output=True, text=True, cwd=cwd)


class TestParseConfig:
    def test_empty_document_gives_defaults(self):
        scn = parse_config("")
        assert scn.radar.p_tx == 1.0
        assert scn.radar.bw == 20e6
        assert scn.radar.eta == 1e-13
        assert scn.radar.t_s == 300.0
        assert scn.radar.alpha == 2.0
        assert scn.clutter.sigma_c == 0.1
        assert scn.clutter.rho_c == 1.0
        assert scn.clutter.g_c_avg == 1.0
        assert scn.clutter.r_c == 10.0
        assert scn.target.sigma_t_avg == 10.0
        assert scn.target.r_t == 10.0
        assert scn.isac.xi == 0.9
        assert scn.isac.omega == math.pi / 2

    def test_single_key_override(self):
        scn = parse_config("ptx_w = 0.5")
        assert scn.radar.p_tx == 0.5
        assert scn.radar.bw == 20e6

    def test_comments_and_blank_lines(self):
        scn = parse_config("# a comment\n\nptx_w = 0.25  # trailing\n")
        assert scn.radar.p_tx == 0.25

    def test_alpha_below_one_rejected_with_line(self):
        with pytest.raises(ConfigError) as err:
            parse_config("# header\nalpha = 0.5\n")
        assert err.value.line == 2

    def test_unknown_key(self):
        with pytest.raises(ConfigError) as err:
            parse_config("banana = 1\n")
        assert err.value.line == 1

    def test_malformed_number(self):
        with pytest.raises(ConfigError) as err:
            parse_config("ptx_w = fast\n")
        assert err.value.line == 1

    def test_duplicate_key(self):
        with pytest.raises(ConfigError):
            parse_config("ptx_w = 1\nptx_w = 2\n")

    def test_missing_equals(self):
        with pytest.raises(ConfigError):
            parse_config("ptx_w 1\n")

    def test_beamwidth_override_rederives_duty(self):
        scn = parse_config(REF_CONFIG)
        assert scn.radar.delta_psi == 0.0174533
        assert scn.delta_psi == 0.0174533
        assert scn.isac.xi == pytest.approx(0.9, abs=1e-5)

    def test_conflicting_beamwidth_and_duty(self):
        with pytest.raises(ConfigError):
            parse_config("delta_psi_rad = 0.0174533\nduty_cycle = 0.5\n")

    def test_infeasible_beamwidth_override(self):
        with pytest.raises(ConfigError):
            parse_config("delta_psi_rad = 0.001\n")

    def test_key_set_is_exhaustive(self):
        assert set(DEFAULTS) == {
            "f_c_hz", "bw_hz", "ptx_w", "g0", "sigma_c_m2", "sigma_t_avg_m2",
            "rho_c_per_m2", "g_c_avg", "eta_w", "r_c_m", "r_t_m", "t_s_k",
            "alpha", "duty_cycle", "t_total_s", "t_dwell_s", "omega_rad",
            "rho_t_per_m2", "data_rate_bps",
        }


class TestMetricsCommand:
    def test_reports_noise_power(self, capsys):
        assert main(["metrics"]) == 0
        out = capsys.readouterr().out
        assert "8.28389400e-14" in out
        assert "p_fa" in out and "lambda" in out

    def test_gamma_zero_at_full_duty(self, tmp_path, capsys):
        cfg = tmp_path / "c.cfg"
        cfg.write_text("duty_cycle = 1\n")
        assert main(["metrics", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "gamma_bps     = 0.00000000e+00" in out

    def test_pfa_field_value(self, capsys):
        assert main(["metrics"]) == 0
        out = capsys.readouterr().out
        line = next(l for l in out.splitlines() if l.startswith("p_fa"))
        value = float(line.split("=")[1])
        assert value == pytest.approx(0.7299, abs=5e-4)


class TestSweepCommand:
    def test_duty_sweep_last_row_zero(self, tmp_path, capsys):
        out = tmp_path / "duty.csv"
        assert main(["sweep", "--param", "duty", "--from", "0.5", "--to",
                     "1.0", "--points", "2", "--alphas", "2",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "param,value,alpha,pfa,pd,beta,gamma_bps"
        assert lines[-1].split(",")[6] == "0.00000000e+00"
        assert "argmax gamma" in capsys.readouterr().out

    def test_rcs_sweep_pfa_constant(self, tmp_path):
        out = tmp_path / "rcs.csv"
        assert main(["sweep", "--param", "rcs_t", "--from", "1", "--to",
                     "100", "--points", "3", "--alphas", "2",
                     "--out", str(out)]) == 0
        pfas = {line.split(",")[3]
                for line in out.read_text().splitlines()[1:]}
        assert len(pfas) == 1

    def test_ptx_sweep_monotone(self, tmp_path):
        out = tmp_path / "ptx.csv"
        assert main(["sweep", "--param", "ptx", "--from", "0.25", "--to",
                     "1.0", "--points", "4", "--alphas", "2",
                     "--out", str(out)]) == 0
        vals = [float(line.split(",")[3])
                for line in out.read_text().splitlines()[1:]]
        assert all(vals[i + 1] >= vals[i] - 1e-9 for i in range(len(vals) - 1))

    def test_row_order_alpha_then_value(self, tmp_path):
        out = tmp_path / "o.csv"
        assert main(["sweep", "--param", "ptx", "--from", "0.5", "--to",
                     "1.0", "--points", "2", "--alphas", "3,2",
                     "--out", str(out)]) == 0
        rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
        alphas = [float(r[2]) for r in rows]
        values = [float(r[1]) for r in rows]
        assert alphas == [2.0, 2.0, 3.0, 3.0]
        assert values == [0.5, 1.0, 0.5, 1.0]

    def test_byte_identical_across_runs_and_threads(self, tmp_path):
        args = ["sweep", "--param", "duty", "--from", "0.1", "--to", "1.0",
                "--points", "5", "--alphas", "2,3"]
        outputs = []
        for name, threads in (("a", "1"), ("b", "1"), ("c", "4")):
            path = tmp_path / f"{name}.csv"
            r = run_cli(*args, "--out", str(path), "--threads", threads)
            assert r.returncode == 0
            outputs.append((path.read_bytes(), r.stdout.replace(
                str(path), "OUT")))
        assert outputs[0] == outputs[1] == outputs[2]

    def test_infeasible_point_exits_2_without_output(self, tmp_path):
        out = tmp_path / "bad.csv"
        r = run_cli("sweep", "--param", "duty", "--from", "0.001", "--to",
                    "1.0", "--points", "3", "--alphas", "2",
                    "--out", str(out))
        assert r.returncode == 2
        assert "0.001" in r.stderr
        assert not out.exists()

    def test_eta_mode_rejected_off_bandwidth(self, tmp_path):
        r = run_cli("sweep", "--param", "ptx", "--from", "0.1", "--to", "1.0",
                    "--points", "2", "--alphas", "2", "--eta-mode", "resolve",
                    "--out", str(tmp_path / "x.csv"))
        assert r.returncode == 2

    def test_usage_error_exit_code(self):
        r = run_cli("sweep", "--param", "nope", "--from", "0", "--to", "1",
                    "--points", "2", "--out", "x.csv")
        assert r.returncode == 1

    def test_missing_out_is_usage_error(self):
        r = run_cli("sweep", "--param", "ptx", "--from", "0.1", "--to", "1.0",
                    "--points", "2")
        assert r.returncode == 1


class TestValidateCommand:
    def test_small_grid_passes(self, capsys):
        assert main(["validate", "--trials", "50000", "--seed", "42",
                     "--grid-alphas", "2,3", "--grid-ptx", "0.5,1.0"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "4/4" in out

    def test_single_trial_passes_trivially(self):
        assert main(["validate", "--trials", "1", "--grid-alphas", "2",
                     "--grid-ptx", "1.0"]) == 0

    def test_no_clutter_exact(self, tmp_path):
        cfg = tmp_path / "q.cfg"
        cfg.write_text("rho_c_per_m2 = 0\n")
        assert main(["validate", "--config", str(cfg), "--trials", "1000",
                     "--grid-alphas", "2", "--grid-ptx", "1.0"]) == 0

    def test_byte_identical_across_threads(self):
        args = ["validate", "--trials", "20000", "--seed", "7",
                "--grid-alphas", "2,3", "--grid-ptx", "0.5,1.0"]
        a = run_cli(*args, "--threads", "1")
        b = run_cli(*args, "--threads", "4")
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout


class TestThresholdCommand:
    def test_boundary_target(self, capsys):
        assert main(["threshold", "--target", "0.7299"]) == 0
        out = capsys.readouterr().out
        assert "boundary" in out
        assert "eta_w = 8.28389400e-14" in out

    def test_interior_target(self, capsys):
        assert main(["threshold", "--target", "0.5"]) == 0
        out = capsys.readouterr().out
        achieved = float(next(l for l in out.splitlines()
                              if l.startswith("achieved_pfa")).split("=")[1])
        assert achieved == pytest.approx(0.5, abs=5e-4)

    def test_target_out_of_range_is_usage_error(self):
        r = run_cli("threshold", "--target", "1.5")
        assert r.returncode == 1

    def test_unattainable_target_names_maximum(self):
        r = run_cli("threshold", "--target", "0.9")
        assert r.returncode == 2
        assert "0.729664" in r.stderr


class TestConfigErrors:
    def test_bad_config_exits_1(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("alpha = 0.5\n")
        r = run_cli("metrics", "--config", str(cfg))
        assert r.returncode == 1
        assert "line 1" in r.stderr

    def test_missing_config_file(self):
        r = run_cli("metrics", "--config", "/nonexistent/path.cfg")
        assert r.returncode == 1
