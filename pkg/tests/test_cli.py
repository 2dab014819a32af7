import math

import numpy as np
import pytest

from quadbloch import constants
from quadbloch.cli import main

CANONICAL_DYNAMICS = """
omega21 = 1.0
a12 = 0.2
gamma11 = 0.02
gamma22 = 0.0
gamma12 = -0.04
t_start = -20
t_end = 20
step = 0.01
"""


def write(path, text):
    path.write_text(text)
    return str(path)


def load_csv(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#") or line.startswith("t,"):
                continue
            rows.append([float(x) for x in line.rstrip("\n").split(",")])
    return np.array(rows)


class TestCoeffs:
    def test_lyman_alpha_table(self, tmp_path, capsys):
        cfg = write(tmp_path / "pair.cfg", "mode = coeffs\nstate_a = 2p0\nstate_b = 1s\nk_max = 1.0\n")
        assert main(["coeffs", "--config", cfg]) == 0
        out = capsys.readouterr().out
        values = {}
        for line in out.splitlines():
            if line.startswith("#"):
                continue
            name, value = line.split(None, 1)
            values[name] = value.strip()
        assert float(values["omega"]) == pytest.approx(0.375, rel=1e-12)
        assert float(values["D_z"]) == pytest.approx(128.0 * math.sqrt(2.0) / 243.0, rel=1e-8)
        assert float(values["C"]) == 0.0
        assert float(values["Delta_z"]) == 0.0
        assert float(values["Gamma(k_max=1)"]) > 0.0
        # 12 significant digits: mantissa with 11 decimals
        assert "e" in values["D_z"] and len(values["D_z"].split("e")[0].lstrip("-").replace(".", "")) == 12

    def test_parity_forbidden_pair(self, tmp_path, capsys):
        cfg = write(tmp_path / "pair.cfg", "mode = coeffs\nstate_a = 1s\nstate_b = 2s\n")
        assert main(["coeffs", "--config", cfg]) == 0
        out = capsys.readouterr().out
        for line in out.splitlines():
            if line.startswith(("D_", "A")):
                assert abs(float(line.split()[1])) < 1e-10

    def test_quadrupole_pair(self, tmp_path, capsys):
        cfg = write(tmp_path / "pair.cfg", "mode = coeffs\nstate_a = 3d0\nstate_b = 1s\n")
        assert main(["coeffs", "--config", cfg]) == 0
        out = capsys.readouterr().out
        values = {line.split()[0]: float(line.split()[1]) for line in out.splitlines() if not line.startswith("#")}
        assert abs(values["D_z"]) < 1e-10
        assert abs(values["Q_zz"]) > 0.1


class TestSimulate:
    def test_fixed_point_start(self, tmp_path):
        out = tmp_path / "fp.csv"
        cfg = write(tmp_path / "run.cfg",
                    f"mode = simulate\noutput = {out}\npx0 = 0\npy0 = 0\npz0 = -1\n" + CANONICAL_DYNAMICS)
        assert main(["simulate", "--config", cfg]) == 0
        rows = load_csv(out)
        assert np.all(rows[:, 3] == -1.0)                      # Pz column
        assert np.all(rows[:, 8] == rows[0, 8])                # energy constant

    def test_trace_and_roundtrip_every_row(self, tmp_path):
        out = tmp_path / "run.csv"
        cfg = write(tmp_path / "run.cfg", f"mode = simulate\noutput = {out}\n" + CANONICAL_DYNAMICS)
        assert main(["simulate", "--config", cfg]) == 0
        rows = load_csv(out)
        t, px, py, pz, r11, r22, re12, im12 = (rows[:, i] for i in range(8))
        assert np.max(np.abs(r11 + r22 - 1.0)) < 1e-12
        # Pauli map holds in every row
        assert np.max(np.abs(r11 - 0.5 * (1.0 + pz))) < 1e-12
        assert np.max(np.abs(re12 - 0.5 * px)) < 1e-12
        assert np.max(np.abs(im12 + 0.5 * py)) < 1e-12

    def test_decay_reaches_ground_state(self, tmp_path):
        # run to t0 + 10/q with q = 0.1
        out = tmp_path / "run.csv"
        cfg = write(tmp_path / "run.cfg",
                    f"mode = simulate\noutput = {out}\nomega21 = 1.0\na12 = 0.2\n"
                    "t_start = 0\nt_end = 100\nstep = 0.01\n")
        assert main(["simulate", "--config", cfg]) == 0
        rows = load_csv(out)
        assert abs(rows[-1, 3] + 1.0) < 1e-4

    def test_header_and_metadata(self, tmp_path):
        out = tmp_path / "run.csv"
        cfg = write(tmp_path / "run.cfg", f"mode = simulate\noutput = {out}\n" + CANONICAL_DYNAMICS)
        main(["simulate", "--config", cfg])
        text = out.read_text()
        lines = text.splitlines()
        assert lines[0] == "# quadbloch simulate"
        header_idx = next(i for i, l in enumerate(lines) if not l.startswith("#"))
        assert lines[header_idx] == "t,Px,Py,Pz,rho11,rho22,re_rho12,im_rho12,energy,dipole,shift"
        assert any(l.startswith("# richardson_error") for l in lines[:header_idx])
        assert "\r" not in text

    def test_byte_identical_reruns(self, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        base = "mode = simulate\n" + CANONICAL_DYNAMICS
        cfg_a = write(tmp_path / "a.cfg", base + f"output = {out_a}\n")
        cfg_b = write(tmp_path / "b.cfg", base + f"output = {out_b}\n")
        assert main(["simulate", "--config", cfg_a]) == 0
        assert main(["simulate", "--config", cfg_b]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_si_units_are_scaled_atomic_outputs(self, tmp_path):
        out_at = tmp_path / "at.csv"
        out_si = tmp_path / "si.csv"
        base = "mode = simulate\n" + CANONICAL_DYNAMICS
        cfg = write(tmp_path / "at.cfg", base + f"output = {out_at}\n")
        main(["simulate", "--config", cfg])
        cfg_si = write(tmp_path / "si.cfg", base + f"output = {out_si}\nunits = si\n")
        main(["simulate", "--config", cfg_si])
        at = load_csv(out_at)
        si = load_csv(out_si)
        conv = np.array([constants.ATOMIC_TIME_S, 1, 1, 1, 1, 1, 1, 1,
                         constants.HARTREE_J, constants.DIPOLE_CM, constants.PER_ATOMIC_TIME_S])
        expected = at * conv
        scale = np.maximum(np.abs(expected), 1e-300)
        assert np.max(np.abs(si - expected) / scale) < 1e-12

    def test_unwritable_output_fails_cleanly(self, tmp_path, capsys):
        cfg = write(tmp_path / "run.cfg",
                    f"mode = simulate\noutput = {tmp_path}/nodir/x.csv\n" + CANONICAL_DYNAMICS)
        assert main(["simulate", "--config", cfg]) == 1
        assert "error:" in capsys.readouterr().err

    def test_integrator_abort_propagates(self, tmp_path, capsys):
        out = tmp_path / "x.csv"
        cfg = write(tmp_path / "run.cfg",
                    f"mode = simulate\noutput = {out}\nomega21 = 5.0\na12 = 0.2\n"
                    "px0 = 1\npy0 = 0\npz0 = 0\nt_start = 0\nt_end = 100\nstep = 1.0\n")
        assert main(["simulate", "--config", cfg]) == 1
        assert "smaller step" in capsys.readouterr().err

    def test_state_pair_drives_dynamics(self, tmp_path):
        # level pair supplies omega21 and the relaxation rates; gammas stay explicit
        out = tmp_path / "pair.csv"
        cfg = write(tmp_path / "run.cfg",
                    f"mode = simulate\noutput = {out}\nstate_a = 2p0\nstate_b = 1s\n"
                    "gamma11 = 0.01\nt_start = 0\nt_end = 1\nstep = 0.01\n")
        assert main(["simulate", "--config", cfg]) == 0
        meta = {}
        for line in out.read_text().splitlines():
            if line.startswith("# ") and "=" in line:
                key, value = line[2:].split("=", 1)
                meta[key.strip()] = value.strip()
        assert float(meta["omega21"]) == pytest.approx(-0.375, rel=1e-12)
        assert float(meta["a12"]) == pytest.approx(1.5162329e-08, rel=1e-6)
        assert float(meta["b12"]) == 0.0 and float(meta["c12"]) == 0.0


class TestVerify:
    def test_canonical_parameters_pass(self, tmp_path, capsys):
        cfg = write(tmp_path / "v.cfg", "mode = verify\nstep = 0.001\n"
                    + CANONICAL_DYNAMICS.replace("step = 0.01\n", ""))
        assert main(["verify", "--config", cfg]) == 0
        out = capsys.readouterr().out
        assert "overall: PASS" in out
        assert out.count("pass") >= 6

    def test_flipped_rotation_fails_residual(self, tmp_path, capsys):
        cfg = write(tmp_path / "v.cfg", "mode = verify\nstep = 0.001\n"
                    + CANONICAL_DYNAMICS.replace("step = 0.01\n", ""))
        assert main(["verify", "--config", cfg, "--debug-flip-rotation"]) == 2
        out = capsys.readouterr().out
        assert "closed_form_residual" in out and "FAIL" in out

    def test_q_zero_skips_analytic_checks(self, tmp_path, capsys):
        cfg = write(tmp_path / "v.cfg",
                    "mode = verify\nomega21 = 1.0\nt_start = -10\nt_end = 10\nstep = 0.01\n")
        assert main(["verify", "--config", cfg]) == 0
        out = capsys.readouterr().out
        assert "skipped" in out and "overall: PASS" in out

    def test_coarse_step_reports_degraded_error(self, tmp_path, capsys):
        # convergence order still holds; the agreement check reports the larger error
        cfg = write(tmp_path / "v.cfg",
                    "mode = verify\nomega21 = 0.1\na12 = 0.1\ngamma11 = 0.01\n"
                    "gamma22 = 0.0\ngamma12 = -0.02\nt_start = -20\nt_end = 20\nstep = 1.0\n")
        main(["verify", "--config", cfg])
        out = capsys.readouterr().out
        conv_line = next(l for l in out.splitlines() if l.startswith("convergence_order"))
        assert "pass" in conv_line
        agree_line = next(l for l in out.splitlines() if l.startswith("analytic_agreement"))
        assert float(agree_line.split()[1]) > 1e-8


class TestShift:
    def test_identity_residual_and_t0_row(self, tmp_path, capsys):
        cfg = write(tmp_path / "s.cfg",
                    "mode = shift\nomega21 = 1.0\na12 = 0.2\nb12 = 0.02\nc12 = 0.05\n"
                    "gamma11 = 0.02\ngamma22 = 0.0\ngamma12 = -0.04\n"
                    "t_start = -5\nt_end = 5\nstep = 0.5\n")
        assert main(["shift", "--config", cfg]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "t,shift_full,shift_dipole_only,additional_shift,identity_residual"
        rows = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
        assert np.max(np.abs(rows[:, 4])) < 1e-12
        t0_row = rows[np.argmin(np.abs(rows[:, 0]))]
        assert t0_row[1] == pytest.approx(-0.01, abs=1e-15)   # -tau at t0

    def test_balanced_current_rates_zero_column(self, tmp_path, capsys):
        cfg = write(tmp_path / "s.cfg",
                    "mode = shift\nomega21 = 1.0\na12 = 0.2\nb12 = 0.03\nc12 = 0.03\n"
                    "gamma11 = 0.02\ngamma12 = -0.04\nt_start = -5\nt_end = 5\nstep = 1.0\n")
        assert main(["shift", "--config", cfg]) == 0
        lines = capsys.readouterr().out.splitlines()
        rows = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
        assert np.max(np.abs(rows[:, 3])) == 0.0


class TestExitCodes:
    def test_validation_error_is_one(self, tmp_path, capsys):
        cfg = write(tmp_path / "bad.cfg", "mode = simulate\nstep = -1\n")
        assert main(["simulate", "--config", cfg]) == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_config_file_is_one(self, capsys):
        assert main(["coeffs", "--config", "/nonexistent/x.cfg"]) == 1

    def test_mode_mismatch_is_one(self, tmp_path, capsys):
        cfg = write(tmp_path / "m.cfg", "mode = shift\nomega21 = 1\nt_start = 0\nt_end = 1\nstep = 0.1\n")
        assert main(["verify", "--config", cfg]) == 1
        assert "does not match" in capsys.readouterr().err

    def test_overrides_reach_validation(self, tmp_path, capsys):
        out = tmp_path / "o.csv"
        cfg = write(tmp_path / "run.cfg", f"mode = simulate\noutput = {out}\n" + CANONICAL_DYNAMICS)
        assert main(["simulate", "--config", cfg, "--set", "step=-0.5"]) == 1
        assert "'step' must be positive" in capsys.readouterr().err
