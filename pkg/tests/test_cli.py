import json
import math

import pytest

from ptchain.cli import main, parse_sigma_mode
from ptchain.sweeps import UsageError, format_float


def run_cli(capsys, *args):
    rc = main(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestFloatFormat:
    def test_round_trip_and_specials(self):
        assert format_float(0.1) == "0.1"
        assert format_float(-0.0) == "0.0"
        assert format_float(float("inf")) == "inf"
        assert format_float(float("-inf")) == "-inf"
        assert float(format_float(1.2307692307692308)) == 1.2307692307692308


class TestSigmaMode:
    def test_cpa_keyword(self):
        assert parse_sigma_mode("cpa") is None

    def test_fixed_complex(self):
        assert parse_sigma_mode("fixed:0.5,-0.25") == complex(0.5, -0.25)

    def test_garbage_rejected(self):
        with pytest.raises(UsageError):
            parse_sigma_mode("fixed:zzz")


class TestSweepCommand:
    def test_csv_structure_and_order(self, capsys):
        rc, out, _ = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                             "--omega-min", "-1.5", "--omega-max", "1.5", "--steps", "7")
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0] == ("omega,k,T,R_L,R_R,abs_s1_sq,abs_s2_sq,"
                            "log10_abs_s1_sq,log10_abs_s2_sq,delta,phase,theta,flags")
        assert len(lines) == 8
        omegas = [float(ln.split(",")[0]) for ln in lines[1:]]
        assert omegas == sorted(omegas)
        assert omegas[0] == -1.5 and omegas[-1] == 1.5

    def test_pole_row_is_flagged_not_bare(self, capsys):
        rc, out, _ = run_cli(capsys, "sweep", "--U", "0.5",
                             "--gamma", repr(math.sqrt(1.75)),
                             "--omega-min", "0.5", "--omega-max", "1.5", "--steps", "3")
        assert rc == 0
        rows = out.strip().splitlines()[1:]
        pole_rows = [r for r in rows if r.endswith("pole")]
        assert len(pole_rows) == 1
        cells = pole_rows[0].split(",")
        header = out.strip().splitlines()[0].split(",")
        row = dict(zip(header, cells))
        assert row["omega"] == "1.0"
        assert row["T"] == "inf"
        assert row["log10_abs_s2_sq"] == "-inf"
        assert row["theta"] == "0.0"
        assert row["phase"] == "broken"
        # no inf appears in any unflagged row
        for r in rows:
            if not r.endswith("pole"):
                assert "inf" not in r

    def test_byte_identical_reruns(self, tmp_path, capsys):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            rc, _, _ = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                               "--steps", "101", "--out", str(p))
            assert rc == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_bad_range_exits_2_naming_field(self, capsys):
        rc, _, err = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                             "--omega-max", "2.5")
        assert rc == 2
        assert "omega_max" in err

    def test_missing_gamma_exits_2(self, capsys):
        rc, _, err = run_cli(capsys, "sweep", "--U", "0.5")
        assert rc == 2
        assert "gamma" in err

    def test_json_format_rejected_for_bulk(self, capsys):
        rc, _, err = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                             "--format", "json")
        assert rc == 2
        assert "format" in err

    def test_negative_gamma_rows_flagged_mirrored(self, capsys):
        rc, out, _ = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "-0.5",
                             "--steps", "3", "--omega-min", "-1", "--omega-max", "1")
        assert rc == 0
        for row in out.strip().splitlines()[1:]:
            assert row.endswith("mirrored")

    def test_fixed_sigma_mode(self, capsys):
        rc, out, _ = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                             "--steps", "5", "--sigma-mode", "fixed:1.0,0.0")
        assert rc == 0
        assert len(out.strip().splitlines()) == 6

    def test_plot_written_next_to_csv(self, tmp_path, capsys):
        out_csv = tmp_path / "sweep.csv"
        rc, _, _ = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                           "--steps", "41", "--out", str(out_csv), "--plot")
        assert rc == 0
        png = tmp_path / "sweep.png"
        assert png.exists() and png.stat().st_size > 0

    def test_bare_plot_without_out_is_usage_error(self, capsys):
        rc, _, err = run_cli(capsys, "sweep", "--U", "0.5", "--gamma", "0.5",
                             "--steps", "5", "--plot")
        assert rc == 2
        assert "plot" in err


class TestHeatmapCommand:
    def test_row_major_omega_fastest(self, capsys):
        rc, out, _ = run_cli(capsys, "heatmap", "--U", "0.5",
                             "--gamma-min", "0", "--gamma-max", "1", "--gamma-steps", "3",
                             "--omega-min", "-1", "--omega-max", "1", "--steps", "4")
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0] == "gamma,omega,log10_abs_s1_sq,log10_abs_s2_sq,flags"
        assert len(lines) == 1 + 3 * 4
        gammas = [float(ln.split(",")[0]) for ln in lines[1:]]
        omegas = [float(ln.split(",")[1]) for ln in lines[1:]]
        assert gammas == sorted(gammas)
        assert omegas[:4] == sorted(omegas[:4])
        assert gammas[0] == gammas[3] and gammas[4] > gammas[3]

    def test_single_cell_free_chain(self, capsys):
        rc, out, _ = run_cli(capsys, "heatmap", "--U", "0",
                             "--gamma-min", "0", "--gamma-max", "0", "--gamma-steps", "1",
                             "--omega-min", "0", "--omega-max", "0", "--steps", "1")
        assert rc == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        assert lines[1] == "0.0,0.0,0.0,0.0,"

    def test_pole_cell_and_neighbours_flagged(self, capsys):
        # grid aligned so that (gamma_cpa, omega0) for U = 0.5 is hit exactly
        gamma_cpa = repr(math.sqrt(1.75))
        rc, out, _ = run_cli(capsys, "heatmap", "--U", "0.5",
                             "--gamma-min", gamma_cpa, "--gamma-max", gamma_cpa,
                             "--gamma-steps", "1",
                             "--omega-min", "0.9", "--omega-max", "1.1", "--steps", "3")
        assert rc == 0
        lines = out.strip().splitlines()[1:]
        flags = [ln.split(",")[-1] for ln in lines]
        assert flags == ["pole_adjacent", "pole|pole_adjacent", "pole_adjacent"]

    def test_negative_gamma_range_exits_2(self, capsys):
        rc, _, err = run_cli(capsys, "heatmap", "--U", "0.5", "--gamma-min", "-0.1")
        assert rc == 2
        assert "gamma_min" in err

    def test_finite_off_pole_grid(self, capsys):
        rc, out, _ = run_cli(capsys, "heatmap", "--U", "0.5",
                             "--gamma-min", "0", "--gamma-max", "1", "--gamma-steps", "5",
                             "--omega-min", "-1.5", "--omega-max", "0.5", "--steps", "5")
        assert rc == 0
        for ln in out.strip().splitlines()[1:]:
            assert "inf" not in ln

    def test_plot_written(self, tmp_path, capsys):
        out_csv = tmp_path / "heat.csv"
        rc, _, _ = run_cli(capsys, "heatmap", "--U", "0.5",
                           "--gamma-steps", "12", "--steps", "12",
                           "--out", str(out_csv), "--plot")
        assert rc == 0
        assert (tmp_path / "heat.png").stat().st_size > 0


class TestEpCommand:
    def test_standard_pair_json(self, capsys):
        rc, out, _ = run_cli(capsys, "ep", "--U", "0.5", "--gamma", "0.5")
        assert rc == 0
        payload = json.loads(out)
        assert payload["omega_minus"] == pytest.approx(0.5 - math.sqrt(1.75), abs=1e-12)
        assert payload["omega_plus"] == pytest.approx(0.5 + math.sqrt(1.75), abs=1e-12)
        assert payload["condition_value"] == pytest.approx(-3.5)
        assert "broken phase" in payload["summary"]

    def test_no_transition_case(self, capsys):
        rc, out, _ = run_cli(capsys, "ep", "--U", "0.5", "--gamma", "1.95")
        payload = json.loads(out)
        assert rc == 0
        assert payload["omega_minus"] is None and payload["omega_plus"] is None

    def test_boundary_condition_value(self, capsys):
        rc, out, _ = run_cli(capsys, "ep", "--U", "0", "--gamma", "2")
        payload = json.loads(out)
        assert payload["condition_value"] == 0.0
        assert payload["omega_minus"] is None

    def test_csv_format(self, capsys):
        rc, out, _ = run_cli(capsys, "ep", "--U", "0.5", "--gamma", "0.5", "--format", "csv")
        assert rc == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("U,gamma,condition_value,omega_minus")
        assert len(lines) == 2


class TestCpaCommand:
    def test_existing_point(self, capsys):
        rc, out, _ = run_cli(capsys, "cpa", "--U", "0.5")
        payload = json.loads(out)
        assert rc == 0
        assert payload["exists"]
        assert payload["omega0"] == 1.0
        assert payload["k0"] == pytest.approx(math.pi / 3, abs=1e-12)
        assert payload["gamma_cpa"] == pytest.approx(math.sqrt(1.75), abs=1e-15)

    def test_boundary_excluded(self, capsys):
        rc, out, _ = run_cli(capsys, "cpa", "--U", "1.0")
        payload = json.loads(out)
        assert rc == 0
        assert not payload["exists"]
        assert "|U| < 1" in payload["existence_bound"]

    def test_zero_defect(self, capsys):
        rc, out, _ = run_cli(capsys, "cpa", "--U", "0")
        payload = json.loads(out)
        assert payload["omega0"] == 0.0
        assert payload["gamma_cpa"] == pytest.approx(math.sqrt(2.0), abs=1e-15)


class TestVerifyCommand:
    def test_passes_and_prints_residual_lines(self, capsys):
        rc, out, _ = run_cli(capsys, "verify", "--samples", "60", "--seed", "42")
        assert rc == 0
        assert "RESULT PASS" in out
        assert "max_residual" in out

    def test_json_report(self, capsys):
        rc, out, _ = run_cli(capsys, "verify", "--samples", "40", "--seed", "2",
                             "--format", "json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert payload["invariants"]

    def test_deterministic_output(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "--samples", "50", "--seed", "6")
        _, second, _ = run_cli(capsys, "verify", "--samples", "50", "--seed", "6")
        assert first == second

    def test_injected_fault_exits_1_naming_identity(self, capsys, monkeypatch):
        from ptchain import scattering
        from ptchain.scattering import ScatteringMatrix

        true_s_matrix = scattering.s_matrix

        def broken(params, wp, eps_pole=scattering.POLE_EPS):
            sm = true_s_matrix(params, wp, eps_pole)
            return ScatteringMatrix(sm.s11, -sm.s12, sm.s21, sm.s22)

        monkeypatch.setattr(scattering, "s_matrix", broken)
        rc, out, _ = run_cli(capsys, "verify", "--samples", "30", "--seed", "42")
        assert rc == 1
        assert "FAIL pseudo_unitarity_s_conj_inverse" in out


class TestConfigFile:
    def test_config_supplies_values_flags_win(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"U": 0.5, "gamma": 0.5, "steps": 5,
                                      "omega_min": -1.0, "omega_max": 1.0}))
        rc, out, _ = run_cli(capsys, "sweep", "--config", str(config), "--steps", "9")
        assert rc == 0
        assert len(out.strip().splitlines()) == 10  # flag value 9 beats config 5

    def test_unknown_config_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"U": 0.5, "gamma": 0.5, "bogus": 1}))
        rc, _, err = run_cli(capsys, "sweep", "--config", str(config))
        assert rc == 2
        assert "config" in err

    def test_config_for_scalar_report(self, tmp_path, capsys):
        config = tmp_path / "ep.json"
        config.write_text(json.dumps({"U": 0.5, "gamma": 0.5}))
        rc, out, _ = run_cli(capsys, "ep", "--config", str(config))
        assert rc == 0
        assert json.loads(out)["omega_plus"] is not None


class TestOutFile:
    def test_scalar_report_written_to_file(self, tmp_path, capsys):
        out_path = tmp_path / "cpa.json"
        rc, _, _ = run_cli(capsys, "cpa", "--U", "0.5", "--out", str(out_path))
        assert rc == 0
        assert json.loads(out_path.read_text())["exists"]
