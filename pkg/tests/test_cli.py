import numpy as np
import pytest

from lamsim.cli import (ConfigError, EXIT_CONFIG, EXIT_OK, RunConfig,
                        build_config, main, parse_config_text,
                        resolve_params)

STEPS = "64"  # keep CLI round trips fast; numerics are tested elsewhere


class TestConfigText:
    def test_basic(self):
        values = parse_config_text(
            'case = "A-II"\n# comment\neps_ss = 1e-4\nworkers = 2\n')
        assert values == {"case": "A-II", "eps_ss": 1e-4, "workers": 2}

    def test_inline_comment_and_quotes(self):
        values = parse_config_text("drive = 'rwa'  # co-rotating only\n")
        assert values == {"drive": "rwa"}

    def test_unknown_key_names_line(self):
        with pytest.raises(ConfigError, match="line 2.*bogus"):
            parse_config_text("case = \"A-I\"\nbogus = 3\n")

    def test_type_mismatch(self):
        with pytest.raises(ConfigError, match="steps_per_period"):
            parse_config_text("steps_per_period = many\n")

    def test_malformed_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config_text("just some words\n")


class TestBuildConfig:
    def _args(self, **kw):
        import argparse
        ns = argparse.Namespace(config=None)
        for key, value in kw.items():
            setattr(ns, key, value)
        return ns

    def test_flags_override_file(self, tmp_path):
        cfg_file = tmp_path / "run.cfg"
        cfg_file.write_text('case = "A-I"\nsteps_per_period = 100\n')
        args = self._args(config=str(cfg_file), steps_per_period=200)
        cfg = build_config(args)
        assert cfg.case == "A-I" and cfg.steps_per_period == 200

    def test_preset_conflicts_with_explicit(self):
        with pytest.raises(ConfigError, match="conflicts"):
            build_config(self._args(case="A-I", rabi_p=2.0))

    def test_periods_horizon_exclusive(self):
        with pytest.raises(ConfigError, match="mutually exclusive"):
            build_config(self._args(periods=2, horizon=5.0))

    def test_defaults(self):
        cfg = build_config(self._args())
        assert cfg.order == 6 and cfg.steps_per_period == 8191
        assert cfg.drive == "both" and cfg.eps_ss == 1e-6


class TestResolveParams:
    def test_preset(self):
        p = resolve_params(RunConfig(case="B-II"))
        assert p.rabi_c == 0.2 and p.gamma_23 == 1.0

    def test_missing_keys_listed(self):
        with pytest.raises(ConfigError, match="e2"):
            resolve_params(RunConfig())

    def test_explicit_tpr(self):
        cfg = RunConfig(e2=6.0, e3=2.0, rabi_p=1.0, rabi_c=1.0,
                        delta_omega_p=0.5)
        p = resolve_params(cfg)
        assert p.omega_p == pytest.approx(6.5)
        assert p.omega_c == pytest.approx(4.0)

    def test_partial_frequencies_rejected(self):
        cfg = RunConfig(e2=6.0, e3=2.0, rabi_p=1.0, rabi_c=1.0, omega_p=6.0)
        with pytest.raises(ConfigError, match="together"):
            resolve_params(cfg)

    def test_unknown_case(self):
        with pytest.raises(ConfigError, match="unknown case"):
            resolve_params(RunConfig(case="Z-I"))


def _read_csv(path):
    meta, rows = [], []
    for line in path.read_text().splitlines():
        (meta if line.startswith("#") else rows).append(line)
    return meta, rows


class TestPropagateCommand:
    def test_row_count_and_header(self, tmp_path):
        out = tmp_path / "ts.csv"
        rc = main(["propagate", "--case", "A-I", "--drive", "rwa",
                   "--periods", "1", "--steps-per-period", STEPS,
                   "--out", str(out)])
        assert rc == EXIT_OK
        meta, rows = _read_csv(out)
        assert rows[0] == ("t,rho11,rho22,rho33,re_r12,im_r12,re_r13,"
                           "im_r13,re_r23,im_r23,drive,frame")
        assert len(rows) == 1 + int(STEPS) + 1  # header + steps+1 grid points
        assert any("rabi_c = 1.12" in line for line in meta)

    def test_round_trippable_floats(self, tmp_path):
        out = tmp_path / "ts.csv"
        main(["propagate", "--case", "A-I", "--drive", "rwa", "--periods",
              "1", "--steps-per-period", STEPS, "--out", str(out)])
        _, rows = _read_csv(out)
        first = rows[1].split(",")
        total = float(first[1]) + float(first[2]) + float(first[3])
        assert total == pytest.approx(1.0, abs=1e-15)

    def test_byte_identical_reruns(self, tmp_path):
        args = ["propagate", "--case", "B-I", "--drive", "full",
                "--periods", "1", "--steps-per-period", STEPS]
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(args + ["--out", str(out1)])
        main(args + ["--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes()

    def test_both_drives_stacked(self, tmp_path):
        out = tmp_path / "ts.csv"
        main(["propagate", "--case", "A-I", "--periods", "1",
              "--steps-per-period", STEPS, "--out", str(out)])
        _, rows = _read_csv(out)
        drives = {row.rsplit(",", 2)[1] for row in rows[1:]}
        assert drives == {"full", "rwa"}


class TestGapCommand:
    def test_eigen_logs_and_summary(self, tmp_path):
        out = tmp_path / "gap.csv"
        rc = main(["gap", "--case", "A-II", "--drive", "full",
                   "--out", str(out)])
        assert rc == EXIT_OK
        _, rows = _read_csv(out)
        log_rows = [r for r in rows if ",log" in r]
        assert len(log_rows) == 9
        gap_row = next(r for r in rows if r.startswith("full,gap,"))
        assert float(gap_row.split(",")[2]) > 0.0


class TestValidateCommand:
    def test_magnus_period_map_is_cptp(self, tmp_path):
        out = tmp_path / "val.csv"
        rc = main(["validate", "--case", "A-II", "--drive", "full",
                   "--out", str(out)])
        assert rc == EXIT_OK
        _, rows = _read_csv(out)
        assert all(row.endswith("pass") for row in rows[1:])


class TestSweepCommand:
    def test_missing_range_is_config_error(self, capsys):
        rc = main(["sweep", "--case", "A-II"])
        assert rc == EXIT_CONFIG
        assert "range" in capsys.readouterr().err

    def test_bad_range_syntax(self):
        assert main(["sweep", "--case", "A-II",
                     "--omega-p-range", "5:7"]) == EXIT_CONFIG

    def test_single_point_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = main(["sweep", "--case", "B-II", "--drive", "rwa",
                   "--omega-p-range", "6:6:1",
                   "--observables", "populations", "--out", str(out)])
        assert rc == EXIT_OK
        _, rows = _read_csv(out)
        header = rows[0].split(",")
        values = dict(zip(header, rows[1].split(",")))
        assert float(values["rwa_rho22"]) < 1e-4


class TestErrorPaths:
    def test_unreadable_config(self):
        assert main(["propagate", "--config", "/nonexistent.cfg"]) == \
            EXIT_CONFIG

    def test_unwritable_output(self):
        rc = main(["propagate", "--case", "A-I", "--drive", "rwa",
                   "--periods", "1", "--steps-per-period", STEPS,
                   "--out", "/nonexistent-dir/x.csv"])
        assert rc == EXIT_CONFIG

    def test_incommensurate_frequencies(self):
        rc = main(["propagate", "--e2", "6", "--e3", "2", "--rabi-p", "1",
                   "--rabi-c", "1", "--delta-omega-p", str(np.pi - 3.0),
                   "--periods", "1"])
        assert rc == EXIT_CONFIG
