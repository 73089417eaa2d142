import numpy as np
import pytest

from lamsim.model import preset
from lamsim.rwa_oracle import rwa_density_tpr
from lamsim.sweep import (SweepAxis, SweepSpec, run_case, run_sweep,
                          rwa_error_curve, steady_state_summary, to_rwf)

STEPS = 512  # coarse grid for structural checks; accuracy is tested elsewhere


class TestRunCase:
    def test_closed_rwa_matches_closed_form(self):
        p = preset("A-I")
        traj = run_case(p, 2.0 * np.pi, drive="rwa", frame="rwf",
                        steps_per_period=STEPS)
        worst = max(np.max(np.abs(traj.states[i] - rwa_density_tpr(p, t)))
                    for i, t in enumerate(traj.times))
        assert worst < 1e-9

    def test_multi_period_continues_smoothly(self):
        p = preset("A-I")
        horizon = 2.5 * 2.0 * np.pi
        traj = run_case(p, horizon, drive="rwa", frame="rwf",
                        steps_per_period=STEPS)
        assert np.all(np.diff(traj.times) > 0)
        assert traj.times[-1] <= horizon * (1 + 1e-12)
        expected = rwa_density_tpr(p, traj.times[-1])
        assert np.max(np.abs(traj.states[-1] - expected)) < 1e-9

    def test_open_states_stay_physical(self):
        traj = run_case(preset("A-II"), 3.0, steps_per_period=STEPS)
        traces = np.einsum("tii->t", traj.states)
        assert np.allclose(traces, 1.0, atol=1e-10)
        assert np.all(traj.populations > -1e-10)

    def test_zero_horizon(self):
        traj = run_case(preset("A-I"), 0.0)
        assert len(traj.times) == 1
        assert traj.states[0, 0, 0] == 1.0

    def test_frames_agree_on_diagonal(self):
        p = preset("A-II")
        lab = run_case(p, 2.0, steps_per_period=STEPS)
        rwf = run_case(p, 2.0, frame="rwf", steps_per_period=STEPS)
        assert np.allclose(lab.populations, rwf.populations)
        assert not np.allclose(lab.states, rwf.states)

    def test_rwf_transform_roundtrip(self):
        p = preset("A-II")
        lab = run_case(p, 1.0, steps_per_period=STEPS)
        assert np.allclose(to_rwf(lab.states, p, lab.times),
                           run_case(p, 1.0, frame="rwf",
                                    steps_per_period=STEPS).states)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            run_case(preset("A-I"), 1.0, drive="both")
        with pytest.raises(ValueError):
            run_case(preset("A-I"), 1.0, frame="interaction")


class TestAxes:
    def test_values_include_endpoints(self):
        axis = SweepAxis("omega_p", 5.0, 7.0, 0.5)
        assert np.allclose(axis.values(), [5.0, 5.5, 6.0, 6.5, 7.0])

    def test_single_point(self):
        assert np.allclose(SweepAxis("omega_c", 4.0, 4.0, 1.0).values(),
                           [4.0])

    def test_unknown_parameter(self):
        with pytest.raises(ValueError):
            SweepAxis("e2", 1.0, 2.0, 0.5)

    def test_bad_step(self):
        with pytest.raises(ValueError):
            SweepAxis("omega_p", 5.0, 7.0, -0.5)


class TestSpecValidation:
    def test_unknown_observable(self):
        with pytest.raises(ValueError, match="observable"):
            SweepSpec(base=preset("A-II"),
                      axis1=SweepAxis("omega_p", 5.0, 6.0, 1.0),
                      observables=("entropy",))

    def test_grid_order(self):
        spec = SweepSpec(base=preset("A-II"),
                         axis1=SweepAxis("omega_p", 5.0, 6.0, 1.0),
                         axis2=SweepAxis("omega_c", 3.0, 4.0, 1.0))
        grid = spec.grid()
        assert grid[0] == {"omega_p": 5.0, "omega_c": 3.0}
        assert grid[1] == {"omega_p": 5.0, "omega_c": 4.0}
        assert len(grid) == 4


class TestSteadyState:
    def test_resonant_summary(self):
        s = steady_state_summary(preset("B-II"), rwa=True)
        rho = s["rho_ss_rwf"]
        assert np.isclose(np.trace(rho).real, 1.0, atol=1e-9)
        assert rho[1, 1].real < 1e-4  # dark state at two-photon resonance
        assert s["gap"] > 0.0
        assert s["t_conv"] > 0.0

    def test_closed_case_rejected(self):
        with pytest.raises(ValueError, match="dissipation"):
            steady_state_summary(preset("A-I"), rwa=False)


class TestRunSweep:
    def test_failure_isolation(self):
        # gamma_12 = gamma_23 = 0 makes the point non-dissipative, which
        # must produce an error row, not abort the sweep
        base = preset("B-II").with_(gamma_23=0.0)
        spec = SweepSpec(base=base,
                         axis1=SweepAxis("gamma_12", 0.0, 0.9, 0.9),
                         drive="rwa", observables=("populations",))
        result = run_sweep(spec)
        assert len(result.rows) == 2
        assert "error" in result.rows[0]
        assert "error" not in result.rows[1]
        assert result.rows[1]["rwa_rho22"] < 1e-4

    def test_columns_cover_all_rows(self):
        base = preset("B-II").with_(gamma_23=0.0)
        spec = SweepSpec(base=base,
                         axis1=SweepAxis("gamma_12", 0.0, 0.9, 0.9),
                         drive="rwa", observables=("populations",))
        result = run_sweep(spec)
        for row in result.rows:
            assert set(row) <= set(result.columns)
        assert len(result.table()) == len(result.rows)


def test_rwa_error_curve_starts_at_zero():
    times, errors = rwa_error_curve(preset("A-I"), 2.0,
                                    steps_per_period=STEPS)
    assert errors[0] == 0.0
    assert np.max(errors) > 0.01  # counter-rotating terms do act
    assert len(times) == len(errors)
