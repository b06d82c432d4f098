import math

import numpy as np
import pytest

from susy_damp.core import RiccatiParam
from susy_damp.errors import SingularInterval, StepFailure
from susy_damp.modes import eval_tilde, tilde_jet
from susy_damp.oracle import (
    IVP,
    integrate,
    integrate_fixed_rk4,
    self_convergence,
)
from susy_damp.presets import ALL_PRESETS, CRITICAL, OVERDAMPED, UNDERDAMPED


class TestFreeDamping:
    def test_critical_matches_closed_form(self):
        p = CRITICAL.params
        grid = np.linspace(0.0, 10.0, 101)
        traj = integrate(IVP.from_params(p, 0.0, 1.0, 0.0, 10.0), grid=grid)
        exact = np.exp(-grid) * (1.0 + grid)
        assert np.max(np.abs(traj.ys - exact)) <= 1e-8 * np.max(np.abs(exact))

    def test_zero_data_stays_zero(self):
        p = OVERDAMPED.params
        grid = np.linspace(0.0, 10.0, 11)
        traj = integrate(IVP.from_params(p, 0.0, 0.0, 0.0, 10.0), grid=grid)
        assert np.all(traj.ys == 0.0)
        assert np.all(traj.dys == 0.0)

    def test_trajectory_shape_and_stats(self):
        p = CRITICAL.params
        grid = np.linspace(0.0, 5.0, 7)
        traj = integrate(IVP.from_params(p, 0.0, 1.0, 0.0, 5.0), grid=grid)
        assert len(traj.ts) == len(traj.ys) == len(traj.dys) == 7
        assert np.all(np.diff(traj.ts) > 0)
        assert traj.stats.accepted > 0
        assert traj.stats.max_error_estimate <= 1.0


class TestPartnerLaw:
    @pytest.mark.parametrize(
        "preset", ALL_PRESETS, ids=lambda p: p.name
    )
    def test_matches_closed_form_from_closed_initial_data(self, preset):
        grid = np.linspace(0.0, 10.0, 201)
        for g in preset.gammas:
            spec = preset.tilde_spec(g)
            ic = eval_tilde(spec, 0.0)
            ivp = IVP.from_params(preset.params, 0.0, ic.y, ic.dy, 10.0, RiccatiParam(g))
            traj = integrate(ivp, grid=grid)
            closed = tilde_jet(spec, grid, 0).d[0]
            scale = np.max(np.abs(closed))
            assert np.max(np.abs(traj.ys - closed)) <= 1e-6 * scale

    def test_underdamped_example_tolerance(self):
        spec = UNDERDAMPED.tilde_spec(1.0)
        ic = eval_tilde(spec, 0.0)
        assert ic.y == -1.0
        grid = np.linspace(0.0, 10.0, 101)
        ivp = IVP.from_params(UNDERDAMPED.params, 0.0, ic.y, ic.dy, 10.0, RiccatiParam(1.0))
        traj = integrate(ivp, grid=grid)
        closed = tilde_jet(spec, grid, 0).d[0]
        assert np.max(np.abs(traj.ys - closed)) <= 1e-6 * np.max(np.abs(closed))


class TestSingularHandling:
    def test_interval_straddling_pole_rejected(self):
        with pytest.raises(SingularInterval):
            IVP.from_params(CRITICAL.params, -3.0, 1.0, 0.0, 0.0, RiccatiParam(0.5))

    def test_far_side_of_pole_is_fine(self):
        # gamma = 1 puts t* at -1; integrate entirely on the left of it
        ivp = IVP.from_params(CRITICAL.params, -3.0, 1.0, 0.0, -1.5, RiccatiParam(1.0))
        traj = integrate(ivp, grid=[-3.0, -1.5])
        assert np.all(np.isfinite(traj.ys))

    def test_step_failure_when_interval_unresolvable(self):
        # a window narrower than time resolution at its own magnitude
        p = CRITICAL.params
        ivp = IVP.from_params(p, 1e9, 1.0, 0.0, 1e9 + 1e-5)
        with pytest.raises(StepFailure):
            integrate(ivp, grid=[1e9, 1e9 + 1e-5])

    def test_negative_beta_explores_flutter(self):
        # exploratory: signed beta grows instead of decaying
        ivp = IVP(beta=-0.2, omega0=1.0, t0=0.0, y0=1.0, dy0=0.0, t_end=10.0)
        traj = integrate(ivp, grid=[0.0, 10.0])
        assert abs(traj.ys[-1]) > 1.0


class TestSelfConvergence:
    def test_overdamped_with_half(self):
        spec = OVERDAMPED.tilde_spec(0.5)
        ic = eval_tilde(spec, 0.0)
        ivp = IVP.from_params(OVERDAMPED.params, 0.0, ic.y, ic.dy, 10.0, RiccatiParam(0.5))
        assert self_convergence(ivp, np.linspace(0.0, 10.0, 101)) < 1e-7

    def test_critical_with_five(self):
        spec = CRITICAL.tilde_spec(5.0)
        ic = eval_tilde(spec, 0.0)
        ivp = IVP.from_params(CRITICAL.params, 0.0, ic.y, ic.dy, 10.0, RiccatiParam(5.0))
        scale = max(1.0, abs(ic.y))
        assert self_convergence(ivp, np.linspace(0.0, 10.0, 101)) < 1e-7 * scale

    def test_zero_problem(self):
        ivp = IVP.from_params(CRITICAL.params, 0.0, 0.0, 0.0, 5.0)
        assert self_convergence(ivp, [0.0, 2.5, 5.0]) == 0.0


class TestOrderAndReversal:
    def test_rk4_halving_reduces_error_sixteenfold(self):
        p = CRITICAL.params
        ivp = IVP.from_params(p, 0.0, 1.0, 0.0, 5.0)
        exact = math.exp(-5.0) * 6.0
        e_coarse = abs(float(integrate_fixed_rk4(ivp, 100).ys[-1]) - exact)
        e_fine = abs(float(integrate_fixed_rk4(ivp, 200).ys[-1]) - exact)
        assert e_coarse / e_fine >= 15.0

    def test_time_reversal(self):
        p = CRITICAL.params
        fwd = integrate(IVP.from_params(p, 0.0, 1.0, 0.0, 5.0), grid=[0.0, 5.0])
        back = integrate(
            IVP.from_params(p, 5.0, float(fwd.ys[-1]), float(fwd.dys[-1]), 0.0),
            grid=[0.0, 5.0],
        )
        assert abs(float(back.ys[0]) - 1.0) <= 1e-7
        assert abs(float(back.dys[0])) <= 1e-7

    def test_backward_grid_is_ascending(self):
        p = CRITICAL.params
        traj = integrate(IVP.from_params(p, 5.0, 1.0, 0.0, 0.0), grid=[0.0, 2.5, 5.0])
        assert np.all(np.diff(traj.ts) > 0)


class TestValidation:
    def test_grid_outside_interval(self):
        ivp = IVP.from_params(CRITICAL.params, 0.0, 1.0, 0.0, 5.0)
        with pytest.raises(ValueError):
            integrate(ivp, grid=[0.0, 6.0])

    def test_bad_tolerances(self):
        ivp = IVP.from_params(CRITICAL.params, 0.0, 1.0, 0.0, 5.0)
        with pytest.raises(ValueError):
            integrate(ivp, rel_tol=0.0, grid=[0.0, 5.0])

    def test_empty_interval(self):
        with pytest.raises(ValueError):
            IVP.from_params(CRITICAL.params, 1.0, 1.0, 0.0, 1.0)
