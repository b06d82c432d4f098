import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from susy_damp.core import DampingParams
from susy_damp.errors import SingularTime
from susy_damp.riccati import (
    RiccatiSolution,
    f_eval,
    full_riccati_residual,
    g_eval,
    guard_halfwidth,
    h_eval,
    in_guard_band,
    riccati_residual,
)

_gamma = st.floats(0.01, 10.0).flatmap(
    lambda m: st.sampled_from([m, -m]).map(float)
)
_time = st.floats(0.0, 10.0)


class TestHEval:
    def test_simple_values(self):
        s = RiccatiSolution(1.0)
        assert h_eval(s, 1.0) == 0.5
        assert h_eval(s, 0.0) == 1.0

    def test_singular_instant(self):
        with pytest.raises(SingularTime):
            h_eval(RiccatiSolution(1.0), -1.0)

    def test_guard_band_edges(self):
        s = RiccatiSolution(1.0)
        w = guard_halfwidth(1.0)
        with pytest.raises(SingularTime):
            h_eval(s, -1.0 + 0.5 * w)
        assert np.isfinite(h_eval(s, -1.0 + 3.0 * w))

    def test_zero_gamma_is_constant_solution(self):
        s = RiccatiSolution(0.0)
        p = DampingParams(0.7, 1.3)
        for t in (0.0, 3.0, -5.0):
            assert h_eval(s, t) == 0.0
            assert f_eval(p, s, t) == p.beta
            assert g_eval(p, s, t) == p.beta

    def test_array_evaluation(self):
        s = RiccatiSolution(2.0)
        t = np.array([0.0, 1.0, 4.5])
        np.testing.assert_allclose(h_eval(s, t), 2.0 / (2.0 * t + 1.0))
        with pytest.raises(SingularTime):
            h_eval(s, np.array([0.0, -0.5]))


class TestReducedResidual:
    def test_examples(self):
        assert abs(riccati_residual(RiccatiSolution(1.0), 0.0)) < 1e-14
        assert abs(riccati_residual(RiccatiSolution(0.5), 3.0)) < 1e-14
        assert abs(riccati_residual(RiccatiSolution(-1.0), 0.5)) < 1e-14

    @given(gamma=_gamma, t=_time)
    @settings(max_examples=500)
    def test_identity_everywhere(self, gamma, t):
        assume(not in_guard_band(gamma, t))
        s = RiccatiSolution(gamma)
        h = h_eval(s, t)
        assert abs(riccati_residual(s, t)) <= 1e-13 * max(1.0, h * h)


class TestFullResidual:
    def test_examples(self):
        p = DampingParams(1.0, 1.0)
        assert abs(full_riccati_residual(p, RiccatiSolution(1.0), 0.0)) < 1e-12
        p2 = DampingParams(0.1, 1.0)
        assert abs(full_riccati_residual(p2, RiccatiSolution(0.5), 2.0)) < 1e-12

    def test_singular_time(self):
        p = DampingParams(1.0, 1.0)
        with pytest.raises(SingularTime):
            full_riccati_residual(p, RiccatiSolution(5.0), -0.2)

    @given(beta=st.floats(0.05, 3.0), gamma=_gamma, t=_time)
    @settings(max_examples=500)
    def test_identity_everywhere(self, beta, gamma, t):
        assume(not in_guard_band(gamma, t))
        p = DampingParams(beta, 1.0)
        s = RiccatiSolution(gamma)
        h = h_eval(s, t)
        res = full_riccati_residual(p, s, t)
        assert abs(res) <= 1e-12 * max(1.0, beta * beta + h * h)


class TestFactorPair:
    @given(beta=st.floats(0.05, 3.0), gamma=_gamma, t=_time)
    @settings(max_examples=500)
    def test_sum_and_combined_rules(self, beta, gamma, t):
        assume(not in_guard_band(gamma, t))
        p = DampingParams(beta, 1.0)
        s = RiccatiSolution(gamma)
        f, g = f_eval(p, s, t), g_eval(p, s, t)
        h = h_eval(s, t)
        assert abs(f + g - 2.0 * beta) <= 1e-12 * max(1.0, 2.0 * beta, abs(h))
        # g' = -h' = +h^2
        g_prime = h * h
        assert abs(g_prime + f * g - beta * beta) <= 1e-12 * max(1.0, beta**2 + h * h)


def test_small_gamma_limit():
    s = RiccatiSolution(1e-8)
    t = np.linspace(0.0, 10.0, 1001)
    assert np.max(np.abs(h_eval(s, t))) < 1e-7
