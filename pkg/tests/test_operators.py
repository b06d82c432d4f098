import math

import numpy as np
import pytest

from susy_damp import jets
from susy_damp.core import DampingParams, RiccatiParam
from susy_damp.errors import DerivativeUnavailable, SingularTime
from susy_damp.modes import seed_function, seed_pm_function, tilde_pm_function
from susy_damp.operators import (
    CallableFunction,
    FDOptions,
    JetFunction,
    OperatorKind,
    OperatorSpec,
    apply,
    apply_with_info,
    factorization_defect,
    fd_derivative,
    first_order_image,
    intertwining_defect,
)
from susy_damp.presets import OVERDAMPED, UNDERDAMPED

P_OVER = OVERDAMPED.params
R1 = RiccatiParam(1.0)


class TestApplyExamples:
    def test_l_annihilates_decay(self):
        p = DampingParams(1.0, 1.0)
        f = CallableFunction(lambda t: math.exp(-t), derivs=(lambda t: -math.exp(-t),))
        op = OperatorSpec(OperatorKind.L, p)
        for t in (0.0, 0.7, 3.0):
            assert apply(op, f, t) == pytest.approx(0.0, abs=1e-15)

    def test_n_eigenvalue(self):
        y_plus = seed_pm_function(P_OVER, +1)
        op = OperatorSpec(OperatorKind.N, P_OVER)
        assert apply(op, y_plus, 0.0) == pytest.approx(0.04, rel=1e-14)

    def test_aplus_value(self):
        y_plus = seed_pm_function(P_OVER, +1)
        op = OperatorSpec(OperatorKind.APLUS, P_OVER, R1)
        assert apply(op, y_plus, 0.0) == pytest.approx(1.2, rel=1e-14)

    def test_riccati_required(self):
        with pytest.raises(ValueError):
            OperatorSpec(OperatorKind.APLUS, P_OVER)

    def test_singular_time(self):
        y_plus = seed_pm_function(P_OVER, +1)
        op = OperatorSpec(OperatorKind.APLUS, P_OVER, R1)
        with pytest.raises(SingularTime):
            apply(op, y_plus, -1.0)


class TestFactorizationDefect:
    def test_quadratic_fd_path(self):
        p = DampingParams(1.0, 1.0)
        f = CallableFunction(lambda t: t * t)
        assert abs(factorization_defect(p, R1, f, 0.5)) <= 1e-6

    def test_analytic_path_underdamped_seed(self):
        f = seed_function(UNDERDAMPED.seed_spec())
        d = factorization_defect(UNDERDAMPED.params, R1, f, 2.0)
        assert abs(d) <= 1e-12

    def test_constant_function(self):
        p = DampingParams(1.0, 1.0)
        f = CallableFunction(lambda t: 1.0)
        assert abs(factorization_defect(p, R1, f, 1.0)) <= 1e-12

    def test_smooth_family_fd(self):
        p = DampingParams(0.7, 1.1)
        r = RiccatiParam(0.8)
        for fn in (
            lambda t: math.sin(1.3 * t + 0.4) * math.exp(-0.2 * t),
            lambda t: math.cosh(0.3 * t) * math.exp(-0.6 * t),
            lambda t: 0.3 + 1.2 * t - 0.4 * t * t + 0.05 * t**3,
        ):
            f = CallableFunction(fn)
            for t in (0.4, 2.2, 7.7):
                assert abs(factorization_defect(p, r, f, t)) <= 1e-6


class TestIntertwiningDefect:
    def test_cubic_fd_path(self):
        p = DampingParams(1.0, 1.0)
        f = CallableFunction(lambda t: t**3)
        assert abs(intertwining_defect(p, R1, f, 1.0)) <= 1e-5

    def test_analytic_path_elementary_mode(self):
        y_plus = seed_pm_function(P_OVER, +1)
        assert abs(intertwining_defect(P_OVER, R1, y_plus, 0.5)) <= 1e-10

    def test_zero_function(self):
        p = DampingParams(1.0, 1.0)
        f = JetFunction(lambda t, k: jets.constant(0.0, t, k))
        assert intertwining_defect(p, R1, f, 1.0) == 0.0

    def test_smooth_family_fd(self):
        p = DampingParams(0.7, 1.1)
        r = RiccatiParam(0.8)
        f = CallableFunction(lambda t: math.sin(1.3 * t + 0.4) * math.exp(-0.2 * t))
        for t in (0.4, 2.2, 7.7):
            assert abs(intertwining_defect(p, r, f, t)) <= 1e-5


class TestLinearity:
    def test_all_kinds(self):
        f = JetFunction(lambda t, k: jets.sine(1.3, 0.4, t, k) * jets.exponential(-0.2, t, k))
        g = JetFunction(lambda t, k: jets.polynomial((0.3, 1.2, -0.4, 0.05), t, k))
        comb = JetFunction(lambda t, k: 1.7 * f.builder(t, k) + (-0.6) * g.builder(t, k))
        for kind in OperatorKind:
            needs_r = kind not in (OperatorKind.L, OperatorKind.N)
            op = OperatorSpec(kind, P_OVER, R1 if needs_r else None)
            for t in (0.3, 1.9, 6.5):
                vf, vg = apply(op, f, t), apply(op, g, t)
                combined = apply(op, comb, t)
                assert abs(combined - (1.7 * vf - 0.6 * vg)) <= 1e-10 * max(
                    1.0, abs(vf), abs(vg)
                )


class TestSusyMapping:
    @pytest.mark.parametrize("sign", [+1, -1])
    def test_aminus_maps_seed_to_tilde(self, sign):
        op = OperatorSpec(OperatorKind.AMINUS, P_OVER, R1)
        seed = seed_pm_function(P_OVER, sign)
        tilde = tilde_pm_function(P_OVER, R1, sign)
        for t in np.linspace(0.0, 10.0, 41):
            t = float(t)
            expected = tilde.value(t)
            assert abs(apply(op, seed, t) - expected) <= 1e-12 * max(1.0, abs(expected))

    def test_aplus_is_not_an_eigenoperator(self):
        op = OperatorSpec(OperatorKind.APLUS, P_OVER, R1)
        y_plus = seed_pm_function(P_OVER, +1)
        ratios = [apply(op, y_plus, float(t)) / y_plus.value(float(t))
                  for t in np.linspace(0.0, 10.0, 21)]
        assert max(ratios) - min(ratios) > 0.1


class TestPartnerShift:
    def test_difference_is_minus_alpha_sq(self):
        f = JetFunction(lambda t, k: jets.hyperbolic_cosine(0.3, 0.1, t, k)
                        * jets.exponential(-0.6, t, k))
        full = OperatorSpec(OperatorKind.PARTNER_EOM, P_OVER, R1)
        part = OperatorSpec(OperatorKind.NG_PARTNER, P_OVER, R1)
        for t in (0.2, 1.4, 8.8):
            val = f.value(t)
            diff = apply(full, f, t) - apply(part, f, t)
            assert diff == pytest.approx(-P_OVER.alpha_sq * val, rel=1e-12, abs=1e-15)


class TestFiniteDifferences:
    def test_orders_against_known_derivatives(self):
        fn = math.sin
        assert fd_derivative(fn, 0.7, 1) == pytest.approx(math.cos(0.7), abs=1e-11)
        assert fd_derivative(fn, 0.7, 2) == pytest.approx(-math.sin(0.7), abs=1e-8)
        assert fd_derivative(fn, 0.7, 3) == pytest.approx(-math.cos(0.7), abs=1e-7)

    def test_second_order_convergence(self):
        # without Richardson the error scales like h^2
        fn = math.sin
        errs = []
        for h in (1e-2, 5e-3):
            d = fd_derivative(fn, 0.7, 2, FDOptions(step=h, richardson=False))
            errs.append(abs(d + math.sin(0.7)))
        assert errs[0] / errs[1] >= 3.5

    def test_defect_convergence_under_halving(self):
        p = DampingParams(0.7, 1.1)
        r = RiccatiParam(0.8)
        f = CallableFunction(lambda t: math.sin(1.3 * t + 0.4) * math.exp(-0.2 * t))
        ts = np.linspace(0.7, 9.3, 7)
        norms = []
        for h in (1e-2, 5e-3):
            norms.append(sum(
                abs(factorization_defect(p, r, f, float(t), fd=FDOptions(step=h, richardson=False)))
                for t in ts
            ))
        assert norms[0] / norms[1] >= 3.5

    def test_stencil_shrinks_near_singularity(self):
        # value is fine close to t*, and the squeezed stencil still works
        tilde = tilde_pm_function(P_OVER, R1, +1)
        t_close = -1.0 + 1e-5
        image = first_order_image(OperatorSpec(OperatorKind.AMINUS, P_OVER, R1), tilde)
        assert np.isfinite(image.value(t_close))

    def test_derivative_unavailable_inside_band(self):
        f = CallableFunction(lambda t: 1.0 / (t + 1.0), singular_time=-1.0,
                             singular_halfwidth=1e-8)
        with pytest.raises(DerivativeUnavailable):
            f.deriv(-1.0 + 1e-9, 1)


class TestApplyWithInfo:
    def test_analytic_function_reports_no_differencing(self):
        y_plus = seed_pm_function(P_OVER, +1)
        _, fd_orders = apply_with_info(OperatorSpec(OperatorKind.N, P_OVER), y_plus, 0.5)
        assert fd_orders == ()

    def test_plain_callable_reports_orders(self):
        f = CallableFunction(lambda t: t * t)
        _, fd_orders = apply_with_info(OperatorSpec(OperatorKind.N, P_OVER), f, 0.5)
        assert fd_orders == (1, 2)

    def test_partial_chain(self):
        f = CallableFunction(lambda t: math.exp(-t), derivs=(lambda t: -math.exp(-t),))
        _, fd_orders = apply_with_info(OperatorSpec(OperatorKind.N, P_OVER), f, 0.5)
        assert fd_orders == (2,)
