import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from susy_damp.core import (
    ABCoefficients,
    AmpPhaseCoefficients,
    DampingParams,
    RegimeKind,
    RiccatiParam,
    ab_to_amplitude_phase,
    amplitude_phase_to_ab,
    classify_regime,
)
from susy_damp.errors import DomainError

UNDER = classify_regime(DampingParams(0.1, math.sqrt(1.01)))
OVER = classify_regime(DampingParams(1.0, math.sqrt(24.0 / 25.0)))
CRIT = classify_regime(DampingParams(1.0, 1.0))


class TestClassifyRegime:
    def test_underdamped_unit_ringing(self):
        p = DampingParams(0.1, math.sqrt(1.01))
        r = classify_regime(p)
        assert r.kind is RegimeKind.UNDERDAMPED
        assert r.omega1 == pytest.approx(1.0, rel=1e-14)
        assert r.alpha is None

    def test_critical(self):
        r = classify_regime(DampingParams(1.0, 1.0))
        assert r.kind is RegimeKind.CRITICAL
        assert r.alpha is None and r.omega1 is None

    def test_overdamped_fifth(self):
        p = DampingParams(1.0, math.sqrt(24.0 / 25.0))
        r = classify_regime(p)
        assert r.kind is RegimeKind.OVERDAMPED
        assert r.alpha == pytest.approx(0.2, rel=1e-14)
        assert r.omega1 is None

    def test_band_is_critical(self):
        # alpha^2 within 1e-9 * omega0^2 of zero counts as critical
        p = DampingParams(1.0 + 1e-12, 1.0)
        assert classify_regime(p).kind is RegimeKind.CRITICAL

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            DampingParams(0.0, 1.0)
        with pytest.raises(ValueError):
            DampingParams(1.0, -2.0)
        with pytest.raises(ValueError):
            DampingParams(math.inf, 1.0)

    @given(
        beta=st.floats(1e-2, 1e2),
        omega0=st.floats(1e-2, 1e2),
    )
    def test_exhaustive_and_deterministic(self, beta, omega0):
        p = DampingParams(beta, omega0)
        r = classify_regime(p)
        assert r == classify_regime(p)
        assert r.kind in (RegimeKind.UNDERDAMPED, RegimeKind.CRITICAL, RegimeKind.OVERDAMPED)

    @given(beta=st.floats(1e-2, 1e2), omega0=st.floats(1e-2, 1e2))
    def test_frequency_partition(self, beta, omega0):
        p = DampingParams(beta, omega0)
        r = classify_regime(p)
        scale = max(p.omega0_sq, beta * beta)
        if r.kind is RegimeKind.UNDERDAMPED:
            assert abs(beta**2 + r.omega1**2 - p.omega0_sq) <= 1e-14 * scale
        elif r.kind is RegimeKind.OVERDAMPED:
            assert abs(beta**2 - r.alpha**2 - p.omega0_sq) <= 1e-14 * scale


class TestRiccatiParam:
    def test_time_scale_and_t_star(self):
        r = RiccatiParam(0.5)
        assert r.time_scale == 2.0
        assert r.t_star == -2.0

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            RiccatiParam(0.0)


class TestConversionExamples:
    def test_symmetric_trig(self):
        ap = ab_to_amplitude_phase(ABCoefficients(1.0, 1.0), UNDER)
        assert ap.amplitude == pytest.approx(2.0)
        assert ap.phase == 0.0

    def test_symmetric_hyperbolic(self):
        ap = ab_to_amplitude_phase(ABCoefficients(1.0, 1.0), OVER)
        assert ap.amplitude == pytest.approx(2.0)
        assert ap.phase == 0.0

    def test_mixed_sign_hyperbolic_rejected(self):
        with pytest.raises(DomainError):
            ab_to_amplitude_phase(ABCoefficients(1.0, -1.0), OVER)

    def test_trig_outside_domain_rejected(self):
        # |A+B| > 2 sqrt(|A B|)
        with pytest.raises(DomainError):
            ab_to_amplitude_phase(ABCoefficients(1.0, -100.0), UNDER)

    def test_inverse_symmetric(self):
        ab = amplitude_phase_to_ab(AmpPhaseCoefficients(2.0, 0.0), UNDER)
        assert (ab.A, ab.B) == (1.0, 1.0)
        ab = amplitude_phase_to_ab(AmpPhaseCoefficients(2.0, 0.0), OVER)
        assert (ab.A, ab.B) == (1.0, 1.0)

    def test_inverse_quarter_phase(self):
        # oracle: the defining relations A+B = amp*cos(phase), 2 sqrt(|AB|) = amp
        amp, phase = 1.0, math.pi / 2.0
        ab = amplitude_phase_to_ab(AmpPhaseCoefficients(amp, phase), UNDER)
        assert ab.A + ab.B == pytest.approx(amp * math.cos(phase), abs=1e-15)
        assert 2.0 * math.sqrt(abs(ab.A * ab.B)) == pytest.approx(amp, rel=1e-14)
        back = ab_to_amplitude_phase(ab, UNDER)
        assert back.amplitude == pytest.approx(amp, rel=1e-12)
        assert back.phase == pytest.approx(phase, rel=1e-12)

    def test_zero_mode(self):
        ab = amplitude_phase_to_ab(AmpPhaseCoefficients(0.0, 0.0), UNDER)
        assert (ab.A, ab.B) == (0.0, 0.0)
        assert ab_to_amplitude_phase(ab, CRIT) == AmpPhaseCoefficients(0.0, 0.0)

    def test_negative_amplitude_rejected(self):
        with pytest.raises(ValueError):
            AmpPhaseCoefficients(-1.0, 0.0)


# trig form needs |A/B| within [3 - 2 sqrt(2), 3 + 2 sqrt(2)] for A*B < 0
_trig_ratio = st.floats(0.18, 5.8)
_scale = st.floats(1e-2, 1e2)


class TestRoundTripProperties:
    @given(scale=_scale, ratio=_trig_ratio)
    @settings(max_examples=300)
    def test_trig_ab_round_trip(self, scale, ratio):
        a, b = scale, -scale * ratio
        ap = ab_to_amplitude_phase(ABCoefficients(a, b), UNDER)
        back = amplitude_phase_to_ab(ap, UNDER)
        den = max(abs(a), abs(b))
        assert abs(back.A - a) <= 1e-12 * den
        assert abs(back.B - b) <= 1e-12 * den

    @given(scale=_scale, ratio=st.floats(1.05, 1e3))
    @settings(max_examples=300)
    def test_hyperbolic_ab_round_trip(self, scale, ratio):
        a, b = scale * ratio, scale
        ap = ab_to_amplitude_phase(ABCoefficients(a, b), OVER)
        back = amplitude_phase_to_ab(ap, OVER)
        den = max(a, b)
        assert abs(back.A - a) <= 1e-12 * den
        assert abs(back.B - b) <= 1e-12 * den

    @given(amp=st.floats(1e-3, 1e3), phase=st.floats(0.01, math.pi - 0.01))
    @settings(max_examples=300)
    def test_trig_amp_phase_round_trip(self, amp, phase):
        ab = amplitude_phase_to_ab(AmpPhaseCoefficients(amp, phase), UNDER)
        back = ab_to_amplitude_phase(ab, UNDER)
        assert back.amplitude == pytest.approx(amp, rel=1e-12)
        assert back.phase == pytest.approx(phase, rel=1e-12)

    @given(amp=st.floats(1e-3, 1e3), phase=st.floats(0.01, 20.0))
    @settings(max_examples=300)
    def test_hyperbolic_amp_phase_round_trip(self, amp, phase):
        ab = amplitude_phase_to_ab(AmpPhaseCoefficients(amp, phase), OVER)
        back = ab_to_amplitude_phase(ab, OVER)
        assert back.amplitude == pytest.approx(amp, rel=1e-12)
        assert back.phase == pytest.approx(phase, rel=1e-12)
