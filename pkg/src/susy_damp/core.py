"""Oscillator parameters, regime classification, and coefficient conversions.

Everything is dimensionless: the time unit is absorbed into the rates, so
``beta``, ``omega0`` and ``gamma`` all carry dimension 1/time with the unit
scaled out.  All types are immutable values and all functions are pure, so
they can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

#: Half-width of the critical band for alpha^2, in units of omega0^2.
#: alpha^2 = 0 is a measure-zero case; floating-point input needs a band,
#: and the critical closed forms are the numerically stable ones inside it.
TOL_CRIT = 1e-9

#: Relative clamp for inverse trig/hyperbolic arguments that land just
#: outside their domain through roundoff.
_CLAMP = 1e-12


class RegimeKind(Enum):
    UNDERDAMPED = "underdamped"
    CRITICAL = "critical"
    OVERDAMPED = "overdamped"


@dataclass(frozen=True)
class DampingParams:
    """Friction constant per unit mass and natural frequency.

    The equation of motion is ``y'' + 2*beta*y' + omega0**2 * y = 0``;
    note the friction coefficient in the equation is ``2*beta``.
    Only the physically damped quadrant ``beta > 0``, ``omega0 > 0`` is
    accepted here.  Signed ``beta`` (flutter) is representable only in the
    integration oracle, which takes raw coefficients.
    """

    beta: float
    omega0: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise ValueError(f"beta must be finite and > 0, got {self.beta!r}")
        if not (math.isfinite(self.omega0) and self.omega0 > 0.0):
            raise ValueError(f"omega0 must be finite and > 0, got {self.omega0!r}")

    @property
    def omega0_sq(self) -> float:
        return self.omega0 * self.omega0

    @property
    def alpha_sq(self) -> float:
        """beta^2 - omega0^2; its sign selects the damping regime."""
        return self.beta * self.beta - self.omega0 * self.omega0


@dataclass(frozen=True)
class Regime:
    """Damping regime tag plus the rate that is real in that regime.

    ``alpha`` (the real decay-rate split) is populated only for OVERDAMPED,
    ``omega1`` (the ringing frequency) only for UNDERDAMPED; the critical
    case carries neither.
    """

    kind: RegimeKind
    alpha: float | None = None
    omega1: float | None = None


def classify_regime(p: DampingParams) -> Regime:
    """Classify by the sign of alpha^2 with a tolerance band around zero."""
    a2 = p.alpha_sq
    band = TOL_CRIT * p.omega0_sq
    if a2 < -band:
        return Regime(RegimeKind.UNDERDAMPED, omega1=math.sqrt(-a2))
    if a2 > band:
        return Regime(RegimeKind.OVERDAMPED, alpha=math.sqrt(a2))
    return Regime(RegimeKind.CRITICAL)


@dataclass(frozen=True)
class RiccatiParam:
    """Family parameter gamma of the general Riccati solution.

    ``gamma`` is the inverse of the integration constant, which enters the
    problem as a new time scale ``time_scale = 1/gamma``.  Every member of
    the family is singular at ``t_star = -1/gamma``.
    """

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma) or self.gamma == 0.0:
            raise ValueError(f"gamma must be finite and nonzero, got {self.gamma!r}")

    @property
    def time_scale(self) -> float:
        return 1.0 / self.gamma

    @property
    def t_star(self) -> float:
        """Blow-up instant; opposite sign to gamma."""
        return -1.0 / self.gamma


@dataclass(frozen=True)
class ABCoefficients:
    """Weights of the two elementary solutions in a superposition.

    For the critical Riccati-parameter family the second slot holds the
    free constant of the independent second solution (the reduction-of-order
    constant), not a coefficient of a degenerate exponential.
    """

    A: float
    B: float


@dataclass(frozen=True)
class AmpPhaseCoefficients:
    """Amplitude/phase form: amplitude = 2*sqrt(|A*B|)."""

    amplitude: float
    phase: float

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0.0):
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude!r}")


Coefficients = ABCoefficients | AmpPhaseCoefficients


def ab_to_amplitude_phase(c: ABCoefficients, r: Regime) -> AmpPhaseCoefficients:
    """Convert (A, B) weights to (amplitude, phase).

    Underdamped/critical use the trigonometric form, which requires
    ``|A+B| <= 2*sqrt(|A*B|)``; overdamped uses the hyperbolic form, which
    requires ``A*B > 0`` and ``A+B > 0``.  The phase branch is canonical:
    [0, pi] for the trig form, [0, inf) for the hyperbolic one, so the sign
    of A-B is not preserved.  Raises :class:`DomainError` outside these
    domains; the caller must then keep the (A, B) form.
    """
    amp = 2.0 * math.sqrt(abs(c.A * c.B))
    s = c.A + c.B
    if r.kind is RegimeKind.OVERDAMPED:
        if c.A * c.B <= 0.0:
            raise DomainError(
                f"hyperbolic amplitude/phase form needs A*B > 0, got A={c.A!r} B={c.B!r}"
            )
        if s <= 0.0:
            raise DomainError(
                f"hyperbolic amplitude/phase form needs A+B > 0, got A={c.A!r} B={c.B!r}"
            )
        x = s / amp
        if x < 1.0:
            if x <= 1.0 - _CLAMP:  # unreachable for A*B>0 by AM-GM, kept as a guard
                raise DomainError(f"(A+B)/amplitude = {x!r} < 1 in hyperbolic form")
            x = 1.0
        return AmpPhaseCoefficients(amp, math.acosh(x))
    # trig form (underdamped and critical)
    if amp == 0.0:
        if s == 0.0:
            return AmpPhaseCoefficients(0.0, 0.0)
        raise DomainError(f"trig form needs |A+B| <= 2*sqrt(|A*B|), got A={c.A!r} B={c.B!r}")
    x = s / amp
    if abs(x) > 1.0:
        if abs(x) > 1.0 + _CLAMP:
            raise DomainError(
                f"trig form needs |A+B| <= 2*sqrt(|A*B|), got (A+B)/amplitude = {x!r}"
            )
        x = math.copysign(1.0, x)
    return AmpPhaseCoefficients(amp, math.acos(x))


def amplitude_phase_to_ab(c: AmpPhaseCoefficients, r: Regime) -> ABCoefficients:
    """Inverse of :func:`ab_to_amplitude_phase` on the canonical branch.

    Returns the representative (A, B) pair with ``A >= B`` satisfying
    ``A + B = amplitude * cos(phase)`` (or ``cosh`` for overdamped) and
    ``2*sqrt(|A*B|) = amplitude``.
    """
    amp, phi = c.amplitude, c.phase
    if amp == 0.0:
        return ABCoefficients(0.0, 0.0)
    if r.kind is RegimeKind.OVERDAMPED:
        half = 0.5 * amp
        return ABCoefficients(half * math.exp(phi), half * math.exp(-phi))
    cph = math.cos(phi)
    s = amp * cph
    if abs(cph) == 1.0:
        # cos(phase) = +-1: the double root A = B = s/2 is the inverse image
        return ABCoefficients(0.5 * s, 0.5 * s)
    d = math.hypot(s, amp)
    return ABCoefficients(0.5 * (s + d), 0.5 * (s - d))
