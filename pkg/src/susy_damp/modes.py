"""Closed-form damping modes and their one-parameter partner families.

Seed modes solve ``y'' + 2*beta*y' + omega0^2 y = 0``:

    underdamped   y = amp * cos(omega1*t + phase) * exp(-beta*t)
    critical      y = (A + B*t) * exp(-beta*t)
    overdamped    y = A*exp((-beta+alpha)*t) + B*exp((-beta-alpha)*t)
                    = amp * cosh(alpha*t + phase) * exp(-beta*t)   for A*B > 0

Applying the lowering factor ``A- = d/dt + beta - h`` with
``h = gamma/(gamma*t + 1)`` maps each seed to a partner mode that solves the
modified law with the extra antirestoring term ``-2*h^2``:

    underdamped   -amp * (omega1*sin(th) + h*cos(th)) * exp(-beta*t)
    overdamped     amp * (alpha*sinh(th) - h*cosh(th)) * exp(-beta*t)
    critical      (-A*h + D*(gamma*t+1)^2/gamma^2) * exp(-beta*t)

In the critical case the two elementary images are proportional, so the
independent second solution comes from reduction of order; its free constant
D replaces the slot of B.  All derivatives are jet-based closed forms.

Evaluation exactly at (or within the guard band of) t* = -1/gamma raises
SingularTime rather than returning infinities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import jets
from .core import (
    ABCoefficients,
    AmpPhaseCoefficients,
    Coefficients,
    DampingParams,
    Regime,
    RegimeKind,
    RiccatiParam,
    ab_to_amplitude_phase,
    amplitude_phase_to_ab,
    classify_regime,
)
from .errors import RegimeError, SingularTime
from .operators import JetFunction, TimeFunction
from .riccati import guard_halfwidth, in_guard_band


@dataclass(frozen=True)
class ModeSpec:
    """A fully specified mode: parameters, coefficients, and family.

    ``riccati=None`` selects the seed family; a :class:`RiccatiParam`
    selects the corresponding partner-family member.  The regime is always
    derived from the parameters.
    """

    params: DampingParams
    coeffs: Coefficients
    riccati: RiccatiParam | None = None
    regime: Regime = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "regime", classify_regime(self.params))

    @property
    def is_tilde(self) -> bool:
        return self.riccati is not None


@dataclass(frozen=True)
class ModeEval:
    """Value and first two derivatives at one time, all closed-form."""

    t: float
    y: float
    dy: float
    d2y: float


def _as_amp_phase(coeffs: Coefficients, regime: Regime) -> AmpPhaseCoefficients:
    if isinstance(coeffs, AmpPhaseCoefficients):
        return coeffs
    return ab_to_amplitude_phase(coeffs, regime)


def _as_ab(coeffs: Coefficients, regime: Regime) -> ABCoefficients:
    if isinstance(coeffs, ABCoefficients):
        return coeffs
    return amplitude_phase_to_ab(coeffs, regime)


def _check_band(spec_gamma: float, t) -> None:
    if in_guard_band(spec_gamma, t):
        raise SingularTime(
            f"t within guard band of t* = {-1.0 / spec_gamma!r} (gamma = {spec_gamma!r})"
        )


def seed_jet(spec: ModeSpec, t, order: int = 2) -> jets.Jet:
    """Jet of the seed mode at t (scalar or array)."""
    p, regime = spec.params, spec.regime
    env = jets.exponential(-p.beta, t, order)
    if regime.kind is RegimeKind.UNDERDAMPED:
        c = _as_amp_phase(spec.coeffs, regime)
        return c.amplitude * jets.cosine(regime.omega1, c.phase, t, order) * env
    if regime.kind is RegimeKind.CRITICAL:
        c = _as_ab(spec.coeffs, regime)
        return jets.linear(c.A, c.B, t, order) * env
    # overdamped: evaluate in whichever parametrization was supplied
    if isinstance(spec.coeffs, AmpPhaseCoefficients):
        c = spec.coeffs
        return c.amplitude * jets.hyperbolic_cosine(regime.alpha, c.phase, t, order) * env
    c = spec.coeffs
    lam_plus = -p.beta + regime.alpha
    lam_minus = -p.beta - regime.alpha
    return c.A * jets.exponential(lam_plus, t, order) + c.B * jets.exponential(
        lam_minus, t, order
    )


def tilde_jet(spec: ModeSpec, t, order: int = 2) -> jets.Jet:
    """Jet of the partner-family mode at t (scalar or array)."""
    if spec.riccati is None:
        raise ValueError("spec selects the seed family; no gamma given")
    p, regime = spec.params, spec.regime
    gamma = spec.riccati.gamma
    _check_band(gamma, t)
    env = jets.exponential(-p.beta, t, order)
    h = jets.riccati_h(gamma, t, order)
    if regime.kind is RegimeKind.UNDERDAMPED:
        c = _as_amp_phase(spec.coeffs, regime)
        w1 = regime.omega1
        bracket = w1 * jets.sine(w1, c.phase, t, order) + h * jets.cosine(
            w1, c.phase, t, order
        )
        return (-c.amplitude) * bracket * env
    if regime.kind is RegimeKind.CRITICAL:
        c = _as_ab(spec.coeffs, regime)  # (A, D)
        grow = (c.B / (gamma * gamma)) * jets.shifted_power(gamma, 2, t, order)
        return ((-c.A) * h + grow) * env
    if isinstance(spec.coeffs, AmpPhaseCoefficients):
        c = spec.coeffs
        a = regime.alpha
        bracket = a * jets.hyperbolic_sine(a, c.phase, t, order) - h * jets.hyperbolic_cosine(
            a, c.phase, t, order
        )
        return c.amplitude * bracket * env
    c = spec.coeffs
    plus = _tilde_pm_jet(p, regime.alpha, gamma, +1.0, t, order)
    minus = _tilde_pm_jet(p, regime.alpha, gamma, -1.0, t, order)
    return c.A * plus + c.B * minus


def _tilde_pm_jet(p: DampingParams, alpha: float, gamma: float, sign: float, t, order: int):
    rate = -p.beta + sign * alpha
    h = jets.riccati_h(gamma, t, order)
    return (sign * alpha - h) * jets.exponential(rate, t, order)


def _eval(jet: jets.Jet, t: float) -> ModeEval:
    return ModeEval(t=float(t), y=float(jet.d[0]), dy=float(jet.d[1]), d2y=float(jet.d[2]))


def eval_seed(spec: ModeSpec, t: float) -> ModeEval:
    """Seed mode value and derivatives at a single time."""
    return _eval(seed_jet(spec, t, 2), t)


def eval_tilde(spec: ModeSpec, t: float) -> ModeEval:
    """Partner-family mode value and derivatives at a single time."""
    return _eval(tilde_jet(spec, t, 2), t)


def eval_tilde_pm(p: DampingParams, r: RiccatiParam, sign: int, t: float) -> ModeEval:
    """Elementary partner mode (sign*alpha - h) * exp(-beta*t + sign*alpha*t).

    Defined for the overdamped regime only; in the critical regime the two
    elementary images degenerate (see :func:`critical_second_solution`) and
    in the underdamped regime alpha is imaginary.
    """
    regime = classify_regime(p)
    if regime.kind is RegimeKind.CRITICAL:
        raise RegimeError(
            "elementary partner modes degenerate at critical damping; "
            "use critical_second_solution for the independent one"
        )
    if regime.kind is not RegimeKind.OVERDAMPED:
        raise RegimeError("elementary partner modes need a real alpha (overdamped regime)")
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    _check_band(r.gamma, t)
    return _eval(_tilde_pm_jet(p, regime.alpha, r.gamma, float(sign), t, 2), t)


def critical_second_solution(p: DampingParams, r: RiccatiParam, D: float, t: float) -> ModeEval:
    """Independent second partner mode D*(gamma*t+1)^2/gamma^2 * exp(-beta*t).

    Obtained by reduction of order from the degenerate elementary image; the
    reduction constant is absorbed into D.
    """
    regime = classify_regime(p)
    if regime.kind is not RegimeKind.CRITICAL:
        raise RegimeError("the reduction-of-order solution exists only at critical damping")
    jet = critical_second_jet(p, r, D, t, 2)
    return _eval(jet, t)


def critical_second_jet(p: DampingParams, r: RiccatiParam, D: float, t, order: int = 2):
    gamma = r.gamma
    _check_band(gamma, t)
    return (D / (gamma * gamma)) * jets.shifted_power(gamma, 2, t, order) * jets.exponential(
        -p.beta, t, order
    )


def antirestoring_acceleration(spec: ModeSpec, t):
    """a(t) = 2*gamma^2/(gamma*t+1)^2 * ytilde(t); scalar or array t."""
    if spec.riccati is None:
        raise ValueError("antirestoring acceleration is defined for the partner family")
    gamma = spec.riccati.gamma
    _check_band(gamma, t)
    u = gamma * np.asarray(t, dtype=float) + 1.0 if np.ndim(t) else gamma * t + 1.0
    coeff = 2.0 * gamma * gamma / (u * u)
    y = tilde_jet(spec, t, 0).d[0]
    out = coeff * y
    return out if np.ndim(t) else float(out)


def blow_up_time(r: RiccatiParam) -> float:
    """t* = -1/gamma: negative for positive gamma, positive for negative gamma."""
    return r.t_star


def seed_function(spec: ModeSpec) -> TimeFunction:
    """Seed mode as a TimeFunction with exact derivatives of every order."""
    return JetFunction(lambda t, k: seed_jet(spec, t, k))


def tilde_function(spec: ModeSpec) -> TimeFunction:
    """Partner mode as a TimeFunction; carries its singular instant."""
    if spec.riccati is None:
        raise ValueError("spec selects the seed family; no gamma given")
    return JetFunction(
        lambda t, k: tilde_jet(spec, t, k),
        singular_time=spec.riccati.t_star,
        singular_halfwidth=guard_halfwidth(spec.riccati.gamma),
    )


def seed_pm_function(p: DampingParams, sign: int) -> TimeFunction:
    """Elementary seed mode exp(-beta*t + sign*alpha*t) (overdamped regime)."""
    regime = classify_regime(p)
    if regime.kind is not RegimeKind.OVERDAMPED:
        raise RegimeError("elementary seed modes need a real alpha (overdamped regime)")
    rate = -p.beta + float(sign) * regime.alpha
    return JetFunction(lambda t, k: jets.exponential(rate, t, k))


def tilde_pm_function(p: DampingParams, r: RiccatiParam, sign: int) -> TimeFunction:
    regime = classify_regime(p)
    if regime.kind is not RegimeKind.OVERDAMPED:
        raise RegimeError("elementary partner modes need a real alpha (overdamped regime)")
    return JetFunction(
        lambda t, k: _tilde_pm_jet(p, regime.alpha, r.gamma, float(sign), t, k),
        singular_time=r.t_star,
        singular_halfwidth=guard_halfwidth(r.gamma),
    )


def critical_second_function(p: DampingParams, r: RiccatiParam, D: float) -> TimeFunction:
    return JetFunction(
        lambda t, k: critical_second_jet(p, r, D, t, k),
        singular_time=r.t_star,
        singular_halfwidth=guard_halfwidth(r.gamma),
    )
