"""The Riccati solution family behind the general factorization.

The factorization factors carry a shift function h with ``h' + h^2 = 0``.
Its general solution is ``h(t) = gamma/(gamma*t + 1)``; ``gamma = 0``
selects the constant particular solution ``h = 0`` (the textbook
factorization).  The superpotential-like factor functions are
``f = beta + h`` and ``g = beta - h``.

All derivatives here are closed forms, never finite differences: the
residual identities must test algebra, not differencing error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DampingParams, RiccatiParam
from .errors import SingularTime

#: Relative width of the guard band around the blow-up instant: evaluation
#: within 1e-8 * max(1, |t_star|) of t_star (measured along the time axis)
#: raises SingularTime instead of returning huge numbers that would poison
#: CSV output and oracle comparisons.
GUARD_BAND = 1e-8


@dataclass(frozen=True)
class RiccatiSolution:
    """One member of the solution family, ``h(t) = gamma/(gamma*t + 1)``.

    ``gamma = 0`` is the particular solution ``h = 0`` (so ``f = g = beta``)
    and has no singular instant.
    """

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError(f"gamma must be finite, got {self.gamma!r}")

    @classmethod
    def from_param(cls, r: RiccatiParam) -> "RiccatiSolution":
        return cls(r.gamma)

    @property
    def t_star(self) -> float | None:
        """Blow-up instant -1/gamma, or None for the h = 0 solution."""
        if self.gamma == 0.0:
            return None
        return -1.0 / self.gamma


def guard_halfwidth(gamma: float) -> float:
    """Half-width of the guard band in time units around t_star."""
    if gamma == 0.0:
        return 0.0
    return GUARD_BAND * max(1.0, abs(1.0 / gamma))


def guard_threshold(gamma: float) -> float:
    """The same band as a threshold on |gamma*t + 1| (0 when there is no pole)."""
    return abs(gamma) * guard_halfwidth(gamma)


def in_guard_band(gamma: float, t) -> bool:
    """True if any point of t falls inside the guard band."""
    if gamma == 0.0:
        return False
    return bool(np.any(np.abs(gamma * np.asarray(t) + 1.0) <= guard_threshold(gamma)))


def _check_admissible(gamma: float, t) -> None:
    if in_guard_band(gamma, t):
        raise SingularTime(
            f"t within guard band of the singular instant t* = {-1.0 / gamma!r} "
            f"(gamma = {gamma!r})"
        )


def h_eval(s: RiccatiSolution, t):
    """h(t) = gamma/(gamma*t + 1)."""
    _check_admissible(s.gamma, t)
    return s.gamma / (s.gamma * t + 1.0)


def h_derivative(s: RiccatiSolution, t, k: int = 1):
    """k-th derivative of h: (-1)^k k! gamma^(k+1) / (gamma*t + 1)^(k+1).

    Computed from this closed form directly (not from powers of h itself) so
    that residual checks exercise genuine floating-point cancellation.
    """
    _check_admissible(s.gamma, t)
    u = s.gamma * t + 1.0
    sign = -1.0 if k % 2 else 1.0
    return sign * math.factorial(k) * s.gamma ** (k + 1) / u ** (k + 1)


def f_eval(p: DampingParams, s: RiccatiSolution, t):
    """Left factor shift f = beta + h."""
    return p.beta + h_eval(s, t)


def g_eval(p: DampingParams, s: RiccatiSolution, t):
    """Right factor shift g = beta - h."""
    return p.beta - h_eval(s, t)


def riccati_residual(s: RiccatiSolution, t):
    """h' + h^2; identically zero for every family member."""
    h = h_eval(s, t)
    return h_derivative(s, t, 1) + h * h


def full_riccati_residual(p: DampingParams, s: RiccatiSolution, t):
    """-f' - f^2 + 2*beta*f - beta^2; zero whenever h' + h^2 = 0."""
    f = f_eval(p, s, t)
    fp = h_derivative(s, t, 1)
    return -fp - f * f + 2.0 * p.beta * f - p.beta * p.beta
