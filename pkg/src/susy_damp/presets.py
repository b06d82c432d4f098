"""Canonical demonstration configurations, one per damping regime.

These are the parameter sets behind the tool's figure datasets and the
verification suite: an underdamped mode with unit ringing frequency, the
critical mode at beta = 1, and an overdamped mode with alpha = 1/5.  Each
comes with the gamma values used for its partner-family columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    ABCoefficients,
    AmpPhaseCoefficients,
    Coefficients,
    DampingParams,
)
from .modes import ModeSpec
from .core import RiccatiParam


@dataclass(frozen=True)
class FamilyPreset:
    name: str
    params: DampingParams
    coeffs: Coefficients
    gammas: tuple[float, ...]

    def seed_spec(self) -> ModeSpec:
        return ModeSpec(self.params, self.coeffs)

    def tilde_spec(self, gamma: float) -> ModeSpec:
        return ModeSpec(self.params, self.coeffs, RiccatiParam(gamma))


#: exp(-t/10) cos(t) and its partner family
UNDERDAMPED = FamilyPreset(
    "underdamped",
    DampingParams(beta=0.1, omega0=math.sqrt(1.01)),
    AmpPhaseCoefficients(1.0, 0.0),
    (1.0, 0.5, 0.1),
)

#: exp(-t) (1 + t) and its partner family (second slot is the D constant)
CRITICAL = FamilyPreset(
    "critical",
    DampingParams(beta=1.0, omega0=1.0),
    ABCoefficients(1.0, 1.0),
    (5.0, 5.0 / 3.0, 1.0),
)

#: exp(-t) cosh(t/5) and its partner family
OVERDAMPED = FamilyPreset(
    "overdamped",
    DampingParams(beta=1.0, omega0=math.sqrt(24.0 / 25.0)),
    AmpPhaseCoefficients(1.0, 0.0),
    (1.0, 0.5, 0.1),
)

ALL_PRESETS = (UNDERDAMPED, CRITICAL, OVERDAMPED)
