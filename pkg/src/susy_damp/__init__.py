"""Riccati-parameter partner modes of the free damped oscillator.

Closed-form damping modes in all three regimes, the one-parameter partner
families generated by the general factorization of the equation of motion,
the first- and second-order operators connecting them, an independent ODE
integration oracle, and a named verification suite over every identity.
"""

__version__ = "0.1.0"

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
from .errors import (
    DerivativeUnavailable,
    DomainError,
    RegimeError,
    SingularInterval,
    SingularTime,
    StepFailure,
    SusyDampError,
    UsageError,
)
from .modes import (
    ModeEval,
    ModeSpec,
    antirestoring_acceleration,
    blow_up_time,
    critical_second_solution,
    eval_seed,
    eval_tilde,
    eval_tilde_pm,
)
from .operators import (
    CallableFunction,
    FDOptions,
    JetFunction,
    OperatorKind,
    OperatorSpec,
    TimeFunction,
    apply,
    apply_with_info,
    factorization_defect,
    intertwining_defect,
)
from .oracle import IVP, Trajectory, integrate, integrate_fixed_rk4, self_convergence
from .riccati import (
    RiccatiSolution,
    f_eval,
    full_riccati_residual,
    g_eval,
    h_eval,
    riccati_residual,
)
from .verify import CheckReport, check_names, reports_to_json, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
