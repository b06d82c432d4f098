"""Named verification suite: every identity the library promises, as data.

Each check draws its evaluation points from a seeded generator, computes a
worst-case normalized residual, and compares it against a fixed threshold.
Residuals are normalized by max(1, local solution magnitude) so thresholds
stay scale-free near zeros of the modes.  Checks never raise on failure;
they report.  Identical (scope, seed) input yields bit-identical reports.

For the two convergence-rate checks the "residual" is the required rate
divided by the observed one, with threshold 1.0, so the pass rule
``max_residual <= threshold`` reads the same everywhere.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets, modes, oracle, riccati
from .core import (
    ABCoefficients,
    DampingParams,
    RegimeKind,
    RiccatiParam,
    ab_to_amplitude_phase,
    amplitude_phase_to_ab,
    classify_regime,
)
from .operators import (
    CallableFunction,
    FDOptions,
    JetFunction,
    OperatorKind,
    OperatorSpec,
    apply,
    factorization_defect,
    intertwining_defect,
)
from .presets import ALL_PRESETS, CRITICAL, OVERDAMPED, UNDERDAMPED
from .riccati import RiccatiSolution

SCOPES = (
    "core",
    "riccati",
    "factorization",
    "intertwining",
    "eq10",
    "limits",
    "wronskian",
    "oracle",
)

#: points per randomized check
N_POINTS = 1000

#: observed-rate requirements for the convergence checks
FD_HALVING_RATIO = 3.5
RK4_HALVING_RATIO = 15.0


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    max_residual: float
    threshold: float
    passed: bool
    worst_point: dict

    @classmethod
    def build(cls, name, residual, threshold, worst):
        residual = float(residual)
        return cls(name, residual, threshold, residual <= threshold, worst)


@dataclass(frozen=True)
class Check:
    name: str
    scope: str
    threshold: float
    runner: Callable[[np.random.Generator], tuple[float, dict]]


# ---------------------------------------------------------------------------
# sampling helpers

def _times(rng, n=N_POINTS, lo=0.0, hi=10.0):
    return rng.uniform(lo, hi, n)


def _gammas(rng, n, signed=True):
    mag = np.exp(rng.uniform(np.log(0.05), np.log(5.0), n))
    if not signed:
        return mag
    return mag * rng.choice([-1.0, 1.0], n)


def _admissible(gamma, t, margin=0.05):
    """Mask of t values safely away from the pole of h (margin in time units)."""
    if gamma == 0.0:
        return np.ones_like(t, dtype=bool)
    return np.abs(gamma * t + 1.0) > abs(gamma) * margin


def _worst_of(residuals, metas):
    i = int(np.argmax(residuals))
    return float(residuals[i]), metas(i)


# the fixed smooth test family used by the operator identity checks
def _family_analytic():
    return [
        JetFunction(lambda t, k: jets.polynomial((0.3, 1.2, -0.4, 0.05), t, k)),
        JetFunction(lambda t, k: jets.exponential(-0.4, t, k)),
        JetFunction(lambda t, k: jets.sine(1.3, 0.4, t, k) * jets.exponential(-0.2, t, k)),
        JetFunction(
            lambda t, k: jets.hyperbolic_cosine(0.3, 0.1, t, k) * jets.exponential(-0.6, t, k)
        ),
        JetFunction(
            lambda t, k: jets.linear(0.5, 0.3, t, k)
            * jets.cosine(0.9, 0.0, t, k)
            * jets.exponential(-0.5, t, k)
        ),
    ]


def _family_plain():
    return [
        CallableFunction(lambda t: 0.3 + 1.2 * t - 0.4 * t * t + 0.05 * t**3),
        CallableFunction(lambda t: math.exp(-0.4 * t)),
        CallableFunction(lambda t: math.sin(1.3 * t + 0.4) * math.exp(-0.2 * t)),
        CallableFunction(lambda t: math.cosh(0.3 * t + 0.1) * math.exp(-0.6 * t)),
        CallableFunction(
            lambda t: (0.5 + 0.3 * t) * math.cos(0.9 * t) * math.exp(-0.5 * t)
        ),
    ]


def _combine(a, f, b, g):
    return JetFunction(lambda t, k: a * f.builder(t, k) + b * g.builder(t, k))


def _random_params(rng):
    return DampingParams(
        beta=float(np.exp(rng.uniform(np.log(0.05), np.log(3.0)))),
        omega0=float(np.exp(rng.uniform(np.log(0.05), np.log(3.0)))),
    )


# ---------------------------------------------------------------------------
# core checks

def _run_regime_classification(rng):
    worst = (0.0, {})
    for _ in range(N_POINTS):
        p = _random_params(rng)
        r1 = classify_regime(p)
        r2 = classify_regime(p)
        ok = r1 == r2
        if r1.kind is RegimeKind.UNDERDAMPED:
            ok = ok and r1.omega1 is not None and r1.alpha is None and p.alpha_sq < 0
        elif r1.kind is RegimeKind.OVERDAMPED:
            ok = ok and r1.alpha is not None and r1.omega1 is None and p.alpha_sq > 0
        else:
            ok = ok and r1.alpha is None and r1.omega1 is None
        if not ok:
            return 1.0, {"beta": p.beta, "omega0": p.omega0}
    return worst


def _run_frequency_partition(rng):
    # relative to the larger of beta^2 and omega0^2: the subtraction that
    # defines alpha/omega1 cancels at that scale, so it is the scale at
    # which the identity can hold to roundoff
    best = (0.0, {})
    for _ in range(N_POINTS):
        p = _random_params(rng)
        r = classify_regime(p)
        scale = max(p.omega0_sq, p.beta**2)
        if r.kind is RegimeKind.UNDERDAMPED:
            res = abs(p.beta**2 + r.omega1**2 - p.omega0_sq) / scale
        elif r.kind is RegimeKind.OVERDAMPED:
            res = abs(p.beta**2 - r.alpha**2 - p.omega0_sq) / scale
        else:
            continue
        if res > best[0]:
            best = (res, {"beta": p.beta, "omega0": p.omega0})
    return best


def _run_coefficient_round_trip(rng):
    """AB -> amplitude/phase -> AB on the well-conditioned interior.

    The inverse functions are ill-conditioned where the pair degenerates
    (A ~ B in the hyperbolic form, |B| << |A| in the trig form), so the
    samples keep the component ratio within a few decades.
    """
    under = classify_regime(UNDERDAMPED.params)
    over = classify_regime(OVERDAMPED.params)
    best = (0.0, {})
    for _ in range(N_POINTS // 2):
        scale = float(np.exp(rng.uniform(np.log(1e-2), np.log(1e2))))
        ratio = float(np.exp(rng.uniform(np.log(1e-2), np.log(1e2))))
        # trig form needs A*B < 0 with |A/B| inside [3-2*sqrt(2), 3+2*sqrt(2)];
        # a > 0 > b, so (a, b) is already in canonical descending order
        trig_ratio = float(rng.uniform(0.18, 5.8))
        a, b = scale, -scale * trig_ratio
        ap = ab_to_amplitude_phase(ABCoefficients(a, b), under)
        back = amplitude_phase_to_ab(ap, under)
        den = max(abs(a), abs(b))
        res = max(abs(back.A - a), abs(back.B - b)) / den
        if res > best[0]:
            best = (res, {"A": a, "B": b, "regime": "underdamped"})
        # hyperbolic form: both positive, ratio away from 1
        a2, b2 = scale * max(ratio, 1.05), scale
        ap2 = ab_to_amplitude_phase(ABCoefficients(a2, b2), over)
        back2 = amplitude_phase_to_ab(ap2, over)
        den2 = max(a2, b2)
        res2 = max(abs(back2.A - a2), abs(back2.B - b2)) / den2
        if res2 > best[0]:
            best = (res2, {"A": a2, "B": b2, "regime": "overdamped"})
    return best


# ---------------------------------------------------------------------------
# riccati checks

def _riccati_points(rng):
    g = float(_gammas(rng, 1)[0])
    t = _times(rng)
    t = t[_admissible(g, t, margin=1e-6)]
    return g, t


def _run_reduced_residual(rng):
    best = (0.0, {})
    for _ in range(10):
        g, t = _riccati_points(rng)
        s = RiccatiSolution(g)
        h = riccati.h_eval(s, t)
        res = np.abs(riccati.h_derivative(s, t, 1) + h * h) / np.maximum(1.0, h * h)
        r, meta = _worst_of(res, lambda i: {"gamma": g, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


def _run_factor_sum(rng):
    best = (0.0, {})
    for _ in range(10):
        p = _random_params(rng)
        g, t = _riccati_points(rng)
        s = RiccatiSolution(g)
        h = riccati.h_eval(s, t)
        res = np.abs(
            riccati.f_eval(p, s, t) + riccati.g_eval(p, s, t) - 2.0 * p.beta
        ) / np.maximum(1.0, np.maximum(2.0 * p.beta, np.abs(h)))
        r, meta = _worst_of(res, lambda i: {"beta": p.beta, "gamma": g, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


def _run_factor_combined(rng):
    best = (0.0, {})
    for _ in range(10):
        p = _random_params(rng)
        g, t = _riccati_points(rng)
        s = RiccatiSolution(g)
        gp = -riccati.h_derivative(s, t, 1)
        res = np.abs(
            gp + riccati.f_eval(p, s, t) * riccati.g_eval(p, s, t) - p.beta**2
        ) / np.maximum(1.0, p.beta**2 + riccati.h_eval(s, t) ** 2)
        r, meta = _worst_of(res, lambda i: {"beta": p.beta, "gamma": g, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


def _run_full_residual(rng):
    best = (0.0, {})
    for _ in range(10):
        p = _random_params(rng)
        g, t = _riccati_points(rng)
        s = RiccatiSolution(g)
        res = np.abs(riccati.full_riccati_residual(p, s, t)) / np.maximum(
            1.0, p.beta**2 + riccati.h_eval(s, t) ** 2
        )
        r, meta = _worst_of(res, lambda i: {"beta": p.beta, "gamma": g, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


# ---------------------------------------------------------------------------
# operator checks

def _operator_setup(rng):
    p = _random_params(rng)
    g = float(_gammas(rng, 1, signed=False)[0])
    return p, RiccatiParam(g)


def _run_factorization_analytic(rng):
    best = (0.0, {})
    for f in _family_analytic():
        p, r = _operator_setup(rng)
        n_op = OperatorSpec(OperatorKind.N, p)
        for t in _times(rng, 40):
            t = float(t)
            defect = factorization_defect(p, r, f, t)
            scale = max(1.0, abs(apply(n_op, f, t)), abs(f.deriv(t, 2)))
            res = abs(defect) / scale
            if res > best[0]:
                best = (res, {"beta": p.beta, "gamma": r.gamma, "t": t})
    return best


def _run_factorization_fd(rng):
    best = (0.0, {})
    for f in _family_plain():
        p, r = _operator_setup(rng)
        for t in _times(rng, 10):
            t = float(t)
            res = abs(factorization_defect(p, r, f, t)) / max(1.0, abs(f.value(t)))
            if res > best[0]:
                best = (res, {"beta": p.beta, "gamma": r.gamma, "t": t})
    return best


def _run_operator_linearity(rng):
    family = _family_analytic()
    best = (0.0, {})
    for kind in OperatorKind:
        p, r = _operator_setup(rng)
        op = OperatorSpec(kind, p, None if kind in (OperatorKind.L, OperatorKind.N) else r)
        f, g = rng.choice(len(family), 2, replace=False)
        f, g = family[int(f)], family[int(g)]
        a, b = rng.uniform(-2.0, 2.0, 2)
        comb_fn = _combine(float(a), f, float(b), g)
        for t in _times(rng, 25):
            t = float(t)
            vf, vg = apply(op, f, t), apply(op, g, t)
            res = abs(apply(op, comb_fn, t) - (a * vf + b * vg)) / max(
                1.0, abs(vf), abs(vg)
            )
            if res > best[0]:
                best = (res, {"op": kind.value, "beta": p.beta, "t": t})
    return best


def _run_fd_convergence(rng):
    p, r = _operator_setup(rng)
    f = CallableFunction(lambda t: math.sin(1.3 * t + 0.4) * math.exp(-0.2 * t))
    ts = np.linspace(0.7, 9.3, 7)
    h = 1e-2
    norm_h = sum(
        abs(factorization_defect(p, r, f, float(t), fd=FDOptions(step=h, richardson=False)))
        for t in ts
    )
    norm_h2 = sum(
        abs(
            factorization_defect(
                p, r, f, float(t), fd=FDOptions(step=h / 2.0, richardson=False)
            )
        )
        for t in ts
    )
    ratio = norm_h / norm_h2
    return FD_HALVING_RATIO / ratio, {"beta": p.beta, "gamma": r.gamma, "ratio": ratio}


def _run_aplus_not_eigenfunction(rng):
    p = OVERDAMPED.params
    r = RiccatiParam(1.0)
    y_plus = modes.seed_pm_function(p, +1)
    op = OperatorSpec(OperatorKind.APLUS, p, r)
    ts = np.linspace(0.0, 10.0, 101)
    ratios = np.array([apply(op, y_plus, float(t)) / y_plus.value(float(t)) for t in ts])
    spread = float(ratios.max() - ratios.min())
    return 0.1 / spread, {"gamma": r.gamma, "ratio_spread": spread}


def _run_intertwining_analytic(rng):
    best = (0.0, {})
    for f in _family_analytic():
        p, r = _operator_setup(rng)
        for t in _times(rng, 25):
            t = float(t)
            res = abs(intertwining_defect(p, r, f, t)) / max(1.0, abs(f.deriv(t, 3)))
            if res > best[0]:
                best = (res, {"beta": p.beta, "gamma": r.gamma, "t": t})
    return best


def _run_intertwining_fd(rng):
    best = (0.0, {})
    for f in _family_plain():
        p, r = _operator_setup(rng)
        for t in _times(rng, 6):
            t = float(t)
            res = abs(intertwining_defect(p, r, f, t)) / max(1.0, abs(f.value(t)))
            if res > best[0]:
                best = (res, {"beta": p.beta, "gamma": r.gamma, "t": t})
    return best


def _run_eigenrelation_seed(rng):
    p = OVERDAMPED.params
    alpha_sq = p.alpha_sq
    best = (0.0, {})
    for _ in range(4):
        g = float(_gammas(rng, 1, signed=False)[0])
        r = RiccatiParam(g)
        for sign in (+1, -1):
            y = modes.seed_pm_function(p, sign)
            for kind in (OperatorKind.N, OperatorKind.NG):
                op = OperatorSpec(kind, p, r if kind is OperatorKind.NG else None)
                for t in _times(rng, 50):
                    t = float(t)
                    val = y.value(t)
                    res = abs(apply(op, y, t) - alpha_sq * val) / max(1.0, abs(val))
                    if res > best[0]:
                        best = (res, {"sign": sign, "gamma": g, "t": t, "op": kind.value})
    return best


def _run_eigenrelation_tilde(rng):
    p = OVERDAMPED.params
    alpha_sq = p.alpha_sq
    best = (0.0, {})
    for g in OVERDAMPED.gammas:
        r = RiccatiParam(g)
        op = OperatorSpec(OperatorKind.NG_PARTNER, p, r)
        for sign in (+1, -1):
            y = modes.tilde_pm_function(p, r, sign)
            for t in _times(rng, 100):
                t = float(t)
                val = y.value(t)
                res = abs(apply(op, y, t) - alpha_sq * val) / max(1.0, abs(val))
                if res > best[0]:
                    best = (res, {"sign": sign, "gamma": g, "t": t})
    return best


def _run_susy_map(rng):
    p = OVERDAMPED.params
    best = (0.0, {})
    for g in OVERDAMPED.gammas:
        r = RiccatiParam(g)
        op = OperatorSpec(OperatorKind.AMINUS, p, r)
        for sign in (+1, -1):
            seed_fn = modes.seed_pm_function(p, sign)
            for t in _times(rng, 100):
                t = float(t)
                tilde = modes.eval_tilde_pm(p, r, sign, t).y
                res = abs(apply(op, seed_fn, t) - tilde) / max(1.0, abs(tilde))
                if res > best[0]:
                    best = (res, {"sign": sign, "gamma": g, "t": t})
    return best


# ---------------------------------------------------------------------------
# mode equation-of-motion checks

def _eom_residual_arrays(spec, t):
    p = spec.params
    jet = modes.tilde_jet(spec, t, 2)
    y, dy, d2y = jet.d
    g = spec.riccati.gamma
    h = g / (g * t + 1.0)
    res = d2y + 2.0 * p.beta * dy + (p.omega0_sq - 2.0 * h * h) * y
    return np.abs(res) / np.maximum(1.0, np.abs(y))


def _run_tilde_eom(preset):
    def run(rng):
        best = (0.0, {})
        for g in tuple(preset.gammas) + (-0.25,):
            spec = preset.tilde_spec(g)
            t = _times(rng)
            t = t[_admissible(g, t)]
            res = _eom_residual_arrays(spec, t)
            r, meta = _worst_of(
                res,
                lambda i: {
                    "beta": preset.params.beta,
                    "omega0": preset.params.omega0,
                    "gamma": g,
                    "t": float(t[i]),
                },
            )
            if r > best[0]:
                best = (r, meta)
        return best

    return run


def _run_seed_eom(rng):
    best = (0.0, {})
    for preset in ALL_PRESETS:
        spec = preset.seed_spec()
        t = _times(rng)
        jet = modes.seed_jet(spec, t, 2)
        y, dy, d2y = jet.d
        p = preset.params
        res = np.abs(d2y + 2.0 * p.beta * dy + p.omega0_sq * y) / np.maximum(1.0, np.abs(y))
        r, meta = _worst_of(res, lambda i: {"beta": p.beta, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


def _run_critical_second_eom(rng):
    p = CRITICAL.params
    best = (0.0, {})
    for g in CRITICAL.gammas:
        r = RiccatiParam(g)
        t = _times(rng)
        t = t[_admissible(g, t)]
        jet = modes.critical_second_jet(p, r, 1.0, t, 2)
        y, dy, d2y = jet.d
        h = g / (g * t + 1.0)
        res = np.abs(d2y + 2.0 * p.beta * dy + (p.omega0_sq - 2.0 * h * h) * y) / np.maximum(
            1.0, np.abs(y)
        )
        rr, meta = _worst_of(res, lambda i: {"gamma": g, "t": float(t[i])})
        if rr > best[0]:
            best = (rr, meta)
    return best


def _run_partner_shift(rng):
    best = (0.0, {})
    for f in _family_analytic():
        p, r = _operator_setup(rng)
        alpha_sq = p.alpha_sq
        op_full = OperatorSpec(OperatorKind.PARTNER_EOM, p, r)
        op_part = OperatorSpec(OperatorKind.NG_PARTNER, p, r)
        for t in _times(rng, 25):
            t = float(t)
            val = f.value(t)
            res = abs(apply(op_full, f, t) - apply(op_part, f, t) + alpha_sq * val) / max(
                1.0, abs(val)
            )
            if res > best[0]:
                best = (res, {"beta": p.beta, "omega0": p.omega0, "gamma": r.gamma, "t": t})
    return best


def _run_mode_derivative_consistency(rng):
    step = 1e-5
    best = (0.0, {})

    def fd_check(value_fn, t, ev, meta):
        nonlocal best
        fd = (value_fn(t + step) - value_fn(t - step)) / (2.0 * step)
        res = abs(fd - ev.dy) / max(1.0, abs(ev.y), abs(ev.dy))
        if res > best[0]:
            best = (res, meta)

    for preset in ALL_PRESETS:
        seed_spec = preset.seed_spec()
        for t in _times(rng, 25, 0.1, 9.9):
            t = float(t)
            fd_check(
                lambda s: modes.eval_seed(seed_spec, s).y,
                t,
                modes.eval_seed(seed_spec, t),
                {"family": preset.name + "/seed", "t": t},
            )
        spec = preset.tilde_spec(preset.gammas[0])
        for t in _times(rng, 25, 0.1, 9.9):
            t = float(t)
            fd_check(
                lambda s: modes.eval_tilde(spec, s).y,
                t,
                modes.eval_tilde(spec, t),
                {"family": preset.name + "/tilde", "t": t},
            )
    p, r = OVERDAMPED.params, RiccatiParam(1.0)
    for sign in (+1, -1):
        for t in _times(rng, 25, 0.1, 9.9):
            t = float(t)
            fd_check(
                lambda s: modes.eval_tilde_pm(p, r, sign, s).y,
                t,
                modes.eval_tilde_pm(p, r, sign, t),
                {"family": f"elementary/{sign:+d}", "t": t},
            )
    pc, rc = CRITICAL.params, RiccatiParam(1.0)
    for t in _times(rng, 25, 0.1, 9.9):
        t = float(t)
        fd_check(
            lambda s: modes.critical_second_solution(pc, rc, 1.0, s).y,
            t,
            modes.critical_second_solution(pc, rc, 1.0, t),
            {"family": "critical/second", "t": t},
        )
    return best


# ---------------------------------------------------------------------------
# limit checks

def _run_riccati_shrinks(rng):
    s = RiccatiSolution(1e-8)
    t = np.linspace(0.0, 10.0, 1001)
    h = np.abs(riccati.h_eval(s, t))
    i = int(np.argmax(h))
    return float(h[i]), {"gamma": 1e-8, "t": float(t[i])}


def _run_overdamped_small_gamma(rng):
    p = OVERDAMPED.params
    alpha = classify_regime(p).alpha
    r = RiccatiParam(1e-6)
    t = np.linspace(0.0, 10.0, 1001)
    best = (0.0, {})
    for sign in (+1.0, -1.0):
        rate = -p.beta + sign * alpha
        seed = np.exp(rate * t)
        tilde = (sign * alpha - r.gamma / (r.gamma * t + 1.0)) * seed
        res = np.abs(tilde / (sign * alpha * seed) - 1.0)
        rr, meta = _worst_of(res, lambda i: {"sign": sign, "gamma": r.gamma, "t": float(t[i])})
        if rr > best[0]:
            best = (rr, meta)
    return best


def _run_underdamped_small_gamma(rng):
    p = UNDERDAMPED.params
    regime = classify_regime(p)
    w1 = regime.omega1
    t = _times(rng)

    def limit_jet(tt, order):
        return (-1.0 * w1) * jets.sine(w1, 0.0, tt, order) * jets.exponential(
            -p.beta, tt, order
        )

    jet = limit_jet(t, 2)
    y, dy, d2y = jet.d
    res = np.abs(d2y + 2.0 * p.beta * dy + p.omega0_sq * y) / np.maximum(1.0, np.abs(y))
    r, meta = _worst_of(res, lambda i: {"beta": p.beta, "t": float(t[i])})
    return r, meta


# ---------------------------------------------------------------------------
# wronskian checks

def _critical_pair_jets(g, t, order):
    p = CRITICAL.params
    spec_u = modes.ModeSpec(p, ABCoefficients(1.0, 0.0), RiccatiParam(g))
    u = modes.tilde_jet(spec_u, t, order)
    v = modes.critical_second_jet(p, RiccatiParam(g), 1.0, t, order)
    return u, v


def _run_wronskian_value(rng):
    beta = CRITICAL.params.beta
    best = (0.0, {})
    for g in CRITICAL.gammas:
        t = _times(rng)
        u, v = _critical_pair_jets(g, t, 1)
        w = u.d[0] * v.d[1] - u.d[1] * v.d[0]
        target = -3.0 * np.exp(-2.0 * beta * t)
        res = np.abs(w - target) / np.abs(target)
        r, meta = _worst_of(res, lambda i: {"gamma": g, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


def _run_wronskian_abel(rng):
    beta = CRITICAL.params.beta
    best = (0.0, {})
    for g in CRITICAL.gammas:
        t = _times(rng)
        u, v = _critical_pair_jets(g, t, 2)
        w = u.d[0] * v.d[1] - u.d[1] * v.d[0]
        wp = u.d[0] * v.d[2] - u.d[2] * v.d[0]
        res = np.abs(wp + 2.0 * beta * w) / np.maximum(1.0, np.abs(w))
        r, meta = _worst_of(res, lambda i: {"gamma": g, "t": float(t[i])})
        if r > best[0]:
            best = (r, meta)
    return best


# ---------------------------------------------------------------------------
# oracle checks

def _oracle_configs():
    for preset in ALL_PRESETS:
        for g in preset.gammas:
            yield preset, g


def _run_oracle_matches(rng):
    grid = np.linspace(0.0, 10.0, 201)
    best = (0.0, {})
    for preset, g in _oracle_configs():
        spec = preset.tilde_spec(g)
        ic = modes.eval_tilde(spec, 0.0)
        ivp = oracle.IVP.from_params(
            preset.params, 0.0, ic.y, ic.dy, 10.0, RiccatiParam(g)
        )
        traj = oracle.integrate(ivp, grid=grid)
        closed = modes.tilde_jet(spec, grid, 0).d[0]
        scale = float(np.max(np.abs(closed)))
        diff = np.abs(traj.ys - closed) / scale
        r, meta = _worst_of(diff, lambda i: {"family": preset.name, "gamma": g, "t": float(grid[i])})
        if r > best[0]:
            best = (r, meta)
    return best


def _run_oracle_self_convergence(rng):
    grid = np.linspace(0.0, 10.0, 101)
    best = (0.0, {})
    for preset, g in _oracle_configs():
        spec = preset.tilde_spec(g)
        ic = modes.eval_tilde(spec, 0.0)
        ivp = oracle.IVP.from_params(
            preset.params, 0.0, ic.y, ic.dy, 10.0, RiccatiParam(g)
        )
        diff = oracle.self_convergence(ivp, grid)
        closed = modes.tilde_jet(spec, grid, 0).d[0]
        res = diff / max(1.0, float(np.max(np.abs(closed))))
        if res > best[0]:
            best = (res, {"family": preset.name, "gamma": g})
    return best


def _run_oracle_order(rng):
    p = CRITICAL.params
    ivp = oracle.IVP.from_params(p, 0.0, 1.0, 0.0, 5.0)
    exact = math.exp(-5.0) * 6.0  # critical seed with A = B = 1 at t = 5
    errs = []
    for n in (100, 200):
        traj = oracle.integrate_fixed_rk4(ivp, n)
        errs.append(abs(float(traj.ys[-1]) - exact))
    ratio = errs[0] / errs[1]
    return RK4_HALVING_RATIO / ratio, {"ratio": ratio, "n_coarse": 100}


def _run_oracle_time_reversal(rng):
    p = CRITICAL.params
    fwd = oracle.integrate(oracle.IVP.from_params(p, 0.0, 1.0, 0.0, 5.0), grid=[0.0, 5.0])
    y5, v5 = float(fwd.ys[-1]), float(fwd.dys[-1])
    back = oracle.integrate(
        oracle.IVP.from_params(p, 5.0, y5, v5, 0.0), grid=[0.0, 5.0]
    )
    res = max(abs(float(back.ys[0]) - 1.0), abs(float(back.dys[0]) - 0.0))
    return res, {"beta": p.beta, "t": 0.0}


# ---------------------------------------------------------------------------
# registry

REGISTRY: tuple[Check, ...] = (
    Check("core_regime_classification", "core", 0.0, _run_regime_classification),
    Check("core_frequency_partition", "core", 1e-14, _run_frequency_partition),
    Check("core_coefficient_round_trip", "core", 1e-12, _run_coefficient_round_trip),
    Check("riccati_reduced_residual", "riccati", 1e-13, _run_reduced_residual),
    Check("riccati_factor_sum", "riccati", 1e-12, _run_factor_sum),
    Check("riccati_factor_combined", "riccati", 1e-12, _run_factor_combined),
    Check("riccati_full_residual", "riccati", 1e-12, _run_full_residual),
    Check("factorization_defect_analytic", "factorization", 1e-12, _run_factorization_analytic),
    Check(
        "factorization_defect_finite_difference",
        "factorization",
        1e-6,
        _run_factorization_fd,
    ),
    Check("operator_linearity", "factorization", 1e-10, _run_operator_linearity),
    Check("finite_difference_convergence", "factorization", 1.0, _run_fd_convergence),
    Check("aplus_not_eigenfunction", "factorization", 1.0, _run_aplus_not_eigenfunction),
    Check("intertwining_defect_analytic", "intertwining", 1e-10, _run_intertwining_analytic),
    Check(
        "intertwining_defect_finite_difference",
        "intertwining",
        1e-5,
        _run_intertwining_fd,
    ),
    Check("eigenrelation_seed", "intertwining", 1e-12, _run_eigenrelation_seed),
    Check("eigenrelation_tilde", "intertwining", 1e-11, _run_eigenrelation_tilde),
    Check("susy_map_overdamped", "intertwining", 1e-12, _run_susy_map),
    Check("tilde_eom_residual_underdamped", "eq10", 1e-11, _run_tilde_eom(UNDERDAMPED)),
    Check("tilde_eom_residual_critical", "eq10", 1e-11, _run_tilde_eom(CRITICAL)),
    Check("tilde_eom_residual_overdamped", "eq10", 1e-11, _run_tilde_eom(OVERDAMPED)),
    Check("seed_eom_residual", "eq10", 1e-12, _run_seed_eom),
    Check("critical_second_solution_residual", "eq10", 1e-11, _run_critical_second_eom),
    Check("partner_operator_shift", "eq10", 1e-12, _run_partner_shift),
    Check("mode_derivative_consistency", "eq10", 1e-8, _run_mode_derivative_consistency),
    Check("riccati_family_shrinks", "limits", 1e-7, _run_riccati_shrinks),
    Check("overdamped_small_gamma_ratio", "limits", 1e-4, _run_overdamped_small_gamma),
    Check("underdamped_small_gamma_limit", "limits", 1e-12, _run_underdamped_small_gamma),
    Check("critical_wronskian_value", "wronskian", 1e-12, _run_wronskian_value),
    Check("critical_wronskian_abel", "wronskian", 1e-11, _run_wronskian_abel),
    Check("oracle_matches_closed_forms", "oracle", 1e-8, _run_oracle_matches),
    Check("oracle_self_convergence", "oracle", 1e-7, _run_oracle_self_convergence),
    Check("oracle_order_verification", "oracle", 1.0, _run_oracle_order),
    Check("oracle_time_reversal", "oracle", 1e-7, _run_oracle_time_reversal),
)


def check_names(scope: str = "all") -> tuple[str, ...]:
    if scope == "all":
        return tuple(c.name for c in REGISTRY)
    return tuple(c.name for c in REGISTRY if c.scope == scope)


def run_suite(scope: str = "all", seed: int = 0) -> list[CheckReport]:
    """Run the named checks for the scope, deterministically in the seed."""
    if scope != "all" and scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected 'all' or one of {SCOPES}")
    selected = [c for c in REGISTRY if scope == "all" or c.scope == scope]
    reports = []
    for check in selected:
        rng = np.random.default_rng(
            np.random.SeedSequence([seed & 0xFFFFFFFF, zlib.crc32(check.name.encode())])
        )
        residual, worst = check.runner(rng)
        reports.append(CheckReport.build(check.name, residual, check.threshold, worst))
    reports.sort(key=lambda r: r.check_name)
    return reports


def reports_to_json(reports: list[CheckReport]) -> str:
    payload = [
        {
            "check_name": r.check_name,
            "max_residual": r.max_residual,
            "threshold": r.threshold,
            "passed": r.passed,
            "worst_point": r.worst_point,
        }
        for r in reports
    ]
    return json.dumps(payload, indent=2)


def all_passed(reports: list[CheckReport]) -> bool:
    return all(r.passed for r in reports)
