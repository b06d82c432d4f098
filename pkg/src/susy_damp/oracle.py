"""Independent numerical integrator for the damping laws.

Integrates ``y'' + 2*beta*y' + (omega0^2 - 2*gamma^2/(gamma*t+1)^2) y = 0``
(and the plain free-damping law when no gamma is given) with an adaptive
Dormand-Prince 5(4) embedded pair, FSAL, and cubic Hermite dense output on
accepted steps.  Nothing here touches the closed-form modes: initial data
comes from the caller, the right-hand side only from the raw coefficients.
That keeps this module usable as ground truth against the closed forms.

Unlike the validated parameter types, the IVP carries raw ``beta`` and
``omega0`` floats so that exploratory runs (negative beta flutter, motion on
the far side of the singular instant) stay representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DampingParams, RiccatiParam
from .errors import SingularInterval, StepFailure
from .riccati import guard_halfwidth

#: Default tolerances when the integrator serves as an acceptance oracle.
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12

#: Internal acceptance target on the weighted error norm.  Accepting steps
#: at a fraction of the requested tolerance keeps the accumulated global
#: error near the tolerance itself instead of a few dozen times above it.
_TARGET = 1.0 / 16.0

# Dormand-Prince 5(4) tableau.
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)


@dataclass(frozen=True)
class IVP:
    """Initial value problem for the (possibly gamma-shifted) damping law."""

    beta: float
    omega0: float
    t0: float
    y0: float
    dy0: float
    t_end: float
    riccati: RiccatiParam | None = None

    def __post_init__(self):
        if self.t_end == self.t0:
            raise ValueError("empty integration interval")
        if self.riccati is not None:
            ts = self.riccati.t_star
            pad = guard_halfwidth(self.riccati.gamma)
            lo, hi = min(self.t0, self.t_end), max(self.t0, self.t_end)
            if lo - pad <= ts <= hi + pad:
                raise SingularInterval(
                    f"interval [{lo}, {hi}] contains the singular instant t* = {ts}"
                )

    @classmethod
    def from_params(
        cls,
        params: DampingParams,
        t0: float,
        y0: float,
        dy0: float,
        t_end: float,
        riccati: RiccatiParam | None = None,
    ) -> "IVP":
        return cls(params.beta, params.omega0, t0, y0, dy0, t_end, riccati)

    def acceleration(self, t: float, y: float, v: float) -> float:
        acc = -2.0 * self.beta * v - self.omega0 * self.omega0 * y
        if self.riccati is not None:
            g = self.riccati.gamma
            h = g / (g * t + 1.0)
            acc += 2.0 * h * h * y
        return acc


@dataclass(frozen=True)
class IntegrationStats:
    accepted: int
    rejected: int
    rhs_evaluations: int
    max_error_estimate: float  # largest accepted weighted error norm (<= 1)


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution on a strictly increasing grid."""

    ts: np.ndarray
    ys: np.ndarray
    dys: np.ndarray
    stats: IntegrationStats

    def __post_init__(self):
        if not (len(self.ts) == len(self.ys) == len(self.dys)):
            raise ValueError("trajectory arrays must have equal length")
        if len(self.ts) > 1 and not np.all(np.diff(self.ts) > 0):
            raise ValueError("trajectory grid must be strictly increasing")


def _hermite(t, t0, y0, f0, t1, y1, f1):
    h = t1 - t0
    th = (t - t0) / h
    th2 = th * th
    th3 = th2 * th
    return (
        (2 * th3 - 3 * th2 + 1) * y0
        + (th3 - 2 * th2 + th) * h * f0
        + (-2 * th3 + 3 * th2) * y1
        + (th3 - th2) * h * f1
    )


def integrate(
    ivp: IVP,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    grid=None,
    max_step: float | None = None,
) -> Trajectory:
    """Adaptive integration sampled on ``grid`` (defaults to the endpoints).

    ``max_step`` defaults to 1/200 of the interval, which keeps the cubic
    Hermite dense-output error well below the step-error budget.  Backward
    integration (``t_end < t0``) is supported; the returned grid is always
    ascending.
    """
    if rel_tol <= 0.0 or abs_tol <= 0.0:
        raise ValueError("tolerances must be positive")
    span = ivp.t_end - ivp.t0
    direction = 1.0 if span > 0 else -1.0
    if grid is None:
        grid = [ivp.t0, ivp.t_end]
    grid = np.asarray(grid, dtype=float)
    lo, hi = min(ivp.t0, ivp.t_end), max(ivp.t0, ivp.t_end)
    pad = 1e-12 * max(1.0, abs(lo), abs(hi))
    if np.any(grid < lo - pad) or np.any(grid > hi + pad):
        raise ValueError("grid points must lie inside the integration interval")
    if max_step is None:
        max_step = abs(span) / 200.0

    # grid sorted along the direction of integration
    order = np.argsort(direction * grid, kind="stable")
    gsorted = grid[order]
    out_y = np.empty_like(gsorted)
    out_v = np.empty_like(gsorted)
    gi = 0

    t, y, v = ivp.t0, ivp.y0, ivp.dy0
    f1y, f1v = v, ivp.acceleration(t, y, v)
    nfev = 1
    accepted = rejected = 0
    max_est = 0.0

    # emit grid points equal to t0
    while gi < len(gsorted) and direction * (gsorted[gi] - t) <= 0.0:
        out_y[gi], out_v[gi] = y, v
        gi += 1

    h = direction * min(max_step, abs(span) * 1e-3)
    t_final = ivp.t_end
    floor = 16.0 * math.ulp(1.0) * max(abs(ivp.t0), abs(t_final), 1.0)
    ky = [0.0] * 7
    kv = [0.0] * 7

    while direction * (t_final - t) > 0.0:
        if abs(h) < floor:
            raise StepFailure(f"step size underflow at t = {t!r} (h = {h!r})")
        if direction * (t + h - t_final) > 0.0:
            h = t_final - t
        ky[0], kv[0] = f1y, f1v
        for i in range(1, 7):
            ti = t + _C[i] * h
            ay = y
            av = v
            row = _A[i]
            for j in range(i):
                ay += h * row[j] * ky[j]
                av += h * row[j] * kv[j]
            ky[i] = av
            kv[i] = ivp.acceleration(ti, ay, av)
        nfev += 6
        y_new = y
        v_new = v
        for j in range(6):
            if _B5[j] != 0.0:
                y_new += h * _B5[j] * ky[j]
                v_new += h * _B5[j] * kv[j]
        err_y = 0.0
        err_v = 0.0
        for j in range(7):
            if _E[j] != 0.0:
                err_y += h * _E[j] * ky[j]
                err_v += h * _E[j] * kv[j]
        sc_y = abs_tol + rel_tol * max(abs(y), abs(y_new))
        sc_v = abs_tol + rel_tol * max(abs(v), abs(v_new))
        est = math.sqrt(0.5 * ((err_y / sc_y) ** 2 + (err_v / sc_v) ** 2))
        if est <= _TARGET:
            t_new = t + h
            fy_new, fv_new = ky[6], kv[6]  # FSAL stage is f(t+h, y_new)
            # dense output for grid points inside (t, t_new]
            while gi < len(gsorted) and direction * (gsorted[gi] - t_new) <= 1e-14 * max(
                1.0, abs(t_new)
            ):
                tq = gsorted[gi]
                out_y[gi] = _hermite(tq, t, y, f1y, t_new, y_new, fy_new)
                out_v[gi] = _hermite(tq, t, v, f1v, t_new, v_new, fv_new)
                gi += 1
            t, y, v = t_new, y_new, v_new
            f1y, f1v = fy_new, fv_new
            accepted += 1
            max_est = max(max_est, est)
            factor = (
                5.0
                if est == 0.0
                else min(5.0, max(0.2, 0.9 * (_TARGET / est) ** 0.2))
            )
        else:
            rejected += 1
            factor = max(0.2, 0.9 * (_TARGET / est) ** 0.2)
        h *= factor
        if abs(h) > max_step:
            h = direction * max_step

    # flush any grid points that coincide with t_end up to roundoff
    while gi < len(gsorted):
        out_y[gi], out_v[gi] = y, v
        gi += 1

    stats = IntegrationStats(accepted, rejected, nfev, max_est)
    if direction > 0:
        return Trajectory(gsorted, out_y, out_v, stats)
    return Trajectory(gsorted[::-1].copy(), out_y[::-1].copy(), out_v[::-1].copy(), stats)


def integrate_fixed_rk4(ivp: IVP, n_steps: int) -> Trajectory:
    """Classical fixed-step RK4 over the whole interval (order checks)."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    h = (ivp.t_end - ivp.t0) / n_steps
    ts = np.empty(n_steps + 1)
    ys = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    t, y, v = ivp.t0, ivp.y0, ivp.dy0
    ts[0], ys[0], vs[0] = t, y, v
    acc = ivp.acceleration
    for n in range(n_steps):
        t = ivp.t0 + n * h
        k1y, k1v = v, acc(t, y, v)
        k2y = v + 0.5 * h * k1v
        k2v = acc(t + 0.5 * h, y + 0.5 * h * k1y, k2y)
        k3y = v + 0.5 * h * k2v
        k3v = acc(t + 0.5 * h, y + 0.5 * h * k2y, k3y)
        k4y = v + h * k3v
        k4v = acc(t + h, y + h * k3y, k4y)
        y += (h / 6.0) * (k1y + 2 * k2y + 2 * k3y + k4y)
        v += (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v)
        ts[n + 1], ys[n + 1], vs[n + 1] = ivp.t0 + (n + 1) * h, y, v
    stats = IntegrationStats(n_steps, 0, 4 * n_steps, 0.0)
    if h > 0:
        return Trajectory(ts, ys, vs, stats)
    return Trajectory(ts[::-1].copy(), ys[::-1].copy(), vs[::-1].copy(), stats)


def self_convergence(ivp: IVP, grid) -> float:
    """Max pointwise |difference| between runs at rel_tol 1e-8 and 1e-11."""
    loose = integrate(ivp, rel_tol=1e-8, abs_tol=1e-10, grid=grid)
    tight = integrate(ivp, rel_tol=1e-11, abs_tol=1e-13, grid=grid)
    return float(np.max(np.abs(loose.ys - tight.ys)))
