"""First- and second-order oscillator operators applied to time functions.

The operators are

    L        = d/dt + beta
    A+       = d/dt + beta + h(t)
    A-       = d/dt + beta - h(t)
    N        = d^2/dt^2 + 2*beta*d/dt + beta^2
    Ng       = A+ A-                      (evaluated by nesting)
    Ng~      = A- A+ = d^2/dt^2 + 2*beta*d/dt + beta^2 - 2*h^2
    partner EOM = d^2/dt^2 + 2*beta*d/dt + omega0^2 - 2*h^2

with ``h(t) = gamma/(gamma*t + 1)``.  Applying them to a
:class:`TimeFunction` uses analytic derivatives whenever the function
carries them and falls back to central finite differences (with one
Richardson level) otherwise.  Composition is by nesting applicators, which
raises the derivative order pushed down to the base function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .core import DampingParams, RiccatiParam
from .errors import DerivativeUnavailable
from .jets import Jet
from .riccati import RiccatiSolution, guard_halfwidth, h_derivative, h_eval

_EPS = math.ulp(1.0)

# Default step scales per differencing order: with one Richardson level the
# truncation is O(h^4) while roundoff grows like eps/h^order, so the balance
# point is eps^(1/(4+order)).
_FD_STEP = {1: _EPS ** (1.0 / 5.0), 2: _EPS ** (1.0 / 6.0), 3: _EPS ** (1.0 / 7.0)}

# Stencil half-span in units of the step, per differencing order.
_FD_SPAN = {1: 1.0, 2: 1.0, 3: 2.0}


def _noise_step(order: int, noise: float, richardson: bool) -> float:
    """Step that balances noise/h^order against the h^p truncation."""
    p = 4.0 if richardson else 2.0
    return noise ** (1.0 / (p + order))


#: noise level above which the step is enlarged beyond the default: one
#: differencing level stays below ~1e-12 absolute, so only deeper nesting
#: benefits from a bigger step (and only there does truncation allow it)
_NOISE_FLOOR = 1e-11


@dataclass(frozen=True)
class FDOptions:
    """Overrides for the finite-difference fallback.

    ``step`` fixes the absolute step (default: order-dependent heuristic
    scaled by max(1, |t|)); ``richardson`` toggles the extrapolation level.
    """

    step: float | None = None
    richardson: bool = True


_DEFAULT_FD = FDOptions()


def fd_derivative(
    fn: Callable[[float], float],
    t: float,
    order: int,
    options: FDOptions = _DEFAULT_FD,
    singular_time: float | None = None,
    singular_halfwidth: float = 0.0,
    noise: float = _EPS,
) -> float:
    """Central finite-difference derivative of ``fn`` at ``t``.

    Supports orders 1-3.  ``noise`` is the absolute evaluation noise of
    ``fn``; for nested differencing it is well above machine epsilon and
    forces a larger step.  If ``singular_time`` is given, the stencil is
    shrunk to stay strictly on the admissible side of it; if no usable step
    remains, raises :class:`DerivativeUnavailable`.
    """
    if order not in _FD_SPAN:
        raise DerivativeUnavailable(f"no finite-difference stencil of order {order}")
    if options.step is not None:
        h = options.step
    else:
        h = _FD_STEP[order] * max(1.0, abs(t))
        if noise > _NOISE_FLOOR:
            h = max(h, _noise_step(order, noise, options.richardson))
    span = _FD_SPAN[order]
    if singular_time is not None:
        room = abs(t - singular_time) - singular_halfwidth
        if room <= 0.0:
            raise DerivativeUnavailable(
                f"t = {t!r} is inside the guard band around {singular_time!r}"
            )
        if options.step is None:
            # near the pole the coefficient derivatives grow like
            # 1/room^(k+1); keep the stencil small relative to the distance
            h = min(h, 0.01 * room)
        max_h = 0.5 * room / span
        h = min(h, max_h)
        if h < 64.0 * _EPS * max(1.0, abs(t)):
            raise DerivativeUnavailable(
                f"stencil at t = {t!r} cannot avoid the singular instant {singular_time!r}"
            )

    def stencil(step: float) -> float:
        if order == 1:
            return (fn(t + step) - fn(t - step)) / (2.0 * step)
        if order == 2:
            return (fn(t + step) - 2.0 * fn(t) + fn(t - step)) / (step * step)
        return (
            fn(t + 2.0 * step) - 2.0 * fn(t + step) + 2.0 * fn(t - step) - fn(t - 2.0 * step)
        ) / (2.0 * step**3)

    coarse = stencil(h)
    if not options.richardson:
        return coarse
    fine = stencil(0.5 * h)
    return (4.0 * fine - coarse) / 3.0


class TimeFunction:
    """An evaluatable real function of time.

    Subclasses provide ``analytic_order`` (None means every order is exact)
    and must be stateless so concurrent evaluation is safe.  ``deriv`` falls
    back to central finite differences when asked beyond ``analytic_order``;
    ``fd_orders`` reports which derivative orders would be resolved by
    differencing, and ``value_noise`` estimates the absolute evaluation
    noise (well above machine epsilon for images whose values are
    themselves finite-differenced).
    """

    analytic_order: int | None = None
    singular_time: float | None = None
    singular_halfwidth: float = 0.0
    value_noise: float = _EPS

    def value(self, t: float) -> float:
        return self.deriv(t, 0)

    def deriv(self, t: float, k: int, fd: FDOptions = _DEFAULT_FD) -> float:
        raise NotImplementedError

    def fd_orders(self, needed: int) -> tuple[int, ...]:
        if self.analytic_order is None:
            return ()
        return tuple(range(self.analytic_order + 1, needed + 1))


class CallableFunction(TimeFunction):
    """Wraps a plain callable, with optional exact derivative callables.

    ``derivs[k]`` evaluates the (k+1)-th derivative; orders beyond the chain
    are finite-differenced from the highest exact one.
    """

    def __init__(
        self,
        fn: Callable[[float], float],
        derivs: tuple[Callable[[float], float], ...] = (),
        singular_time: float | None = None,
        singular_halfwidth: float = 0.0,
    ):
        self.fn = fn
        self.derivs = tuple(derivs)
        self.analytic_order = len(self.derivs)
        self.singular_time = singular_time
        self.singular_halfwidth = singular_halfwidth

    def deriv(self, t, k, fd=_DEFAULT_FD):
        if k == 0:
            return self.fn(t)
        if k <= len(self.derivs):
            return self.derivs[k - 1](t)
        m = len(self.derivs)
        base = self.fn if m == 0 else self.derivs[m - 1]
        return fd_derivative(
            base,
            t,
            k - m,
            fd,
            self.singular_time,
            self.singular_halfwidth,
            self.value_noise,
        )


class JetFunction(TimeFunction):
    """A function whose derivatives of every order come from a jet builder."""

    analytic_order = None

    def __init__(
        self,
        builder: Callable[[float, int], Jet],
        singular_time: float | None = None,
        singular_halfwidth: float = 0.0,
    ):
        self.builder = builder
        self.singular_time = singular_time
        self.singular_halfwidth = singular_halfwidth

    def deriv(self, t, k, fd=_DEFAULT_FD):
        return self.builder(t, k).d[k]


class ShiftedDerivativeImage(TimeFunction):
    """The image (d/dt + c0 + sign*h) f of a base function.

    When the base carries analytic derivatives at the needed order the image
    derivative expands by the Leibniz rule (exact in the coefficient, which
    has closed-form derivatives of every order).  Otherwise the image's own
    values are finite-differenced, so nesting applicators raises the
    differencing order as expected of operator composition.
    """

    def __init__(
        self,
        base: TimeFunction,
        c0: float,
        solution: RiccatiSolution | None = None,
        sign: float = 0.0,
    ):
        self.base = base
        self.c0 = c0
        self.solution = solution if (solution and solution.gamma != 0.0) else None
        self.sign = sign
        if base.analytic_order is None:
            self.analytic_order = None
        else:
            self.analytic_order = max(base.analytic_order - 1, 0)
        self.singular_time = base.singular_time
        self.singular_halfwidth = base.singular_halfwidth
        if self.solution is not None:
            ts = self.solution.t_star
            if self.singular_time is not None and not math.isclose(
                self.singular_time, ts, rel_tol=1e-12, abs_tol=0.0
            ):
                raise ValueError("cannot combine two distinct singular instants")
            self.singular_time = ts
            self.singular_halfwidth = max(
                self.singular_halfwidth, guard_halfwidth(self.solution.gamma)
            )
        if base.analytic_order is None or base.analytic_order >= 1:
            self.value_noise = 4.0 * base.value_noise
        else:
            # the value itself differences the base: noise / step
            step = _FD_STEP[1]
            if base.value_noise > _NOISE_FLOOR:
                step = max(step, _noise_step(1, base.value_noise, True))
            self.value_noise = 4.0 * base.value_noise / step

    def _coeff(self, t, j):
        if j == 0:
            c = self.c0
            if self.solution is not None:
                c = c + self.sign * h_eval(self.solution, t)
            return c
        if self.solution is None:
            return 0.0
        return self.sign * h_derivative(self.solution, t, j)

    def deriv(self, t, k, fd=_DEFAULT_FD):
        need = k + 1
        m = self.base.analytic_order
        if m is None or m >= need:
            total = self.base.deriv(t, need, fd)
            for j in range(k + 1):
                cj = self._coeff(t, j)
                if cj != 0.0:
                    total += math.comb(k, j) * cj * self.base.deriv(t, k - j, fd)
            return total
        if k == 0:
            return self.base.deriv(t, 1, fd) + self._coeff(t, 0) * self.base.deriv(t, 0, fd)
        return fd_derivative(
            lambda s: self.deriv(s, 0, fd),
            t,
            k,
            fd,
            self.singular_time,
            self.singular_halfwidth,
            self.value_noise,
        )

    def fd_orders(self, needed):
        return self.base.fd_orders(needed + 1)


class OperatorKind(Enum):
    L = "L"
    APLUS = "A+"
    AMINUS = "A-"
    N = "N"
    NG = "Ng"
    NG_PARTNER = "Ng~"
    PARTNER_EOM = "partner_eom"


_NEEDS_RICCATI = {
    OperatorKind.APLUS,
    OperatorKind.AMINUS,
    OperatorKind.NG,
    OperatorKind.NG_PARTNER,
    OperatorKind.PARTNER_EOM,
}

_NEEDED_ORDER = {
    OperatorKind.L: 1,
    OperatorKind.APLUS: 1,
    OperatorKind.AMINUS: 1,
    OperatorKind.N: 2,
    OperatorKind.NG: 2,
    OperatorKind.NG_PARTNER: 2,
    OperatorKind.PARTNER_EOM: 2,
}


@dataclass(frozen=True)
class OperatorSpec:
    kind: OperatorKind
    params: DampingParams
    riccati: RiccatiParam | None = None

    def __post_init__(self):
        if self.kind in _NEEDS_RICCATI and self.riccati is None:
            raise ValueError(f"operator {self.kind.value} requires a Riccati parameter")


def _solution(op: OperatorSpec) -> RiccatiSolution:
    return RiccatiSolution(op.riccati.gamma)


def first_order_image(op: OperatorSpec, f: TimeFunction) -> TimeFunction:
    """The operator applied to f, as a new TimeFunction (first-order kinds only)."""
    beta = op.params.beta
    if op.kind is OperatorKind.L:
        return ShiftedDerivativeImage(f, beta)
    if op.kind is OperatorKind.APLUS:
        return ShiftedDerivativeImage(f, beta, _solution(op), +1.0)
    if op.kind is OperatorKind.AMINUS:
        return ShiftedDerivativeImage(f, beta, _solution(op), -1.0)
    if op.kind is OperatorKind.NG:
        inner = OperatorSpec(OperatorKind.AMINUS, op.params, op.riccati)
        outer = OperatorSpec(OperatorKind.APLUS, op.params, op.riccati)
        return first_order_image(outer, first_order_image(inner, f))
    raise ValueError(f"{op.kind.value} has no first-order image form")


def apply(op: OperatorSpec, f: TimeFunction, t: float, fd: FDOptions = _DEFAULT_FD) -> float:
    """Apply the operator to f at time t.

    Raises :class:`SingularTime` if t lies in the guard band of an operator
    that carries the Riccati shift, and :class:`DerivativeUnavailable` if a
    required finite-difference stencil cannot avoid the singular instant.
    """
    beta = op.params.beta
    kind = op.kind
    if kind in (OperatorKind.L, OperatorKind.APLUS, OperatorKind.AMINUS, OperatorKind.NG):
        image = first_order_image(op, f)
        return image.deriv(t, 0, fd)
    if kind is OperatorKind.N:
        return f.deriv(t, 2, fd) + 2.0 * beta * f.deriv(t, 1, fd) + beta * beta * f.value(t)
    h = h_eval(_solution(op), t)
    if kind is OperatorKind.NG_PARTNER:
        c = beta * beta - 2.0 * h * h
    elif kind is OperatorKind.PARTNER_EOM:
        c = op.params.omega0_sq - 2.0 * h * h
    else:  # pragma: no cover
        raise ValueError(f"unknown operator kind {kind!r}")
    return f.deriv(t, 2, fd) + 2.0 * beta * f.deriv(t, 1, fd) + c * f.value(t)


def apply_with_info(
    op: OperatorSpec, f: TimeFunction, t: float, fd: FDOptions = _DEFAULT_FD
) -> tuple[float, tuple[int, ...]]:
    """Apply the operator and report which derivative orders were differenced."""
    needed = _NEEDED_ORDER[op.kind]
    return apply(op, f, t, fd), f.fd_orders(needed)


def factorization_defect(
    p: DampingParams,
    r: RiccatiParam,
    f: TimeFunction,
    t: float,
    fd: FDOptions = _DEFAULT_FD,
) -> float:
    """(A+ A- - N) f at t; zero for arbitrary twice-differentiable f."""
    ng = OperatorSpec(OperatorKind.NG, p, r)
    n = OperatorSpec(OperatorKind.N, p)
    return apply(ng, f, t, fd) - apply(n, f, t, fd)


def intertwining_defect(
    p: DampingParams,
    r: RiccatiParam,
    f: TimeFunction,
    t: float,
    fd: FDOptions = _DEFAULT_FD,
) -> float:
    """(Ng~ A- - A- Ng) f at t; zero for arbitrary three-times-differentiable f."""
    aminus = OperatorSpec(OperatorKind.AMINUS, p, r)
    ng = OperatorSpec(OperatorKind.NG, p, r)
    partner = OperatorSpec(OperatorKind.NG_PARTNER, p, r)
    lhs = apply(partner, first_order_image(aminus, f), t, fd)
    rhs = apply(aminus, first_order_image(ng, f), t, fd)
    return lhs - rhs
