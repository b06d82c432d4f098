"""Derivative jets: a function value bundled with its time derivatives.

Every closed-form mode in this package is a sum of products of a handful of
elementary factors (exponentials, trig and hyperbolic factors, polynomials,
and integer powers of ``gamma*t + 1``).  Each factor's derivatives have
exact closed forms, and the Leibniz rule combines them without any
differencing, so jet arithmetic gives analytic derivatives of arbitrary
order that are exact up to roundoff.

The time argument may be a scalar or a numpy array; everything is
elementwise.
"""

from __future__ import annotations

from math import comb

import numpy as np


class Jet:
    """Derivatives d[0..n] of a smooth function at one time (or time grid)."""

    __slots__ = ("d",)

    def __init__(self, derivs):
        self.d = list(derivs)

    @property
    def order(self) -> int:
        return len(self.d) - 1

    def __neg__(self):
        return Jet([-v for v in self.d])

    def __add__(self, other):
        if isinstance(other, Jet):
            if len(other.d) != len(self.d):
                raise ValueError("jet order mismatch")
            return Jet([a + b for a, b in zip(self.d, other.d)])
        out = list(self.d)
        out[0] = out[0] + other
        return Jet(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            if len(other.d) != len(self.d):
                raise ValueError("jet order mismatch")
            n = self.order
            return Jet(
                [
                    sum(comb(k, j) * self.d[j] * other.d[k - j] for j in range(k + 1))
                    for k in range(n + 1)
                ]
            )
        return Jet([other * v for v in self.d])

    __rmul__ = __mul__


def constant(value, t, order: int) -> Jet:
    zero = np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0
    return Jet([value + zero] + [zero] * order)


def linear(a0, a1, t, order: int) -> Jet:
    """a0 + a1*t."""
    zero = np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0
    d = [a0 + a1 * t, a1 + zero] + [zero] * (order - 1)
    return Jet(d[: order + 1])


def polynomial(coeffs, t, order: int) -> Jet:
    """sum(coeffs[j] * t**j); derivatives by term-wise falling factorials."""
    d = []
    for k in range(order + 1):
        acc = 0.0 * t if np.ndim(t) else 0.0
        for j in range(len(coeffs) - 1, k - 1, -1):
            fall = 1.0
            for m in range(k):
                fall *= j - m
            acc = acc + coeffs[j] * fall * t ** (j - k)
        d.append(acc)
    return Jet(d)


def exponential(rate, t, order: int) -> Jet:
    e = np.exp(rate * t)
    return Jet([rate**k * e for k in range(order + 1)])


def _cycle4(c, s, freq, order, start):
    # derivatives of cos/sin cycle with period 4: start=0 for cos, 3 for sin
    table = (c, -s, -c, s)
    return Jet([freq**k * table[(start + k) % 4] for k in range(order + 1)])


def cosine(freq, phase, t, order: int) -> Jet:
    arg = freq * t + phase
    return _cycle4(np.cos(arg), np.sin(arg), freq, order, 0)


def sine(freq, phase, t, order: int) -> Jet:
    # sin' = freq*cos, i.e. the cos cycle shifted by 3
    arg = freq * t + phase
    return _cycle4(np.cos(arg), np.sin(arg), freq, order, 3)


def hyperbolic_cosine(rate, phase, t, order: int) -> Jet:
    arg = rate * t + phase
    ch, sh = np.cosh(arg), np.sinh(arg)
    return Jet([rate**k * (ch if k % 2 == 0 else sh) for k in range(order + 1)])


def hyperbolic_sine(rate, phase, t, order: int) -> Jet:
    arg = rate * t + phase
    ch, sh = np.cosh(arg), np.sinh(arg)
    return Jet([rate**k * (sh if k % 2 == 0 else ch) for k in range(order + 1)])


def shifted_power(gamma, power: int, t, order: int) -> Jet:
    """(gamma*t + 1)**power for integer power (negative allowed)."""
    u = gamma * t + 1.0
    d = []
    coeff = 1.0
    for k in range(order + 1):
        d.append(coeff * gamma**k * u ** int(power - k))
        coeff *= power - k
    return Jet(d)


def riccati_h(gamma, t, order: int) -> Jet:
    """h(t) = gamma/(gamma*t + 1); the zero solution when gamma == 0."""
    return gamma * shifted_power(gamma, -1, t, order)
