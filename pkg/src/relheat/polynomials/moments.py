"""Numerical moment-integral routes to the polynomial families.

Each function evaluates a family member at a point through a Lévy-convolution
integral rather than from its coefficients, giving an independent check on the
exact constructions.
"""

from __future__ import annotations

import math

import numpy as np

from ..quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_semi_axis
from ..stable import LEVY_SMIRNOV, StableIndex, integrable_density
from .families import hkdf


def bessel_moment(n: int, t: float, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``B_n(t) = e^t int g_{1/2}(eta) exp(-eta t^2) (2 eta t^2)**n d eta``."""
    if not t > 0:
        raise ValueError("t must be positive")
    g, lower = integrable_density(LEVY_SMIRNOV)
    t2 = t * t

    def integrand(eta):
        return g(eta) * np.exp(-eta * t2) * (2 * eta * t2) ** n

    value, _ = integrate_semi_axis(integrand, quad, lower)
    return math.exp(t) * float(value)


def gen_bessel_ab_integral(n: int, alpha: float, beta: float, sigma: float,
                           quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``e^sigma int g_{1/2}(xi) exp(-xi sigma^2) H_n(beta xi sigma^2, alpha xi sigma^2) d xi``."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    g, lower = integrable_density(LEVY_SMIRNOV)
    h = hkdf(n)
    s2 = sigma * sigma

    def integrand(xi):
        return g(xi) * np.exp(-xi * s2) * h(beta * xi * s2, alpha * xi * s2)

    value, _ = integrate_semi_axis(integrand, quad, lower)
    return math.exp(sigma) * float(value)


def moment_lk(n: int, idx: StableIndex, sigma: float, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``((k/l) s)**n e^sigma int exp(-u s) g_{l/k}(u) u**n du`` with ``s = sigma**(k/l)``."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    g, lower = integrable_density(idx)
    s = sigma ** (idx.k / idx.l)

    def integrand(u):
        return np.exp(-u * s) * g(u) * u**n

    value, _ = integrate_semi_axis(integrand, quad, lower)
    return (idx.k / idx.l * s) ** n * math.exp(sigma) * float(value)
