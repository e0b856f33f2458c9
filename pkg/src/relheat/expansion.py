"""Expansion of functions in relativistic heat polynomials ``RH_n(x, -|y|)``.

The coefficients are

    c_n(y) = e^{|y|} / (2 |y| sqrt(pi)) int g_{1/2}(eta) exp(-eta y^2) chi_n(eta) / sqrt(eta) d eta

with

    chi_n(eta) = (1/n!) int H_n(xi / (2Y), -1/(4Y)) exp(-xi^2 / (4Y)) f(xi) d xi,   Y = y^2 eta.

For a polynomial ``f = sum_j f_j x**j`` the Gaussian moments give
``chi_n = 2 |y| sqrt(pi eta) sum_j f_j j! / (n! r!) Y**r`` with ``r = (j - n)/2``,
and the eta-integral collapses to Bessel-Carlitz values, so
``c_n = sum_j f_j j! B_r(|y|) / (n! r! 2**r)`` exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .evolution import TruncationWarning
from .grid import Grid, GridFunction
from .polynomials.algebra import RationalPoly, as_rational
from .polynomials.families import bessel_carlitz, hermite_h, rhp
from .quadrature import DEFAULT_SPEC, QuadratureError, QuadratureSpec, integrate_real_line, integrate_semi_axis
from .stable import LEVY_SMIRNOV, integrable_density


class ExpansionDivergenceError(ArithmeticError):
    """The eta-integral for a coefficient does not converge."""


@dataclass
class ExpansionResult:
    y: float
    coefficients: np.ndarray
    error_estimates: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.y == 0:
            raise ValueError("y must be nonzero")
        self.coefficients = np.asarray(self.coefficients, dtype=float)
        self.error_estimates = np.asarray(self.error_estimates, dtype=float)
        if not np.all(np.isfinite(self.coefficients)):
            raise ValueError("coefficients must be finite")

    @property
    def n_max(self) -> int:
        return len(self.coefficients) - 1

    def to_json(self) -> dict:
        return {
            "y": self.y,
            "coefficients": [float(c) for c in self.coefficients],
            "error_estimates": [float(e) for e in self.error_estimates],
        }


def _as_polynomial(f):
    """Rational coefficient list of ``f`` if it is a polynomial, else ``None``."""
    if isinstance(f, RationalPoly):
        return list(f.coeffs)
    if isinstance(f, (list, tuple)):
        return [as_rational(c) for c in f]
    kind = getattr(f, "kind", None)
    if kind == "monomial":
        return [Fraction(0)] * f.n + [Fraction(1)]
    return None


def _gauss_coefficient(j: int, n: int):
    """``(r, j! / (n! r!))`` for the ``x**n`` coefficient of ``H_j(x, Y) = ... Y**r``."""
    if j < n or (j - n) % 2:
        return None
    r = (j - n) // 2
    return r, Fraction(math.factorial(j), math.factorial(n) * math.factorial(r))


def chi_n(f, n: int, y: float, eta: float, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Projection of ``f`` onto the ``n``-th Hermite mode at width ``Y = y**2 eta``.

    Polynomials (``RationalPoly``, coefficient lists, monomial initial
    conditions) use Gaussian moments; callables and ``GridFunction`` use
    real-line quadrature in ``z = xi / (2 sqrt(Y))``.
    """
    if y == 0:
        raise ValueError("y must be nonzero")
    if not eta > 0:
        raise ValueError("eta must be positive")
    Y = y * y * eta
    coeffs = _as_polynomial(f)
    if coeffs is not None:
        total = 0.0
        for j, fj in enumerate(coeffs):
            gc = _gauss_coefficient(j, n)
            if fj and gc:
                r, c = gc
                total += float(fj * c) * Y**r
        return 2.0 * abs(y) * math.sqrt(math.pi * eta) * total
    return float(_chi_numeric(f, np.array([n]), np.array([Y]), quad)[0, 0])


def _chi_numeric(f, ns: np.ndarray, Ys: np.ndarray, quad: QuadratureSpec) -> np.ndarray:
    # chi_n = 2 sqrt(Y) (2 sqrt(Y))**(-n) / n! int H_n(z) e^{-z^2} f(2 sqrt(Y) z) dz, H_n physicists'
    if isinstance(f, GridFunction):
        edge = max(abs(f.samples[0]), abs(f.samples[-1]))
        if edge > 1e-12:
            warnings.warn(f"tabulated input is {edge:.2e} at its edges; tail truncated",
                          TruncationWarning, stacklevel=3)
    roots = 2.0 * np.sqrt(Ys)

    def integrand(z):
        fz = np.asarray(f(z[:, None] * roots[None, :]), dtype=float)
        hz = np.stack([hermite_h(int(n), z) for n in ns], axis=-1)
        return (np.exp(-z * z)[:, None] * fz)[:, :, None] * hz[:, None, :]

    value, _ = integrate_real_line(integrand, quad)
    fact = np.array([math.factorial(int(n)) for n in ns], dtype=float)
    scale = roots[:, None] ** (1.0 - ns[None, :]) / fact[None, :]
    return value * scale


def rhp_coefficients(f, y: float, n_max: int, quad: QuadratureSpec = DEFAULT_SPEC) -> ExpansionResult:
    """Coefficients ``c_0..c_{n_max}`` by quadrature over the Lévy-Smirnov density."""
    if y == 0:
        raise ValueError("y must be nonzero")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    ay = abs(y)
    g, lower = integrable_density(LEVY_SMIRNOV)
    ns = np.arange(n_max + 1)
    coeffs = _as_polynomial(f)

    if coeffs is not None:
        # chi_n is a polynomial in Y: integrate the powers Y**r once, combine exactly
        table = np.zeros((n_max + 1, len(coeffs)))
        for n in ns:
            for j, fj in enumerate(coeffs):
                gc = _gauss_coefficient(j, int(n))
                if fj and gc:
                    r, c = gc
                    table[n, r] += float(fj * c)
        powers = np.arange(table.shape[1])

        def basis(eta):
            return 2.0 * ay * np.sqrt(math.pi * eta)[:, None] * (y * y * eta)[:, None] ** powers[None, :]
    else:
        table = None
        powers = ns

        def basis(eta):
            return _chi_numeric(f, ns, y * y * eta, quad)

    def integrand(eta):
        w = g(eta) * np.exp(-eta * y * y) / np.sqrt(eta)
        live = w > 0
        out = np.zeros((eta.size, powers.size))
        if live.any():
            out[live] = w[live, None] * basis(eta[live])
        return out

    prefactor = math.exp(ay) / (2.0 * ay * math.sqrt(math.pi))
    try:
        with np.errstate(over="raise", invalid="raise"):
            value, error = integrate_semi_axis(integrand, quad, lower)
    except (QuadratureError, FloatingPointError) as exc:
        raise ExpansionDivergenceError(f"eta-integral does not converge for y={y}: {exc}") from exc
    if table is not None:
        value, error = table @ value, np.abs(table) @ error
    value, error = prefactor * value, prefactor * error
    if not np.all(np.isfinite(value)):
        raise ExpansionDivergenceError(f"non-finite coefficients for y={y}")
    return ExpansionResult(y, value, error, {"route": "polynomial" if coeffs is not None else "numeric"})


def rhp_coefficients_exact(f, y, n_max: int) -> list[Fraction]:
    """Exact coefficients of a polynomial ``f`` for rational ``y``."""
    coeffs = _as_polynomial(f)
    if coeffs is None:
        raise TypeError("exact coefficients need a polynomial input")
    ay = abs(as_rational(y))
    if ay == 0:
        raise ValueError("y must be nonzero")
    out = []
    for n in range(n_max + 1):
        c = Fraction(0)
        for j, fj in enumerate(coeffs):
            gc = _gauss_coefficient(j, n)
            if fj and gc:
                r, a = gc
                c += fj * a * bessel_carlitz(r)(ay) / 2**r
        out.append(c)
    return out


def reconstruct(res: ExpansionResult, grid: Grid) -> GridFunction:
    """``sum_r c_r RH_r(x, -|y|)`` on ``grid``."""
    x = grid.x
    t = -abs(res.y)
    total = np.zeros_like(x)
    for r, c in enumerate(res.coefficients):
        if c:
            total += c * rhp(r)(x, t)
    return GridFunction.on(grid, total)
