"""Solvers for square-root type pseudo-differential evolution equations.

Two independent routes are provided:

* Lévy convolution in real space.  With ``g`` a one-sided stable density,
  ``exp(t [1 - (1 - P(d_x))**(l/k)]) = e^t int g(u) exp(-u tau (1 - P(d_x))) du``
  with ``tau = t**(k/l)``, which turns the evolution into an average of shifts
  (first-order ``P``) and heat flows (second-order ``P``).
* Symbol evolution in Fourier space, ``F^(k, t) = exp(t s(k)) g^(k)`` with
  ``d_x -> ik`` and the principal branch of the fractional power.

Conventions: ``g^(k) = int exp(-ikx) g(x) dx`` and the Gaussian initial
condition is ``exp(-x**2) / sqrt(pi)`` with ``g^(k) = exp(-k**2 / 4)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from .grid import Grid, GridFunction
from .polynomials.algebra import BivariatePoly, as_rational
from .polynomials.families import gen_bessel_lk
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    fourier_inverse,
    integrate_real_line,
    integrate_semi_axis,
)
from .stable import LEVY_SMIRNOV, StableIndex, integrable_density

KINDS = ("sqrt_drift", "rel_heat", "gen_ab", "gen_lk")
_SQRT_PI = math.sqrt(math.pi)
_GH_NODES, _GH_WEIGHTS = np.polynomial.hermite.hermgauss(96)


class TruncationWarning(UserWarning):
    """A sampled function does not decay at the edges of its grid."""


class BranchCutError(ValueError):
    """The base of a fractional power crosses the negative real axis."""


@dataclass(frozen=True)
class SymbolSpec:
    """Which evolution operator ``exp(t [1 - w(d_x)**p])`` to apply.

    ======== ============================ =========
    kind     w(d_x)                       p
    ======== ============================ =========
    sqrt_drift  1 - 2 d_x                 1/2
    rel_heat    1 - d_x**2                1/2
    gen_ab      1 - alpha d_x**2 - beta d_x  1/2
    gen_lk      1 - d_x**mu               l/k
    ======== ============================ =========
    """

    kind: str
    mu: int = 1
    idx: StableIndex = LEVY_SMIRNOV
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; choose from {KINDS}")
        if self.mu < 1:
            raise ValueError("mu must be a positive integer")
        if self.kind == "gen_ab" and (self.alpha < 0 or self.beta < 0):
            raise ValueError("gen_ab needs alpha, beta >= 0")

    @classmethod
    def sqrt_drift(cls):
        return cls("sqrt_drift")

    @classmethod
    def rel_heat(cls):
        return cls("rel_heat")

    @classmethod
    def gen_ab(cls, alpha, beta):
        return cls("gen_ab", alpha=alpha, beta=beta)

    @classmethod
    def gen_lk(cls, idx: StableIndex, mu: int = 2):
        return cls("gen_lk", mu=mu, idx=idx)

    @property
    def index(self) -> StableIndex:
        return self.idx if self.kind == "gen_lk" else LEVY_SMIRNOV

    def base(self, k):
        """``w(ik)`` on an array of wavenumbers."""
        k = np.asarray(k, dtype=float)
        if self.kind == "sqrt_drift":
            return 1.0 - 2.0j * k
        if self.kind == "rel_heat":
            return (1.0 + k * k).astype(complex)
        if self.kind == "gen_ab":
            return 1.0 + self.alpha * k * k - 1j * self.beta * k
        return 1.0 - (1j * k) ** self.mu

    def symbol(self, k):
        """``s(k) = 1 - w(ik)**p`` (principal branch)."""
        return 1.0 - self.base(k) ** self.index.alpha

    def check_branch(self, k):
        """Raise :class:`BranchCutError` if ``w(ik)`` meets the cut on ``k``."""
        w = self.base(k)
        on_cut = (w.real <= 0) & (np.abs(w.imag) <= 1e-12 * np.maximum(np.abs(w), 1.0))
        flips = (w.real[1:] < 0) & (w.real[:-1] < 0) & (np.sign(w.imag[1:]) != np.sign(w.imag[:-1]))
        if on_cut.any() or flips.any():
            raise BranchCutError(
                f"{self.kind} (mu={self.mu}): 1 - P(ik) crosses the negative real axis"
            )

    def subordination(self, t: float):
        """``(index, tau, drift, diffusion)`` of the Lévy-convolution form.

        The evolution at time ``t`` equals
        ``e^t int g_index(u) exp(-u tau) [exp(u (drift d_x + diffusion d_x**2)) g](x) du``.
        """
        if self.kind == "gen_lk":
            if self.mu not in (1, 2):
                raise ValueError(f"convolution route supports mu in (1, 2), got {self.mu}")
            tau = t ** (self.idx.k / self.idx.l)
            return (self.idx, tau, tau, 0.0) if self.mu == 1 else (self.idx, tau, 0.0, tau)
        tau = t * t
        if self.kind == "sqrt_drift":
            return LEVY_SMIRNOV, tau, 2.0 * tau, 0.0
        if self.kind == "rel_heat":
            return LEVY_SMIRNOV, tau, 0.0, tau
        return LEVY_SMIRNOV, tau, self.beta * tau, self.alpha * tau


@dataclass(frozen=True)
class InitialCondition:
    """Initial datum ``g``: ``gaussian``, ``monomial`` (``x**n``), ``tabulated`` or ``zero``."""

    kind: str = "gaussian"
    n: int = 0
    table: GridFunction | None = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "monomial", "tabulated", "zero"):
            raise ValueError(f"unknown initial condition {self.kind!r}")
        if self.kind == "tabulated" and self.table is None:
            raise ValueError("tabulated initial condition needs a table")
        if self.kind == "monomial" and self.n < 0:
            raise ValueError("monomial degree must be non-negative")

    @classmethod
    def gaussian(cls):
        return cls("gaussian")

    @classmethod
    def monomial(cls, n: int):
        return cls("monomial", n=n)

    @classmethod
    def tabulated(cls, table: GridFunction):
        return cls("tabulated", table=table)

    @classmethod
    def zero(cls):
        return cls("zero")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "gaussian":
            return np.exp(-x * x) / _SQRT_PI
        if self.kind == "monomial":
            return x**self.n
        if self.kind == "zero":
            return np.zeros_like(x)
        return self.table(x)

    def heat(self, x, y):
        """``exp(y d_x**2) g`` at ``x`` (``x`` and ``y >= 0`` broadcast together)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.kind == "gaussian":
            s = 1.0 + 4.0 * y
            return np.exp(-x * x / s) / np.sqrt(math.pi * s)
        if self.kind == "monomial":
            # H_n(x, y) by its two-term recurrence H_{m+1} = x H_m + 2 m y H_{m-1}
            h_prev, h = np.ones(np.broadcast(x, y).shape), x + 0 * y
            if self.n == 0:
                return h_prev
            for m in range(1, self.n):
                h_prev, h = h, x * h + 2 * m * y * h_prev
            return h
        if self.kind == "zero":
            return np.zeros(np.broadcast(x, y).shape)
        # tabulated: Gauss-Hermite in z with x' = x + 2 sqrt(y) z
        root = 2.0 * np.sqrt(y)[..., None]
        vals = self.table(x[..., None] + root * _GH_NODES)
        return (vals * _GH_WEIGHTS).sum(axis=-1) / _SQRT_PI

    def fourier(self, k):
        """``int exp(-ikx) g(x) dx``; trapezoid sum over the samples when tabulated."""
        k = np.asarray(k, dtype=float)
        if self.kind == "gaussian":
            return np.exp(-k * k / 4.0).astype(complex)
        if self.kind == "zero":
            return np.zeros(k.shape, dtype=complex)
        if self.kind == "monomial":
            raise ValueError("a monomial has no Fourier transform; use the convolution route")
        x = self.table.x
        w = np.full(x.size, self.table.spacing)
        w[[0, -1]] *= 0.5
        return np.exp(-1j * np.outer(k.ravel(), x)) @ (w * self.table.samples)


# -- Lévy-convolution route ---------------------------------------------

def _levy_average(weighted: Callable, idx: StableIndex, t: float, grid: Grid,
                  quad: QuadratureSpec) -> GridFunction:
    g, lower = integrable_density(idx)

    def integrand(u):
        w = g(u)
        vals = weighted(u)
        with np.errstate(invalid="ignore", over="ignore"):
            out = w[:, None] * vals
        return np.where(w[:, None] == 0, 0.0, out)

    with np.errstate(over="ignore", under="ignore"):
        value, error = integrate_semi_axis(integrand, quad, lower)
    out = GridFunction.on(grid, math.exp(t) * value, t)
    out.info = {"error_estimate": math.exp(t) * float(np.max(error))}
    return out


def evolve_levy_convolution(ic: InitialCondition, t: float, spec: SymbolSpec, grid: Grid,
                            quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """Real-space solution by averaging shifts/heat flows over a stable law."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return GridFunction.on(grid, ic(grid.x), 0.0)
    idx, tau, drift, diffusion = spec.subordination(t)
    x = grid.x

    def weighted(u):
        shifted = x[None, :] + drift * u[:, None]
        return np.exp(-u * tau)[:, None] * ic.heat(shifted, diffusion * u[:, None])

    return _levy_average(weighted, idx, t, grid, quad)


def evolve_gaussian_drift(t: float, grid: Grid, quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """Gaussian under ``d_t F = (1 - sqrt(1 - 2 d_x)) F``, written as
    ``phi(x, t) exp(-x**2)/sqrt(pi)`` with
    ``phi = e^t int g(k) exp(-k t^2) exp(-4 k t^2 (x + k t^2)) dk``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    x = grid.x
    if t == 0:
        return GridFunction.on(grid, np.exp(-x * x) / _SQRT_PI, 0.0)
    t2 = t * t

    def weighted(kappa):
        kt = kappa[:, None] * t2
        # exponents combined so the product never overflows
        return np.exp(-kt - x * x - 4.0 * kt * (x + kt)) / _SQRT_PI

    return _levy_average(weighted, LEVY_SMIRNOV, t, grid, quad)


def evolve_relheat_gaussian(t: float, grid: Grid, quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """Gaussian under ``d_t F = (1 - sqrt(1 - d_x**2)) F`` (Glaisher-reduced integral)."""
    return evolve_gen_ab_gaussian(1.0, 0.0, t, grid, quad)


def evolve_gen_ab_gaussian(alpha: float, beta: float, t: float, grid: Grid,
                           quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """Gaussian under ``d_t F = (1 - sqrt(1 - alpha d_x**2 - beta d_x)) F``.

    ``F = (e^t/sqrt(pi)) int g(eta) exp(-eta t^2)
    exp(-(x + beta eta t^2)**2 / (1 + 4 alpha eta t^2)) / sqrt(1 + 4 alpha eta t^2) d eta``.
    The same ``1 + 4 alpha eta t^2`` appears in the prefactor and in the exponent.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be non-negative")
    x = grid.x
    if t == 0:
        return GridFunction.on(grid, np.exp(-x * x) / _SQRT_PI, 0.0)
    t2 = t * t

    def weighted(eta):
        et = eta[:, None] * t2
        s = 1.0 + 4.0 * alpha * et
        return np.exp(-et - (x + beta * et) ** 2 / s) / np.sqrt(math.pi * s)

    return _levy_average(weighted, LEVY_SMIRNOV, t, grid, quad)


def levy_moment_polys(idx: StableIndex, r_max: int):
    """Exact ``M_r(t) = e^t int g(u) exp(-u tau) (u tau)**r du = (l/k)**r B^{(l,k)}_r(t)``."""
    ratio = Fraction(idx.l, idx.k)
    return [gen_bessel_lk(r, idx) * ratio**r for r in range(r_max + 1)]


def evolve_monomial(n: int, spec: SymbolSpec, t=None):
    """Exact evolution of ``x**n``.

    ``exp(s (d d_x + D d_x**2)) x**n`` is expanded in powers of ``s = u tau`` and
    each ``s**r`` is replaced by its Lévy moment ``M_r(t)``.  Returns a
    :class:`BivariatePoly` in ``(x, t)``, or a polynomial in ``x`` when ``t`` is
    given.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if spec.kind == "gen_lk":
        if spec.mu > 2:
            raise ValueError("monomial evolution implemented for mu in (1, 2)")
        drift, diffusion = (Fraction(1), Fraction(0)) if spec.mu == 1 else (Fraction(0), Fraction(1))
    elif spec.kind == "sqrt_drift":
        drift, diffusion = Fraction(2), Fraction(0)
    elif spec.kind == "rel_heat":
        drift, diffusion = Fraction(0), Fraction(1)
    else:
        drift, diffusion = as_rational(spec.beta), as_rational(spec.alpha)
    moments = levy_moment_polys(spec.index, n)
    out = BivariatePoly({}, ("x", "t"))
    fact = math.factorial
    for a in range(n + 1):
        for b in range((n - a) // 2 + 1):
            c = Fraction(fact(n), fact(a) * fact(b) * fact(n - a - 2 * b)) * drift**a * diffusion**b
            if c == 0:
                continue
            m = moments[a + b]
            out = out + BivariatePoly({(n - a - 2 * b, j): c * mj for j, mj in enumerate(m.coeffs)})
    return out if t is None else out.at(t=t)


# -- Gauss-Weierstrass ----------------------------------------------------

def gauss_weierstrass(g, y: float, grid: Grid, quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """``(1 / (2 sqrt(pi y))) int exp(-(x - s)**2 / (4 y)) g(s) ds`` on ``grid``.

    ``g`` may be an :class:`InitialCondition`, a :class:`GridFunction` or any
    vectorised callable.
    """
    if not y > 0:
        raise ValueError("y must be positive")
    if isinstance(g, GridFunction):
        _warn_edges(g, "Gauss-Weierstrass input")
    x = grid.x
    root = 2.0 * math.sqrt(y)

    def integrand(z):
        return np.exp(-z * z)[:, None] * np.asarray(g(x[None, :] + root * z[:, None]))

    value, error = integrate_real_line(integrand, quad)
    out = GridFunction.on(grid, value / _SQRT_PI)
    out.info = {"error_estimate": float(np.max(error)) / _SQRT_PI}
    return out


# -- Fourier route ----------------------------------------------------------

def evolve_spectral(ic: InitialCondition, t: float, spec: SymbolSpec, grid: Grid,
                    quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """Fourier-space solution ``F^(k, t) = exp(t s(k)) g^(k)``, inverted by quadrature."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return GridFunction.on(grid, ic(grid.x), 0.0)
    spec.check_branch(np.linspace(-200.0, 200.0, 40001))

    def khat(k):
        with np.errstate(over="ignore", under="ignore"):
            s = t * spec.symbol(k)
            g = ic.fourier(k)
            return np.where(g == 0, 0.0, np.exp(s) * g)

    return fourier_inverse(khat, grid, quad, time=t)


def telegrapher_kernel(k, t: float, g_hat, s_hat):
    """Fourier solution of ``F_tt - 2 F_t + F_xx = 0`` with ``F = g``, ``F_t = s`` at 0."""
    omega = np.sqrt(1.0 + np.asarray(k, dtype=float) ** 2)
    return math.exp(t) * (np.cosh(t * omega) * g_hat + np.sinh(t * omega) / omega * (s_hat - g_hat))


def telegrapher_solve(ic: InitialCondition, s: InitialCondition | None, t: float, grid: Grid,
                      quad: QuadratureSpec = DEFAULT_SPEC) -> GridFunction:
    """Hyperbolic (telegrapher) evolution; ``s`` is the initial time derivative (default 0).

    The result is not normalised; divide by ``F(0, t)`` to compare shapes.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return GridFunction.on(grid, ic(grid.x), 0.0)
    s = s or InitialCondition.zero()

    def khat(k):
        return telegrapher_kernel(k, t, ic.fourier(k), s.fourier(k))

    out = fourier_inverse(khat, grid, quad, time=t)
    if out.info["window"] > 1e3:
        warnings.warn("telegrapher kernel growth leaves an unresolved tail", TruncationWarning)
    return out


# -- diagnostics -------------------------------------------------------------

def _warn_edges(F: GridFunction, what: str, threshold: float = 1e-12):
    edge = max(abs(F.samples[0]), abs(F.samples[-1]))
    if edge > threshold:
        warnings.warn(
            f"{what}: edge value {edge:.2e} exceeds {threshold:g}; truncated-domain bias",
            TruncationWarning,
            stacklevel=3,
        )


def moments(F: GridFunction, order: int) -> float:
    """Trapezoidal ``int x**order F dx`` over the grid (``order <= 2``)."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    _warn_edges(F, "moments")
    x = F.x
    return float(trapezoid(x**order * F.samples, x))


def mass_mean_variance(F: GridFunction) -> tuple[float, float, float]:
    m0, m1, m2 = (moments(F, r) for r in range(3))
    mean = m1 / m0
    return m0, mean, m2 / m0 - mean * mean
