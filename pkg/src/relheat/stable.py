"""One-sided Lévy stable densities ``g_{l/k}`` on ``(0, inf)``.

``g_{l/k}`` is characterised by its Laplace transform ``exp(-p**(l/k))``.  For
``l/k = 1/2`` (Lévy-Smirnov) the density has the closed form
``exp(-1/(4u)) / (2 sqrt(pi) u**1.5)``; for every ``0 < l/k < 1`` it is given by
the convergent inverse-power series

    g(u) = (1/pi) sum_{j>=1} (-1)**(j+1) Gamma(j a + 1) sin(j pi a) u**(-j a - 1) / j!

with ``a = l/k``.  Near ``u = 0`` the series cancels heavily; terms are formed
in log space, and when the largest term exceeds the result by more than a few
digits the sum is carried out in extended precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath
import numpy as np
from scipy.special import gammaln

from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_semi_axis

# Largest term magnitude (natural log) tolerated in double precision.
_FLOAT_LOG_LIMIT = math.log(1e4)
_INV_2SQRTPI = 0.5 / math.sqrt(math.pi)


class SeriesConvergenceError(ArithmeticError):
    """The inverse-power series did not reach tolerance within ``max_terms``."""


@dataclass(frozen=True)
class StableIndex:
    """Coprime pair ``(l, k)`` with ``0 < l < k``; the stability index is ``l/k``."""

    l: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.l, int) and isinstance(self.k, int)):
            raise TypeError("l and k must be integers")
        if not 0 < self.l < self.k:
            raise ValueError(f"need 0 < l < k, got ({self.l}, {self.k})")
        if math.gcd(self.l, self.k) != 1:
            raise ValueError(f"l and k must be coprime, got ({self.l}, {self.k})")

    @classmethod
    def parse(cls, text: str) -> "StableIndex":
        l, k = text.replace(",", "/").split("/")
        return cls(int(l), int(k))

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.l, self.k)

    @property
    def alpha(self) -> float:
        return self.l / self.k

    def __str__(self):
        return f"{self.l}/{self.k}"


LEVY_SMIRNOV = StableIndex(1, 2)


@dataclass(frozen=True)
class SeriesControl:
    max_terms: int = 5000
    abs_tol: float = 1e-16
    min_argument: float = 0.05

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.min_argument > 0:
            raise ValueError("min_argument must be positive")


DEFAULT_CONTROL = SeriesControl()


def levy_smirnov_pdf(kappa):
    """Lévy-Smirnov density ``exp(-1/(4 kappa)) / (2 sqrt(pi) kappa**1.5)``."""
    kappa = np.asarray(kappa, dtype=float)
    if np.any(kappa <= 0):
        raise ValueError("levy_smirnov_pdf is defined for kappa > 0 only")
    out = _INV_2SQRTPI * np.exp(-0.25 / kappa) * kappa**-1.5
    return out if out.ndim else float(out)


def negligible_below(idx: StableIndex, log_level: float = 40.0) -> float:
    """Argument below which ``g_{l/k}`` is smaller than about ``exp(-log_level)``.

    Uses the small-argument behaviour
    ``log g(u) ~ -(1-a) a**(a/(1-a)) u**(-a/(1-a))``.
    """
    a = idx.alpha
    c = (1 - a) * a ** (a / (1 - a))
    return (c / log_level) ** ((1 - a) / a)


def _sines(idx: StableIndex, j: np.ndarray) -> np.ndarray:
    # (-1)**(j+1) sin(j pi l / k), with the angle reduced exactly mod 2 pi
    reduced = (j * idx.l) % (2 * idx.k)
    s = np.sin(np.pi * reduced / idx.k)
    s[reduced % idx.k == 0] = 0.0
    return np.where(j % 2 == 1, s, -s)


def _term_count(idx, log_u_min, ctl):
    a = idx.alpha
    j = np.arange(1, ctl.max_terms + 1, dtype=float)
    logt = gammaln(j * a + 1) - gammaln(j + 1) - (j * a + 1) * log_u_min
    above = np.nonzero(logt >= math.log(ctl.abs_tol))[0]
    if above.size and above[-1] == ctl.max_terms - 1:
        raise SeriesConvergenceError(
            f"series for g_{idx} at u={math.exp(log_u_min):.3g} needs more than "
            f"{ctl.max_terms} terms"
        )
    return int(above[-1]) + 2 if above.size else 1


def _series_mp(idx: StableIndex, u: float, n_terms: int, log_max: float) -> float:
    dps = int(log_max / math.log(10)) + 25
    with mpmath.workdps(dps):
        a = mpmath.mpf(idx.l) / idx.k
        u = mpmath.mpf(u)
        ua = u ** (-a)
        power = 1 / u
        fact = mpmath.mpf(1)
        total = mpmath.mpf(0)
        for j in range(1, n_terms + 1):
            power *= ua
            fact *= j
            if (j * idx.l) % idx.k == 0:
                continue
            term = mpmath.gamma(j * a + 1) * mpmath.sinpi(mpmath.mpf(j * idx.l) / idx.k) * power / fact
            total += term if j % 2 else -term
        return float(total / mpmath.pi)


def stable_pdf_series(idx: StableIndex, u, ctl: SeriesControl = DEFAULT_CONTROL):
    """Inverse-power series for ``g_{l/k}(u)``; ``u`` may be a scalar or an array."""
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(u_arr < ctl.min_argument):
        raise ValueError(
            f"series route refused below min_argument={ctl.min_argument:g} "
            f"(smallest argument {u_arr.min():.3g})"
        )
    out = np.empty_like(u_arr)
    if u_arr.size == 0:
        return out
    log_u = np.log(u_arr)
    n_terms = _term_count(idx, log_u.min(), ctl)
    a = idx.alpha
    j = np.arange(1, n_terms + 1, dtype=float)
    base = gammaln(j * a + 1) - gammaln(j + 1)
    sines = _sines(idx, j.astype(np.int64))
    logt = base[None, :] - (j * a + 1)[None, :] * log_u[:, None]
    logt = np.where(sines[None, :] == 0, -np.inf, logt)
    log_max = logt.max(axis=1)
    fine = log_max <= _FLOAT_LOG_LIMIT
    out[fine] = (np.exp(logt[fine]) * sines[None, :]).sum(axis=1) / math.pi
    for i in np.nonzero(~fine)[0]:
        # fewer terms suffice at larger u
        n_i = _term_count(idx, log_u[i], ctl)
        out[i] = _series_mp(idx, u_arr[i], n_i, log_max[i])
    return out if np.ndim(u) else float(out[0])


def stable_pdf(idx: StableIndex, u, ctl: SeriesControl = DEFAULT_CONTROL, method: str = "auto"):
    """Density of the one-sided stable law with Laplace transform ``exp(-p**(l/k))``.

    ``method="auto"`` uses the closed form for ``l/k = 1/2`` and the series
    otherwise; ``"series"`` forces the series; ``"closed"`` is only valid at 1/2.
    """
    if method not in ("auto", "series", "closed"):
        raise ValueError(f"unknown method {method!r}")
    if idx == LEVY_SMIRNOV and method != "series":
        return levy_smirnov_pdf(u)
    if method == "closed":
        raise ValueError("closed form is available only for l/k = 1/2")
    return stable_pdf_series(idx, u, ctl)


def integrable_density(idx: StableIndex, log_level: float = 40.0):
    """Vectorised ``g_{l/k}`` suitable for quadrature nodes anywhere on ``(0, inf)``.

    Returns ``(density, lower)`` where ``density`` is exact above ``lower`` and
    zero below it, ``lower`` being where ``g`` has dropped under ``exp(-log_level)``.
    """
    if idx == LEVY_SMIRNOV:
        def density(u):
            u = np.asarray(u, dtype=float)
            out = np.zeros_like(u)
            pos = u > 0
            out[pos] = levy_smirnov_pdf(u[pos])
            return out
        return density, 0.0

    lower = negligible_below(idx, log_level)
    ctl = SeriesControl(min_argument=lower)

    def density(u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        keep = u >= lower
        if keep.any():
            out[keep] = stable_pdf_series(idx, u[keep], ctl)
        return out
    return density, lower


def tail_spec(idx: StableIndex, quad: QuadratureSpec) -> QuadratureSpec:
    """Spec whose rational map turns the ``u**(-1 - j l/k)`` tail into a smooth integrand."""
    if quad.mapping == "rational_map" and quad.map_power < idx.k:
        return replace(quad, map_power=idx.k)
    return quad


def stable_laplace(idx: StableIndex, p: float, quad: QuadratureSpec = DEFAULT_SPEC,
                   with_error: bool = False):
    """Numerical Laplace transform ``int_0^inf exp(-p u) g_{l/k}(u) du``.

    Should reproduce ``exp(-p**(l/k))``; the quadrature is independent of that
    closed form.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    density, lower = integrable_density(idx)
    spec = tail_spec(idx, quad) if p == 0 else quad

    def integrand(u):
        return np.exp(-p * u) * density(u)

    value, error = integrate_semi_axis(integrand, spec, lower)
    return (float(value), float(error)) if with_error else float(value)
