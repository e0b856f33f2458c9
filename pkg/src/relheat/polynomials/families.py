"""Exact constructions of the Bessel-Carlitz family and its relatives.

Notation: ``B_n(t)`` are the Bessel-Carlitz polynomials with exponential
generating function ``exp(t (1 - sqrt(1 - 2 lam)))``.  The relativistic Newton
and heat polynomials are obtained from ``x**n`` by the umbral rule
``b**s -> B_s(t)`` applied to ``(x + b/2)**n`` and ``H_n(x, b/2)`` respectively.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..stable import StableIndex
from .algebra import BivariatePoly, RationalPoly, as_rational
from .series import FormalSeries

SIGMA = "sigma"


@lru_cache(maxsize=None)
def bessel_carlitz(n: int) -> RationalPoly:
    """``B_n(t) = sum_{k=1}^n (2n-k-1)! / ((k-1)! (n-k)!) t**k / 2**(n-k)``; ``B_0 = 1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return RationalPoly([1], "t")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        num = math.factorial(2 * n - k - 1)
        den = math.factorial(k - 1) * math.factorial(n - k) * 2 ** (n - k)
        coeffs[k] = Fraction(num, den)
    return RationalPoly(coeffs, "t")


@lru_cache(maxsize=None)
def hkdf(n: int) -> BivariatePoly:
    """Two-variable Hermite polynomial ``H_n(x, y) = n! sum_r x**(n-2r) y**r / ((n-2r)! r!)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    terms = {}
    for r in range(n // 2 + 1):
        terms[(n - 2 * r, r)] = Fraction(
            math.factorial(n), math.factorial(n - 2 * r) * math.factorial(r)
        )
    return BivariatePoly(terms, ("x", "y"))


def _umbral(n_terms):
    # sum of x-monomials times t-polynomials, as one bivariate polynomial
    out = BivariatePoly({}, ("x", "t"))
    for x_power, coeff, t_poly in n_terms:
        for j, c in enumerate(t_poly.coeffs):
            if c:
                out = out + BivariatePoly({(x_power, j): coeff * c})
    return out


@lru_cache(maxsize=None)
def rnp(n: int) -> BivariatePoly:
    """Relativistic Newton polynomial ``sum_s C(n,s) x**(n-s) B_s(t) / 2**s``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _umbral(
        (n - s, Fraction(math.comb(n, s), 2**s), bessel_carlitz(s)) for s in range(n + 1)
    )


@lru_cache(maxsize=None)
def rhp(n: int) -> BivariatePoly:
    """Relativistic heat polynomial ``n! sum_r x**(n-2r) B_r(t) / ((n-2r)! r! 2**r)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _umbral(
        (
            (n - 2 * r,
             Fraction(math.factorial(n), math.factorial(n - 2 * r) * math.factorial(r) * 2**r),
             bessel_carlitz(r))
            for r in range(n // 2 + 1)
        )
    )


@lru_cache(maxsize=None)
def drift_monomial(n: int) -> BivariatePoly:
    """``exp(t (1 - sqrt(1 - 2 d/dx))) x**n = sum_k C(n,k) x**(n-k) B_k(t)``."""
    return _umbral(((n - k, Fraction(math.comb(n, k)), bessel_carlitz(k)) for k in range(n + 1)))


# -- generating functions -------------------------------------------------

def _exp_sigma(inner: FormalSeries) -> FormalSeries:
    """``exp(sigma * inner)`` with coefficients polynomial in sigma."""
    lifted = FormalSeries([RationalPoly([0, c], SIGMA) for c in inner.coeffs], inner.order)
    return lifted.exp()


@lru_cache(maxsize=None)
def _gen_ab_series(order: int, alpha: Fraction, beta: Fraction) -> FormalSeries:
    w = FormalSeries([0, beta, alpha], order)
    root = (-w).binomial_power(Fraction(1, 2))
    return _exp_sigma(1 - root)


@lru_cache(maxsize=None)
def _gen_lk_series(order: int, idx: StableIndex) -> FormalSeries:
    ratio = Fraction(idx.k, idx.l)
    root = FormalSeries([0, -ratio], order).binomial_power(idx.fraction)
    return _exp_sigma(1 - root)


def gen_bessel_ab(n: int, alpha, beta) -> RationalPoly:
    """Generalised Bessel polynomial: ``n!`` times the ``lam**n`` coefficient of
    ``exp(sigma (1 - sqrt(1 - alpha lam**2 - beta lam)))``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    series = _gen_ab_series(n, as_rational(alpha), as_rational(beta))
    return series.coeffs[n] * math.factorial(n)


def gen_bessel_lk(n: int, idx: StableIndex) -> RationalPoly:
    """``B^{(l,k)}_n(sigma)``: ``n!`` times the ``lam**n`` coefficient of
    ``exp(sigma (1 - (1 - (k/l) lam)**(l/k)))``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _gen_lk_series(n, idx).coeffs[n] * math.factorial(n)


def egf_series(family: str, order: int, *, alpha=None, beta=None,
               idx: StableIndex | None = None) -> FormalSeries:
    """Truncated exponential generating function of a family.

    ``family`` is one of ``"bessel"`` (coefficients in sigma), ``"rnp"`` and
    ``"rhp"`` (coefficients bivariate in x and sigma), ``"gen_ab"`` (needs
    ``alpha``, ``beta``) or ``"gen_lk"`` (needs ``idx``).
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if family == "bessel":
        return _gen_ab_series(order, Fraction(0), Fraction(2))
    if family == "gen_ab":
        if alpha is None or beta is None:
            raise ValueError("gen_ab needs alpha and beta")
        return _gen_ab_series(order, as_rational(alpha), as_rational(beta))
    if family == "gen_lk":
        if idx is None:
            raise ValueError("gen_lk needs idx")
        return _gen_lk_series(order, idx)
    if family in ("rnp", "rhp"):
        vars_ = ("x", SIGMA)
        e_ux = FormalSeries(
            [BivariatePoly({(n, 0): Fraction(1, math.factorial(n))}, vars_) for n in range(order + 1)],
            order,
        )
        if family == "rnp":
            inner = _gen_ab_series(order, Fraction(0), Fraction(1))
        else:
            inner = _gen_ab_series(order, Fraction(1), Fraction(0))
        lifted = FormalSeries(
            [BivariatePoly({(0, j): c for j, c in enumerate(p.coeffs)}, vars_) for p in inner.coeffs],
            order,
        )
        return e_ux * lifted
    raise ValueError(f"unknown family {family!r}")


# -- identity residuals ---------------------------------------------------

def pde_residual(family: str, n: int) -> BivariatePoly:
    """``-d_t^2 P + 2 d_t P - d_x^m P`` with ``m = 1`` for ``"rnp"``, ``m = 2`` for ``"rhp"``."""
    if family == "rnp":
        p, m = rnp(n), 1
    elif family == "rhp":
        p, m = rhp(n), 2
    else:
        raise ValueError(f"family must be 'rnp' or 'rhp', got {family!r}")
    return -p.diff("t", 2) + p.diff("t") * 2 - p.diff("x", m)


def lowering_check(n: int) -> BivariatePoly:
    """``d_x RN_n - n RN_{n-1}``; identically zero."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return rnp(n).diff("x") - rnp(n - 1) * n


def recurrence_check(n: int) -> RationalPoly:
    """``B_n'' - 2 B_n' + 2 n B_{n-1}``; identically zero."""
    if n < 1:
        raise ValueError("n must be >= 1")
    b = bessel_carlitz(n)
    return b.deriv(2) - b.deriv() * 2 + bessel_carlitz(n - 1) * (2 * n)


# -- classical Hermite link -----------------------------------------------

def hermite_h(n: int, z):
    """Physicists' Hermite polynomial by ``H_{m+1} = 2 z H_m - 2 m H_{m-1}``."""
    h_prev, h = 1.0 + 0 * z, 2.0 * z
    if n == 0:
        return h_prev
    for m in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * m * h_prev
    return h


def hkdf_via_hermite(n: int, x, y):
    """``(-i)**n y**(n/2) H_n(i x / (2 sqrt(y)))`` for ``y > 0``."""
    root = complex(y) ** 0.5
    return (-1j) ** n * root**n * hermite_h(n, 1j * x / (2 * root))
