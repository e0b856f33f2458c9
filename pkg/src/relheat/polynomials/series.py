"""Truncated formal power series over an exact coefficient ring.

Coefficients may be Fractions or any exact polynomial type supporting ``+``,
``*`` and multiplication by Fractions (``RationalPoly``, ``BivariatePoly``); this
lets a generating function carry its ``sigma``/``x`` dependence symbolically.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .algebra import as_rational


def _zero_like(c):
    return c * 0


class FormalSeries:
    """``sum_{n=0}^{order} coeffs[n] * lam**n`` modulo ``lam**(order+1)``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        c = [as_rational(v) if isinstance(v, (int, float, str)) else v for v in coeffs]
        zero = _zero_like(c[0]) if c else Fraction(0)
        c = (c + [zero] * (order + 1))[: order + 1]
        self.coeffs = c
        self.order = order

    @classmethod
    def variable(cls, order: int, scale=1) -> "FormalSeries":
        """The series ``scale * lam``."""
        return cls([0, scale], order)

    @classmethod
    def one(cls, order: int) -> "FormalSeries":
        return cls([1], order)

    def _check(self, other):
        if not isinstance(other, FormalSeries):
            other = FormalSeries([other], self.order)
        return other, min(self.order, other.order)

    def __add__(self, other):
        other, n = self._check(other)
        return FormalSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], n)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = []
        for m in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[m]
            for i in range(1, m + 1):
                acc = acc + self.coeffs[i] * other.coeffs[m - i]
            out.append(acc)
        return FormalSeries(out, n)

    def __rmul__(self, other):
        return FormalSeries([other * c for c in self.coeffs], self.order)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def scale_variable(self, factor) -> "FormalSeries":
        """Substitute ``lam -> factor * lam``."""
        f = as_rational(factor)
        return FormalSeries([c * f**n for n, c in enumerate(self.coeffs)], self.order)

    def _require_no_constant(self, what: str):
        if self.coeffs[0] != 0:
            raise ValueError(f"{what} needs a series without constant term")

    def exp(self) -> "FormalSeries":
        """``exp(S)`` for ``S(0) = 0`` via ``E' = S' E``."""
        self._require_no_constant("exp")
        one = _zero_like(self.coeffs[0]) + 1
        e = [one]
        for n in range(1, self.order + 1):
            acc = _zero_like(one)
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * e[n - k] * k
            e.append(acc * Fraction(1, n))
        return FormalSeries(e, self.order)

    def binomial_power(self, p) -> "FormalSeries":
        """``(1 + S)**p`` for ``S(0) = 0`` and rational ``p``, by the binomial series."""
        self._require_no_constant("binomial_power")
        p = as_rational(p)
        one = _zero_like(self.coeffs[0]) + 1
        result = FormalSeries([one], self.order)
        power = FormalSeries([one], self.order)
        binom = Fraction(1)
        for j in range(1, self.order + 1):
            binom = binom * (p - j + 1) / j
            power = power * self
            result = result + power * binom
        return result

    def egf_values(self) -> list:
        """``n! * coeffs[n]``: the family a series generates exponentially."""
        return [c * math.factorial(n) for n, c in enumerate(self.coeffs)]

    def __repr__(self):
        return f"FormalSeries({self.coeffs!r}, order={self.order})"
