"""Exact polynomials with rational coefficients.

Coefficients are :class:`fractions.Fraction`; every operation is exact, so
identities between polynomial families are checked by equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping

Rational = Fraction


def as_rational(value) -> Fraction:
    """Exact conversion of ints, Fractions, decimal strings and floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction, _RationalABC))


class RationalPoly:
    """Univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        c = [as_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self.var = var

    @classmethod
    def monomial(cls, degree: int, coeff=1, var: str = "t") -> "RationalPoly":
        return cls([0] * degree + [coeff], var)

    @classmethod
    def constant(cls, value, var: str = "t") -> "RationalPoly":
        return cls([value], var)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        if _is_scalar(other):
            return RationalPoly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return RationalPoly([c * other for c in self.coeffs], self.var)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RationalPoly([1], self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if _is_scalar(other):
            other = RationalPoly([other], self.var)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def deriv(self, times: int = 1) -> "RationalPoly":
        c = list(self.coeffs)
        for _ in range(times):
            c = [i * c[i] for i in range(1, len(c))]
        return RationalPoly(c, self.var)

    def __call__(self, value):
        """Horner evaluation; exact for rational arguments, float/complex otherwise."""
        acc = 0
        if isinstance(value, (int, Fraction)):
            for c in reversed(self.coeffs):
                acc = acc * value + c
            return Fraction(acc)
        fc = [float(c) for c in self.coeffs]
        for c in reversed(fc):
            acc = acc * value + c
        return acc

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs] or ["0"]

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)


class BivariatePoly:
    """Polynomial in two variables stored as ``{(i, j): coeff}`` for ``x**i * t**j``."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping | None = None, vars: tuple[str, str] = ("x", "t")):
        clean = {}
        for key, c in (terms or {}).items():
            c = as_rational(c)
            if c != 0:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms: dict[tuple[int, int], Fraction] = clean
        self.vars = vars

    @classmethod
    def from_x_poly(cls, poly: RationalPoly, vars=("x", "t")) -> "BivariatePoly":
        return cls({(i, 0): c for i, c in enumerate(poly.coeffs)}, vars)

    @classmethod
    def from_t_poly(cls, poly: RationalPoly, vars=("x", "t")) -> "BivariatePoly":
        return cls({(0, j): c for j, c in enumerate(poly.coeffs)}, vars)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1, vars=("x", "t")) -> "BivariatePoly":
        return cls({(i, j): coeff}, vars)

    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other):
        if isinstance(other, BivariatePoly):
            return other
        if _is_scalar(other):
            return BivariatePoly({(0, 0): other}, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return BivariatePoly(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return BivariatePoly({k: c * other for k, c in self.terms.items()}, self.vars)
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return BivariatePoly(out, self.vars)

    __rmul__ = __mul__

    def __eq__(self, other):
        if _is_scalar(other):
            other = BivariatePoly({(0, 0): other}, self.vars)
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def diff(self, var: int | str, times: int = 1) -> "BivariatePoly":
        """Partial derivative; ``var`` is 0/1 or a variable name."""
        axis = self.vars.index(var) if isinstance(var, str) else var
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[axis]
            if e < times:
                continue
            f = c
            for m in range(times):
                f *= e - m
            key = (i - times, j) if axis == 0 else (i, j - times)
            out[key] = f
        return BivariatePoly(out, self.vars)

    def degree(self, var: int | str) -> int:
        axis = self.vars.index(var) if isinstance(var, str) else var
        return max((key[axis] for key in self.terms), default=-1)

    def at(self, x=None, t=None):
        """Substitute one or both variables.

        Fixing ``t`` yields a :class:`RationalPoly` in ``x`` (exact for rational
        ``t``); fixing ``x`` yields one in ``t``; fixing both yields a number.
        """
        if x is not None and t is not None:
            return self(x, t)
        if t is not None:
            t = as_rational(t)
            acc: dict[int, Fraction] = {}
            for (i, j), c in self.terms.items():
                acc[i] = acc.get(i, 0) + c * t**j
            n = max(acc, default=-1) + 1
            return RationalPoly([acc.get(i, 0) for i in range(n)], self.vars[0])
        if x is not None:
            x = as_rational(x)
            acc = {}
            for (i, j), c in self.terms.items():
                acc[j] = acc.get(j, 0) + c * x**i
            n = max(acc, default=-1) + 1
            return RationalPoly([acc.get(j, 0) for j in range(n)], self.vars[1])
        return self

    def __call__(self, x, t):
        """Evaluate; exact for rational arguments, numpy-broadcast otherwise."""
        if isinstance(x, (int, Fraction)) and isinstance(t, (int, Fraction)):
            return sum((c * Fraction(x) ** i * Fraction(t) ** j
                        for (i, j), c in self.terms.items()), Fraction(0))
        total = 0.0
        for (i, j), c in self.terms.items():
            total = total + float(c) * x**i * t**j
        return total

    def to_records(self) -> list[dict]:
        a, b = self.vars
        return [{a: i, b: j, "c": str(c)} for (i, j), c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        a, b = self.vars
        return " + ".join(f"({c})*{a}^{i}*{b}^{j}" for (i, j), c in sorted(self.terms.items()))
