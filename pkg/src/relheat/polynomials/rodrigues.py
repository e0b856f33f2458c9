"""Rodrigues-type route to ``B^{(l,k)}_n``.

The operator ``sigma**(1 - k/l) d/dsigma`` is applied ``n`` times to ``exp(-sigma)``
symbolically.  Intermediates are finite sums of ``c * sigma**e * exp(-sigma)``
with rational (possibly fractional) exponents ``e``; after multiplying by
``(-sigma**(k/l))**n exp(sigma)`` only non-negative integer powers may remain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..stable import StableIndex
from .algebra import RationalPoly
from .families import SIGMA


class RodriguesStructureError(ArithmeticError):
    """A fractional or negative power survived the Rodrigues product."""


@dataclass(frozen=True, order=True)
class ExpPolyTerm:
    """``coefficient * sigma**exponent * exp(-sigma)``."""

    exponent: Fraction
    coefficient: Fraction


def _canonical(terms: dict[Fraction, Fraction]) -> tuple[ExpPolyTerm, ...]:
    return tuple(ExpPolyTerm(e, c) for e, c in sorted(terms.items()) if c != 0)


def derivation_step(terms: tuple[ExpPolyTerm, ...], shift: Fraction) -> tuple[ExpPolyTerm, ...]:
    """Apply ``sigma**shift d/dsigma`` to a sum of ``ExpPolyTerm``."""
    out: dict[Fraction, Fraction] = {}
    for term in terms:
        e, c = term.exponent, term.coefficient
        if e != 0:
            out[e - 1 + shift] = out.get(e - 1 + shift, 0) + c * e
        out[e + shift] = out.get(e + shift, 0) - c
    return _canonical(out)


@lru_cache(maxsize=None)
def rodrigues_terms(n: int, idx: StableIndex) -> tuple[ExpPolyTerm, ...]:
    """``(sigma**(1-k/l) d/dsigma)**n exp(-sigma)`` as canonical terms."""
    if n == 0:
        return (ExpPolyTerm(Fraction(0), Fraction(1)),)
    return derivation_step(rodrigues_terms(n - 1, idx), 1 - Fraction(idx.k, idx.l))


def rodrigues_lk(n: int, idx: StableIndex) -> RationalPoly:
    """``(-sigma**(k/l))**n exp(sigma) (sigma**(1-k/l) d/dsigma)**n exp(-sigma)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    lift = n * Fraction(idx.k, idx.l)
    sign = -1 if n % 2 else 1
    coeffs: dict[int, Fraction] = {}
    for term in rodrigues_terms(n, idx):
        e = term.exponent + lift
        if e.denominator != 1 or e < 0:
            raise RodriguesStructureError(f"power sigma^{e} survived for n={n}, idx={idx}")
        coeffs[int(e)] = sign * term.coefficient
    degree = max(coeffs, default=-1)
    return RationalPoly([coeffs.get(i, 0) for i in range(degree + 1)], SIGMA)
