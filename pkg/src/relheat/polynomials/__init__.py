"""Exact polynomial families, their generating functions and moment routes."""

from .algebra import BivariatePoly, Rational, RationalPoly, as_rational
from .families import (
    bessel_carlitz,
    drift_monomial,
    egf_series,
    gen_bessel_ab,
    gen_bessel_lk,
    hermite_h,
    hkdf,
    hkdf_via_hermite,
    lowering_check,
    pde_residual,
    recurrence_check,
    rhp,
    rnp,
)
from .moments import bessel_moment, gen_bessel_ab_integral, moment_lk
from .rodrigues import ExpPolyTerm, RodriguesStructureError, rodrigues_lk
from .series import FormalSeries

__all__ = [
    "BivariatePoly", "ExpPolyTerm", "FormalSeries", "Rational", "RationalPoly",
    "RodriguesStructureError", "as_rational", "bessel_carlitz", "bessel_moment",
    "drift_monomial", "egf_series", "gen_bessel_ab", "gen_bessel_ab_integral",
    "gen_bessel_lk", "hermite_h", "hkdf", "hkdf_via_hermite", "lowering_check",
    "moment_lk", "pde_residual", "recurrence_check", "rhp", "rnp", "rodrigues_lk",
]
