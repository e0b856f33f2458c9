"""Named invariant suites shared by the command line and the test-suite.

Each suite returns a list of :class:`Check` records; a suite passes when every
check does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import dirac, evolution, expansion
from .grid import Grid
from .polynomials import (
    bessel_carlitz,
    bessel_moment,
    egf_series,
    gen_bessel_ab,
    gen_bessel_ab_integral,
    gen_bessel_lk,
    lowering_check,
    moment_lk,
    pde_residual,
    recurrence_check,
    rhp,
    rnp,
    rodrigues_lk,
)
from .stable import LEVY_SMIRNOV, StableIndex, stable_laplace

INDICES = (StableIndex(1, 2), StableIndex(1, 3), StableIndex(2, 3), StableIndex(3, 4))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _close(name, value, expected, tol, relative=False):
    scale = max(1.0, abs(expected)) if relative else 1.0
    err = abs(value - expected)
    return Check(name, bool(err <= tol * scale), f"|diff|={err:.2e}")


def polynomial_suite(n_max: int = 30) -> list[Check]:
    """Exact identities: recurrence, lowering, PDEs, EGF/Rodrigues/explicit agreement."""
    checks = []
    bessel_egf = egf_series("bessel", n_max).egf_values()
    rnp_egf = egf_series("rnp", n_max).egf_values()
    rhp_egf = egf_series("rhp", n_max).egf_values()
    bad = {key: [] for key in ("recurrence", "lowering", "pde_rnp", "pde_rhp", "lk_half",
                               "egf_bessel", "egf_rnp", "egf_rhp", "rodrigues")}
    for n in range(n_max + 1):
        b = bessel_carlitz(n)
        if n >= 1:
            if not recurrence_check(n).is_zero():
                bad["recurrence"].append(n)
            if not lowering_check(n).is_zero():
                bad["lowering"].append(n)
        if not pde_residual("rnp", n).is_zero():
            bad["pde_rnp"].append(n)
        if not pde_residual("rhp", n).is_zero():
            bad["pde_rhp"].append(n)
        if gen_bessel_lk(n, LEVY_SMIRNOV).coeffs != b.coeffs:
            bad["lk_half"].append(n)
        if bessel_egf[n].coeffs != b.coeffs:
            bad["egf_bessel"].append(n)
        if rnp_egf[n] != rnp(n):
            bad["egf_rnp"].append(n)
        if rhp_egf[n] != rhp(n):
            bad["egf_rhp"].append(n)
        for idx in INDICES:
            if rodrigues_lk(n, idx).coeffs != gen_bessel_lk(n, idx).coeffs:
                bad["rodrigues"].append((n, str(idx)))
    labels = {
        "recurrence": "B_n'' - 2 B_n' + 2n B_{n-1} = 0",
        "lowering": "d_x RN_n = n RN_{n-1}",
        "pde_rnp": "(-d_t^2 + 2 d_t) RN_n = d_x RN_n",
        "pde_rhp": "(-d_t^2 + 2 d_t) RH_n = d_x^2 RH_n",
        "lk_half": "B^(1,2)_n = B_n",
        "egf_bessel": "EGF coefficients = explicit B_n",
        "egf_rnp": "EGF coefficients = umbral RN_n",
        "egf_rhp": "EGF coefficients = umbral RH_n",
        "rodrigues": "Rodrigues = EGF for (l,k) in " + ", ".join(map(str, INDICES)),
    }
    for key, label in labels.items():
        checks.append(Check(f"{label}, n <= {n_max}", not bad[key], f"failures: {bad[key][:5]}" if bad[key] else ""))
    return checks


def stable_suite() -> list[Check]:
    """Laplace transforms of the one-sided stable densities."""
    checks = []
    for p in (0.5, 1.0, 2.0, 4.0):
        checks.append(_close(f"Laplace (1,2) at p={p}", stable_laplace(LEVY_SMIRNOV, p),
                             math.exp(-math.sqrt(p)), 1e-8))
    for idx in (StableIndex(1, 3), StableIndex(2, 3)):
        for p in (0.5, 1.0, 2.0, 4.0):
            checks.append(_close(f"Laplace {idx} at p={p}", stable_laplace(idx, p),
                                 math.exp(-p**idx.alpha), 1e-6))
    return checks


MOMENT_POINTS = {
    "bessel": [(1, 0.5), (2, 1.0), (3, 2.0), (5, 1.5), (8, 3.0)],
    "gen_ab": [(1, 1.0, 3.0, 2.0), (2, 1.0, 1.0, 1.0), (3, 0.5, 2.0, 1.5), (4, 2.0, 0.5, 0.75), (6, 1.0, 1.0, 2.5)],
    "lk": [(1, (1, 3), 2.0), (2, (1, 3), 1.0), (3, (2, 3), 1.5), (2, (3, 4), 0.5), (4, (1, 2), 2.0)],
}


def moment_suite(tol: float = 1e-8) -> list[Check]:
    """Integral routes against exact polynomials (relative tolerance for values above one)."""
    checks = []
    for n, t in MOMENT_POINTS["bessel"]:
        checks.append(_close(f"bessel_moment n={n} t={t}", bessel_moment(n, t),
                             float(bessel_carlitz(n)(Fraction(t))), tol, relative=True))
    for n, a, b, s in MOMENT_POINTS["gen_ab"]:
        checks.append(_close(f"gen_bessel_ab_integral n={n} alpha={a} beta={b} sigma={s}",
                             gen_bessel_ab_integral(n, a, b, s),
                             float(gen_bessel_ab(n, a, b)(Fraction(s))), tol, relative=True))
    for n, (l, k), s in MOMENT_POINTS["lk"]:
        idx = StableIndex(l, k)
        checks.append(_close(f"moment_lk n={n} idx={idx} sigma={s}", moment_lk(n, idx, s),
                             float(gen_bessel_lk(n, idx)(Fraction(s))), tol, relative=True))
    return checks


def evolution_suite() -> list[Check]:
    """Route agreement, conservation, cumulants and the semigroup property."""
    checks = []
    gaussian = evolution.InitialCondition.gaussian()
    window = Grid(-8.0, 8.0, 161)
    for kind in ("sqrt_drift", "rel_heat"):
        spec = evolution.SymbolSpec(kind)
        for t in (0.5, 1.0, 2.0):
            a = evolution.evolve_levy_convolution(gaussian, t, spec, window)
            b = evolution.evolve_spectral(gaussian, t, spec, window)
            err = float(np.max(np.abs(a.samples - b.samples)))
            checks.append(Check(f"convolution = spectral, {kind}, t={t}", err <= 1e-6, f"max diff {err:.2e}"))
    wide_drift = Grid.with_spacing(-70.0, 20.0, 0.05)
    wide = Grid.with_spacing(-40.0, 40.0, 0.05)
    for t in (1.0, 2.0):
        f = evolution.evolve_gaussian_drift(t, wide_drift)
        m0, mean, _ = evolution.mass_mean_variance(f)
        checks.append(_close(f"sqrt_drift mass t={t}", m0, 1.0, 1e-6))
        checks.append(_close(f"sqrt_drift mean t={t}", mean, -t, 1e-6))
        f = evolution.evolve_relheat_gaussian(t, wide)
        m0, _, var = evolution.mass_mean_variance(f)
        checks.append(_close(f"rel_heat mass t={t}", m0, 1.0, 1e-6))
        checks.append(_close(f"rel_heat variance t={t}", var, 0.5 + t, 1e-6))
    spec = evolution.SymbolSpec.rel_heat()
    half = evolution.evolve_spectral(gaussian, 0.5, spec, wide)
    twice = evolution.evolve_spectral(evolution.InitialCondition.tabulated(half), 0.5, spec, window)
    once = evolution.evolve_spectral(gaussian, 1.0, spec, window)
    err = float(np.max(np.abs(twice.samples - once.samples)))
    checks.append(Check("semigroup: two t=0.5 steps = one t=1 step", err <= 1e-6, f"max diff {err:.2e}"))
    return checks


def expansion_suite() -> list[Check]:
    """Round trip of RH_m through the coefficient integrals."""
    checks = []
    for y in (0.5, 1.0, 2.0):
        worst = 0.0
        for m in range(7):
            f = rhp(m).at(t=-Fraction(y))
            res = expansion.rhp_coefficients(f, y, 6)
            target = np.zeros(7)
            target[m] = 1.0
            worst = max(worst, float(np.max(np.abs(res.coefficients - target))))
        checks.append(Check(f"c_n(RH_m) = delta_nm, y={y}", worst <= 1e-6, f"max diff {worst:.2e}"))
    grid = Grid(-3.0, 3.0, 121)
    res = expansion.rhp_coefficients([0, 0, 0, 1], 1.0, 5)
    err = float(np.max(np.abs(expansion.reconstruct(res, grid).samples - grid.x**3)))
    checks.append(Check("x^3 reconstructed on [-3, 3]", err <= 1e-5, f"max diff {err:.2e}"))
    return checks


def dirac_suite() -> list[Check]:
    checks = [Check(name, ok) for name, ok in dirac.pauli_identities().items()]
    checks += [Check(name, ok) for name, ok in dirac.squared_identities().items()]
    err = dirac.eigenvalue_check(np.linspace(-10.0, 10.0, 41))
    checks.append(Check("eigenvalues 1 +/- sqrt(1 + k^2)", err <= 1e-12, f"max diff {err:.2e}"))
    res = dirac.telegrapher_fd_residual()
    worst = max(res.values())
    checks.append(Check("telegrapher residual, t=1, step 1/64", worst < 1e-4, f"max {worst:.2e}"))
    return checks


SUITES = {
    "polynomials": polynomial_suite,
    "stable": stable_suite,
    "moments": moment_suite,
    "evolution": evolution_suite,
    "expansion": expansion_suite,
    "dirac": dirac_suite,
}


def run_suite(name: str, n_max: int = 30) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if name == "polynomials":
        return polynomial_suite(n_max)
    return SUITES[name]()
