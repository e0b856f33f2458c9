import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relheat.evolution import (
    BranchCutError,
    InitialCondition,
    SymbolSpec,
    TruncationWarning,
    evolve_gaussian_drift,
    evolve_gen_ab_gaussian,
    evolve_levy_convolution,
    evolve_monomial,
    evolve_relheat_gaussian,
    evolve_spectral,
    gauss_weierstrass,
    mass_mean_variance,
    moments,
    telegrapher_kernel,
    telegrapher_solve,
)
from relheat.grid import Grid, GridFunction
from relheat.polynomials import BivariatePoly, RationalPoly, drift_monomial, rhp, rnp
from relheat.quadrature import QuadratureSpec
from relheat.stable import StableIndex

GAUSS = InitialCondition.gaussian()
WINDOW = Grid(-8.0, 8.0, 81)
WIDE = Grid.with_spacing(-40.0, 40.0, 0.05)
DRIFT_WIDE = Grid.with_spacing(-70.0, 20.0, 0.05)


def gaussian(x):
    return np.exp(-x * x) / math.sqrt(math.pi)


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction(0.0, 1.0, 3, [1.0, 2.0])
    with pytest.raises(ValueError):
        Grid(1.0, 0.0, 5)


@pytest.mark.parametrize("solver", [
    lambda g: evolve_gaussian_drift(0.0, g),
    lambda g: evolve_relheat_gaussian(0.0, g),
    lambda g: evolve_gen_ab_gaussian(1.0, 1.0, 0.0, g),
    lambda g: evolve_levy_convolution(GAUSS, 0.0, SymbolSpec.rel_heat(), g),
    lambda g: evolve_spectral(GAUSS, 0.0, SymbolSpec.sqrt_drift(), g),
    lambda g: telegrapher_solve(GAUSS, None, 0.0, g),
])
def test_time_zero_is_identity(solver):
    np.testing.assert_array_equal(solver(WINDOW).samples, gaussian(WINDOW.x))


def test_small_time_approaches_initial_condition():
    # F(t) - g = O(t) as t -> 0
    diffs = [np.max(np.abs(evolve_levy_convolution(GAUSS, t, SymbolSpec.rel_heat(), WINDOW).samples
                           - gaussian(WINDOW.x))) for t in (1e-2, 1e-3, 1e-4)]
    assert diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] / 1e-4 == pytest.approx(diffs[1] / 1e-3, rel=0.05)


def test_monomial_examples():
    t = Fraction(3, 2)
    assert evolve_monomial(0, SymbolSpec.sqrt_drift()) == BivariatePoly({(0, 0): 1})
    assert evolve_monomial(1, SymbolSpec.sqrt_drift(), t) == RationalPoly([t, 1], "x")
    assert evolve_monomial(2, SymbolSpec.sqrt_drift()) == BivariatePoly({(2, 0): 1, (1, 1): 2, (0, 1): 1, (0, 2): 1})
    assert evolve_monomial(2, SymbolSpec.rel_heat()) == BivariatePoly({(2, 0): 1, (0, 1): 1})


@pytest.mark.parametrize("n", range(9))
def test_monomial_families(n):
    assert evolve_monomial(n, SymbolSpec.rel_heat()) == rhp(n)
    assert evolve_monomial(n, SymbolSpec.sqrt_drift()) == drift_monomial(n)
    assert evolve_monomial(n, SymbolSpec.gen_lk(StableIndex(1, 2), 1)) == rnp(n)
    assert evolve_monomial(n, SymbolSpec.gen_lk(StableIndex(1, 2), 2)) == rhp(n)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 8), st.fractions(-3, 3, max_denominator=10))
def test_rel_heat_monomial_evaluated_exactly(n, t):
    assert evolve_monomial(n, SymbolSpec.rel_heat(), t) == rhp(n).at(t=t)


@pytest.mark.parametrize("kind", ["sqrt_drift", "rel_heat"])
@pytest.mark.parametrize("n", [1, 3])
def test_monomial_numeric_route(kind, n):
    grid = Grid(-3.0, 3.0, 13)
    out = evolve_levy_convolution(InitialCondition.monomial(n), 1.5, SymbolSpec(kind), grid)
    exact = evolve_monomial(n, SymbolSpec(kind))(grid.x, 1.5)
    np.testing.assert_allclose(out.samples, exact, atol=1e-9)


def test_gen_ab_monomial_against_convolution():
    spec = SymbolSpec.gen_ab(0.5, 1.5)
    grid = Grid(-2.0, 2.0, 9)
    out = evolve_levy_convolution(InitialCondition.monomial(3), 1.0, spec, grid)
    np.testing.assert_allclose(out.samples, evolve_monomial(3, spec)(grid.x, 1.0), atol=1e-9)


def test_gauss_weierstrass_glaisher():
    for y in (0.1, 1.0, 3.0):
        out = gauss_weierstrass(GAUSS, y, WINDOW)
        s = 1.0 + 4.0 * y
        np.testing.assert_allclose(out.samples, np.exp(-WINDOW.x**2 / s) / math.sqrt(math.pi * s), atol=1e-13)


def test_gauss_weierstrass_monomial():
    out = gauss_weierstrass(InitialCondition.monomial(2), 0.7, WINDOW)
    np.testing.assert_allclose(out.samples, WINDOW.x**2 + 1.4, rtol=1e-12)


def test_gauss_weierstrass_small_y_and_validation():
    out = gauss_weierstrass(GAUSS, 1e-10, WINDOW)
    np.testing.assert_allclose(out.samples, gaussian(WINDOW.x), atol=1e-9)
    with pytest.raises(ValueError):
        gauss_weierstrass(GAUSS, 0.0, WINDOW)


def test_gauss_weierstrass_warns_on_truncated_table():
    table = GridFunction.on(Grid(-1.0, 1.0, 21), np.ones(21))
    with pytest.warns(TruncationWarning):
        gauss_weierstrass(table, 0.5, Grid(-1.0, 1.0, 5))


@pytest.mark.parametrize("kind", ["sqrt_drift", "rel_heat"])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_route_agreement(kind, t):
    a = evolve_levy_convolution(GAUSS, t, SymbolSpec(kind), WINDOW)
    b = evolve_spectral(GAUSS, t, SymbolSpec(kind), WINDOW)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-10


@pytest.mark.parametrize("l,k", [(1, 3), (2, 3)])
@pytest.mark.parametrize("mu", [1, 2])
def test_route_agreement_fractional(l, k, mu):
    spec = SymbolSpec.gen_lk(StableIndex(l, k), mu)
    a = evolve_levy_convolution(GAUSS, 1.0, spec, WINDOW)
    b = evolve_spectral(GAUSS, 1.0, spec, WINDOW)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-9


def test_closed_forms_match_convolution():
    t = 1.0
    a = evolve_gaussian_drift(t, WINDOW)
    b = evolve_levy_convolution(GAUSS, t, SymbolSpec.sqrt_drift(), WINDOW)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-12
    a = evolve_gen_ab_gaussian(0.7, 1.3, t, WINDOW)
    b = evolve_spectral(GAUSS, t, SymbolSpec.gen_ab(0.7, 1.3), WINDOW)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-10


def test_gen_ab_limit_is_drift():
    for alpha, tol in ((0.0, 1e-12), (1e-8, 1e-5)):
        a = evolve_gen_ab_gaussian(alpha, 2.0, 1.0, WINDOW)
        b = evolve_gaussian_drift(1.0, WINDOW)
        assert np.max(np.abs(a.samples - b.samples)) < tol


def test_gen_ab_with_unit_alpha_and_no_drift_is_rel_heat():
    a = evolve_gen_ab_gaussian(1.0, 0.0, 1.0, WINDOW)
    b = evolve_spectral(GAUSS, 1.0, SymbolSpec.rel_heat(), WINDOW)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-10


def test_moments_of_gaussian():
    f = GridFunction.on(WIDE, gaussian(WIDE.x))
    m0, mean, var = mass_mean_variance(f)
    assert m0 == pytest.approx(1.0, abs=1e-12)
    assert mean == pytest.approx(0.0, abs=1e-12)
    assert var == pytest.approx(0.5, abs=1e-12)


def test_moments_warn_on_edges():
    f = GridFunction.on(Grid(-1.0, 1.0, 11), np.ones(11))
    with pytest.warns(TruncationWarning):
        moments(f, 0)
    with pytest.raises(ValueError):
        moments(f, 3)


@pytest.mark.parametrize("t", [1.0, 2.0])
def test_cumulants(t):
    m0, mean, var = mass_mean_variance(evolve_gaussian_drift(t, DRIFT_WIDE))
    assert m0 == pytest.approx(1.0, abs=1e-6)
    assert mean == pytest.approx(-t, abs=1e-6)
    # sqrt(1 - 2ik) expansion: variance 1/2 + t
    assert var == pytest.approx(0.5 + t, abs=1e-6)
    m0, mean, var = mass_mean_variance(evolve_relheat_gaussian(t, WIDE))
    assert m0 == pytest.approx(1.0, abs=1e-6)
    assert mean == pytest.approx(0.0, abs=1e-12)
    assert var == pytest.approx(0.5 + t, abs=1e-6)


@pytest.mark.parametrize("spec,grid", [
    (SymbolSpec.gen_ab(1.0, 1.0), Grid.with_spacing(-60.0, 30.0, 0.05)),
    (SymbolSpec.gen_lk(StableIndex(1, 3), 2), WIDE),
    (SymbolSpec.gen_lk(StableIndex(2, 3), 1), Grid.with_spacing(-60.0, 20.0, 0.05)),
    (SymbolSpec.gen_lk(StableIndex(1, 2), 3), Grid.with_spacing(-60.0, 60.0, 0.05)),
])
def test_mass_conservation_other_kinds(spec, grid):
    for t in (1.0, 2.0):
        route = evolve_spectral if spec.mu == 3 else evolve_levy_convolution
        assert moments(route(GAUSS, t, spec, grid), 0) == pytest.approx(1.0, abs=1e-6)


def test_gen_ab_cumulants():
    # symbol 1 - sqrt(1 + alpha k^2 - i beta k): mean -beta t / 2, variance 1/2 + (alpha + beta^2/4) t
    alpha, beta, t = 1.0, 1.0, 1.0
    f = evolve_gen_ab_gaussian(alpha, beta, t, Grid.with_spacing(-60.0, 30.0, 0.05))
    _, mean, var = mass_mean_variance(f)
    assert mean == pytest.approx(-beta * t / 2, abs=1e-6)
    assert var == pytest.approx(0.5 + (alpha + beta**2 / 4) * t, abs=1e-6)


def test_semigroup_spectral():
    spec = SymbolSpec.rel_heat()
    half = evolve_spectral(GAUSS, 0.5, spec, WIDE)
    twice = evolve_spectral(InitialCondition.tabulated(half), 0.5, spec, WINDOW)
    once = evolve_spectral(GAUSS, 1.0, spec, WINDOW)
    assert np.max(np.abs(twice.samples - once.samples)) < 1e-6


def test_tabulated_convolution_route():
    # piecewise-linear interpolation limits accuracy to O(h^2)
    fine = Grid.with_spacing(-12.0, 12.0, 0.01)
    table = GridFunction.on(fine, gaussian(fine.x))
    quad = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-8)
    a = evolve_levy_convolution(InitialCondition.tabulated(table), 1.0, SymbolSpec.rel_heat(), WINDOW, quad)
    b = evolve_relheat_gaussian(1.0, WINDOW)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-5


def test_branch_cut_and_unsupported_mu():
    with pytest.raises(BranchCutError):
        evolve_spectral(GAUSS, 1.0, SymbolSpec.gen_lk(StableIndex(1, 2), 4), WINDOW)
    with pytest.raises(ValueError, match="mu"):
        evolve_levy_convolution(GAUSS, 1.0, SymbolSpec.gen_lk(StableIndex(1, 3), 3), WINDOW)
    with pytest.raises(ValueError):
        SymbolSpec("heat")


def test_monomial_has_no_fourier_transform():
    with pytest.raises(ValueError):
        evolve_spectral(InitialCondition.monomial(2), 1.0, SymbolSpec.rel_heat(), WINDOW)


def test_symbol_vanishes_at_zero():
    for spec in (SymbolSpec.sqrt_drift(), SymbolSpec.rel_heat(), SymbolSpec.gen_ab(2.0, 0.5),
                 SymbolSpec.gen_lk(StableIndex(2, 3), 1)):
        assert spec.symbol(np.array([0.0]))[0] == 0


@pytest.mark.parametrize("t", [1.0, 2.0])
def test_telegrapher_mass(t):
    f = telegrapher_solve(GAUSS, None, t, WIDE)
    assert moments(f, 0) == pytest.approx(1.0, abs=1e-6)


def test_telegrapher_contains_rel_heat():
    # with initial velocity (1 - sqrt(1 + k^2)) g, the telegrapher flow is the relativistic heat flow
    k = np.linspace(-10.0, 10.0, 201)
    g = np.exp(-k * k / 4.0)
    rate = 1.0 - np.sqrt(1.0 + k * k)
    for t in (0.5, 1.5):
        np.testing.assert_allclose(telegrapher_kernel(k, t, g, rate * g), np.exp(t * rate) * g, atol=1e-13)


def test_concurrent_evaluation_matches_sequential():
    from concurrent.futures import ThreadPoolExecutor

    grids = [Grid(-4.0, 0.0, 21), Grid(0.0, 4.0, 21)]
    with ThreadPoolExecutor(2) as pool:
        parts = list(pool.map(lambda g: evolve_relheat_gaussian(1.0, g).samples, grids))
    whole = [evolve_relheat_gaussian(1.0, g).samples for g in grids]
    for a, b in zip(parts, whole):
        np.testing.assert_array_equal(a, b)
