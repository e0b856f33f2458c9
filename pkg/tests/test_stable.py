import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import kv

from relheat.quadrature import QuadratureSpec, integrate_semi_axis
from relheat.stable import (
    LEVY_SMIRNOV,
    SeriesControl,
    SeriesConvergenceError,
    StableIndex,
    integrable_density,
    levy_smirnov_pdf,
    negligible_below,
    stable_laplace,
    stable_pdf,
    stable_pdf_series,
)


def test_index_validation():
    with pytest.raises(ValueError):
        StableIndex(2, 4)
    with pytest.raises(ValueError):
        StableIndex(3, 2)
    with pytest.raises(TypeError):
        StableIndex(1.0, 2)
    assert StableIndex.parse("2/3") == StableIndex(2, 3)
    assert str(StableIndex(3, 4)) == "3/4"


def test_levy_smirnov_values():
    # e^{-1/4} / (2 sqrt(pi))
    assert levy_smirnov_pdf(1.0) == pytest.approx(0.21969564473386122, rel=1e-15)
    with pytest.raises(ValueError):
        levy_smirnov_pdf(0.0)


def test_series_matches_closed_form():
    u = np.geomspace(0.2, 50.0, 40)
    np.testing.assert_allclose(stable_pdf_series(LEVY_SMIRNOV, u), levy_smirnov_pdf(u), rtol=1e-12)


def test_one_third_against_bessel_k():
    # g_{1/3}(u) = u^{-3/2} K_{1/3}(2 / sqrt(27 u)) / (3 pi)
    u = np.geomspace(0.06, 40.0, 30)
    oracle = kv(1.0 / 3.0, 2.0 / np.sqrt(27.0 * u)) / (3.0 * math.pi) * u**-1.5
    np.testing.assert_allclose(stable_pdf(StableIndex(1, 3), u), oracle, rtol=1e-11)


def test_series_refuses_small_arguments():
    with pytest.raises(ValueError):
        stable_pdf_series(StableIndex(1, 3), 0.01)


def test_series_term_budget():
    with pytest.raises(SeriesConvergenceError):
        stable_pdf_series(StableIndex(2, 3), 0.06, SeriesControl(max_terms=10, min_argument=0.01))


def test_closed_method_only_at_one_half():
    with pytest.raises(ValueError):
        stable_pdf(StableIndex(1, 3), 1.0, method="closed")


def test_negligible_cutoff_values():
    assert negligible_below(LEVY_SMIRNOV) == pytest.approx(1.0 / 160.0)
    assert negligible_below(StableIndex(1, 3)) == pytest.approx(9.3e-5, rel=0.01)
    # the Lévy-Smirnov density is indeed tiny there
    assert levy_smirnov_pdf(1.0 / 160.0) < 1e-14


@pytest.mark.parametrize("idx", [StableIndex(1, 2), StableIndex(1, 3), StableIndex(2, 3), StableIndex(3, 4)])
def test_density_integrates_to_one(idx):
    value = stable_laplace(idx, 0.0)
    assert value == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("idx", [StableIndex(1, 3), StableIndex(3, 4)])
@pytest.mark.parametrize("p", [0.5, 2.0])
def test_laplace_transform(idx, p):
    value, err = stable_laplace(idx, p, with_error=True)
    assert value == pytest.approx(math.exp(-p**idx.alpha), abs=1e-9)
    assert err < 1e-8


def test_density_is_non_negative_and_vanishes_below_cutoff():
    g, lower = integrable_density(StableIndex(2, 3))
    u = np.concatenate([[lower / 2], np.geomspace(lower, 100.0, 200)])
    vals = g(u)
    assert vals[0] == 0.0
    assert np.all(vals >= -1e-15)


def test_first_moment_identity():
    # int kappa g_{1/2} e^{-kappa t^2} = e^{-t} / (2t)
    g, _ = integrable_density(LEVY_SMIRNOV)
    for t in (0.5, 2.0):
        v, _ = integrate_semi_axis(lambda u: u * g(u) * np.exp(-u * t * t), QuadratureSpec())
        assert v == pytest.approx(math.exp(-t) / (2 * t), rel=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.3, 30.0))
def test_positive_and_decreasing_tail(u):
    g = stable_pdf(StableIndex(1, 3), np.array([u, 1.5 * u]))
    assert g[0] > 0 and g[1] > 0
    if u > 1.0:
        assert g[1] < g[0]
