"""Adaptive integrator checks against closed-form integrals."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critrates.quadrature import (QuadratureConfig, adaptive_gk, euler_sum,
                                  panel_integrals)


def test_polynomial_exact():
    result = adaptive_gk(lambda x: x**2, 0.0, 1.0)
    assert result.converged
    assert result.value == pytest.approx(1.0 / 3.0, abs=1e-14)


def test_oscillatory_with_envelope():
    # int_0^20 cos(7x) exp(-x/3) dx, antiderivative in closed form
    k, a = 7.0, 1.0 / 3.0
    exact = (a + (np.exp(-a * 20.0)
                  * (k * np.sin(k * 20.0) - a * np.cos(k * 20.0)))) / (a * a + k * k)
    result = adaptive_gk(lambda x: np.cos(k * x) * np.exp(-a * x), 0.0, 20.0)
    assert abs(result.value - exact) <= max(result.error, 1e-12)


def test_complex_integrand():
    # int_0^1 exp(i pi x) dx = 2i / pi
    result = adaptive_gk(lambda x: np.exp(1j * np.pi * x), 0.0, 1.0)
    assert result.value == pytest.approx(2j / np.pi, abs=1e-13)


def test_integrable_kink_needs_subdivision():
    result = adaptive_gk(lambda x: np.sqrt(np.abs(x - 0.3)), 0.0, 1.0)
    exact = (0.3**1.5 + 0.7**1.5) / 1.5
    assert result.subdivisions > 0
    assert abs(result.value - exact) <= max(result.error, 1e-10)


def test_breakpoints_seed_panels():
    f = lambda x: np.where(x < 0.5, 1.0, 2.0)
    result = adaptive_gk(f, 0.0, 1.0, breakpoints=(0.5,))
    assert result.value == pytest.approx(1.5, abs=1e-14)
    # the jump sits on a panel edge, so the two seeded panels never split
    assert result.subdivisions == 2


def test_error_bound_is_conservative():
    rng = np.random.default_rng(7)
    for _ in range(20):
        k = rng.uniform(1.0, 40.0)
        result = adaptive_gk(lambda x: np.sin(k * x), 0.0, 1.0)
        exact = (1.0 - np.cos(k)) / k
        assert abs(result.value - exact) <= max(result.error, 1e-14)


def test_subdivision_exhaustion_reports_status():
    config = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-16,
                              max_subdivisions=2)
    result = adaptive_gk(lambda x: np.sqrt(np.abs(x - np.pi / 4)), 0.0, 1.0,
                        config)
    assert result.status == "max_subdivisions"
    assert not result.converged
    # the truncated estimate still honors its own error bar
    exact = ((np.pi / 4)**1.5 + (1.0 - np.pi / 4)**1.5) / 1.5
    assert abs(result.value - exact) <= result.error
    assert result.value == pytest.approx(exact, rel=1e-2)


def test_panel_integrals_partition():
    edges = np.array([0.0, 0.3, 0.31, 2.0, 6.0])
    f = lambda x: np.exp(-x) * np.cos(3.0 * x)
    values, errors, evaluations, subdivisions, status = panel_integrals(
        f, edges)
    assert status == "converged"
    whole = adaptive_gk(f, 0.0, 6.0)
    assert values.sum() == pytest.approx(whole.value, abs=1e-12)
    # each panel matches its own independent integral
    for lo, hi, val in zip(edges[:-1], edges[1:], values):
        assert adaptive_gk(f, lo, hi).value == pytest.approx(val, abs=1e-12)
    assert errors.shape == values.shape
    assert evaluations >= 15 * (edges.size - 1)
    assert subdivisions >= 0


def test_euler_sum_log2():
    terms = np.array([(-1.0)**k / (k + 1.0) for k in range(40)])
    value, error = euler_sum(terms)
    assert abs(value - np.log(2.0)) < 1e-12
    assert abs(value - np.log(2.0)) <= max(error, 1e-13)


def test_euler_sum_geometric():
    # sum (-0.7)^k = 1 / 1.7
    terms = (-0.7) ** np.arange(30)
    value, error = euler_sum(terms)
    assert abs(value - 1.0 / 1.7) < 1e-12


def test_euler_sum_empty_and_single():
    value, error = euler_sum(np.array([]))
    assert value == 0.0 and error == 0.0
    value, error = euler_sum(np.array([2.5]))
    assert value == pytest.approx(2.5)


@settings(max_examples=40, deadline=None)
@given(coeffs=st.lists(st.floats(-3.0, 3.0), min_size=1, max_size=8),
       width=st.floats(0.1, 5.0))
def test_polynomials_integrate_exactly(coeffs, width):
    """A single Kronrod panel is exact far beyond degree 7."""
    poly = np.polynomial.Polynomial(coeffs)
    result = adaptive_gk(poly, -width, width)
    exact = poly.integ()(width) - poly.integ()(-width)
    scale = 1.0 + abs(exact)
    assert abs(result.value - exact) < 1e-11 * scale
