"""Reflection coefficients and scattered-field rate integrals.

The mirror limit (|eps| -> infinity) has closed-form image-dipole
answers; they anchor every integral here.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critrates.greens import (coherent_free, coherent_scattered, fresnel_te,
                              fresnel_tm, plasmon_pole_index,
                              purcell_scattered, sqrt_upper_half, trace_free,
                              trace_scattered)

MIRROR_EPS = 1e12


def spherical_a(x):
    return np.sin(x) / x + np.cos(x) / x**2 - np.sin(x) / x**3


def spherical_b(x):
    return -np.sin(x) / x - 3.0 * np.cos(x) / x**2 + 3.0 * np.sin(x) / x**3


def test_sqrt_stays_in_upper_half_plane():
    rng = np.random.default_rng(3)
    values = rng.normal(size=50) + 1j * rng.normal(size=50)
    roots = sqrt_upper_half(values)
    assert np.all(roots.imag >= 0.0)
    assert np.allclose(roots**2, values)
    assert sqrt_upper_half(-4.0) == pytest.approx(2j)


def test_normal_incidence_amplitudes():
    eps = 2.25
    n = 1.5
    assert fresnel_te(eps, 0.0) == pytest.approx((1 - n) / (1 + n))
    assert abs(fresnel_tm(eps, 0.0)) == pytest.approx((n - 1) / (n + 1))


def test_polarizing_angle_kills_tm():
    eps = 2.25
    s = np.sqrt(eps / (eps + 1.0))
    assert abs(fresnel_tm(eps, s)) < 1e-14
    assert abs(fresnel_te(eps, s)) > 0.1


def test_mirror_limit_amplitudes():
    assert fresnel_te(MIRROR_EPS, 0.6) == pytest.approx(-1.0, abs=1e-5)
    assert fresnel_tm(MIRROR_EPS, 0.6) == pytest.approx(1.0, abs=1e-5)


def test_grazing_incidence():
    assert fresnel_te(2.25, 1.0) == pytest.approx(-1.0)


@settings(max_examples=80, deadline=None)
@given(re=st.floats(-80.0, 80.0), im=st.floats(0.0, 80.0),
       s=st.floats(0.0, 1.0))
def test_te_reflection_is_passive(re, im, s):
    assert abs(fresnel_te(complex(re, im), s)) <= 1.0 + 1e-12


@settings(max_examples=80, deadline=None)
@given(eps=st.floats(1.001, 80.0), s=st.floats(0.0, 1.0))
def test_tm_reflection_is_passive_for_dielectrics(eps, s):
    assert abs(fresnel_tm(eps, s)) <= 1.0 + 1e-12


def test_no_contrast_has_no_reflection_anywhere():
    assert fresnel_te(1.0, 1.0) == 0.0
    assert fresnel_tm(1.0, 1.0) == 0.0


def test_surface_mode_location():
    assert plasmon_pole_index(-2.0) == pytest.approx(np.sqrt(2.0))
    assert plasmon_pole_index(2.0) is None
    assert plasmon_pole_index(-0.5) is None


def test_free_space_spectra():
    assert trace_free(0.0) == pytest.approx(1.0)
    assert trace_free(np.pi) == pytest.approx(0.0, abs=1e-15)
    assert coherent_free(0.0) == pytest.approx(1.0)
    assert coherent_free(2 * np.pi * 0.1) == pytest.approx(
        0.9226968484, abs=1e-9)
    # series branch against a high-precision evaluation; the double
    # precision closed form loses digits to cancellation at small u
    import mpmath

    with mpmath.workdps(50):
        u = mpmath.mpf("0.009")
        reference = float(1.5 * (mpmath.sin(u) / u + mpmath.cos(u) / u**2
                                 - mpmath.sin(u) / u**3))
    assert coherent_free(0.009) == pytest.approx(reference, abs=1e-14)


def test_geometry_validation():
    with pytest.raises(ValueError):
        trace_scattered(-0.1, 0.5, 2.0)
    with pytest.raises(ValueError):
        purcell_scattered(0.0, 2.0)


def test_vacuum_interface_scatters_nothing():
    result = trace_scattered(1.3, 0.7, 1.0)
    assert abs(result.value) < 1e-12


@pytest.mark.parametrize("x", [0.0, 0.1, 0.7])
def test_mirror_trace_matches_image_dipole(x):
    u = 2 * np.pi * x
    zeta = 2 * np.pi * 0.1
    v = 2.0 * zeta
    d = np.hypot(u, v)
    expected = -0.5 * (spherical_a(d)
                       + spherical_b(d) * (u * u - v * v) / d**2)
    result = trace_scattered(u, zeta, MIRROR_EPS)
    assert result.value.imag == pytest.approx(expected, abs=1e-5)


def test_mirror_enhances_vertical_dipole():
    zeta = 2 * np.pi * 0.1
    v = 2.0 * zeta
    expected = 3.0 * (np.sin(v) / v**3 - np.cos(v) / v**2)
    result = purcell_scattered(zeta, MIRROR_EPS)
    assert result.value == pytest.approx(expected, abs=1e-5)
    assert 1.0 + result.value == pytest.approx(1.8507365, abs=1e-4)


def test_mirror_cross_rate():
    u = 2 * np.pi * 0.1
    zeta = 2 * np.pi * 0.1
    v = 2.0 * zeta
    d = np.hypot(u, v)
    expected = 1.5 * (spherical_a(d) + spherical_b(d) * v * v / d**2)
    result = coherent_scattered(u, zeta, MIRROR_EPS)
    assert result.value == pytest.approx(expected, abs=1e-5)


def test_reported_error_bounds_hold():
    from critrates.quadrature import QuadratureConfig

    eps = -6.0 + 2.0j
    loose = QuadratureConfig(rel_tol=1e-6)
    tight = QuadratureConfig(rel_tol=1e-12)
    for u, zeta in ((0.0, 0.3), (4.4, 0.9)):
        coarse = trace_scattered(u, zeta, eps, loose)
        fine = trace_scattered(u, zeta, eps, tight)
        assert abs(coarse.value - fine.value) <= coarse.error
        assert coarse.evaluations > 0


def test_lossy_medium_quenches_at_small_height():
    eps = -5.0 + 1.0j
    near = trace_scattered(0.0, 0.02, eps).value.imag
    far = trace_scattered(0.0, 1.0, eps).value.imag
    assert near > 100.0 * max(far, 1.0)


def test_exhausted_budget_raises_with_best_estimate():
    from critrates.quadrature import QuadratureConfig, QuadratureError

    tiny = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-30,
                            max_subdivisions=2)
    with pytest.raises(QuadratureError) as excinfo:
        trace_scattered(4.4, 0.05, -6.0 + 2.0j, tiny)
    best = excinfo.value.result
    assert best.status == "max_subdivisions"
    reference = trace_scattered(4.4, 0.05, -6.0 + 2.0j)
    assert abs(best.value - reference.value) <= best.error
