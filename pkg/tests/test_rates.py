"""Emitter rates: free-space anchors, mirror limits, thermal scaling."""

import numpy as np
import pytest

from critrates.quadrature import QuadratureConfig
from critrates.rates import (angular_frequency, bose_occupation,
                             collective_rates, decoherence_rates,
                             symmetric_decay_rate, thermal_decoherence_rates,
                             thermal_factor)

SPEED_OF_LIGHT = 299792458.0


def test_vacuum_dephasing_anchors():
    # no interface: the ratio is 1 - sinc of the separation phase
    for x, expected in ((0.7, 1.2162362081830449), (0.1, 0.0645107163)):
        rates = decoherence_rates(1.0, x, 0.3)
        u = 2 * np.pi * x
        assert rates.local_rate == pytest.approx(1.0, abs=1e-12)
        assert rates.nonlocal_rate == pytest.approx(-np.sin(u) / u, abs=1e-12)
        assert rates.ratio == pytest.approx(expected, abs=1e-9)
        assert rates.total == pytest.approx(rates.local_rate
                                            + rates.nonlocal_rate)


def test_vacuum_collective_anchor():
    rates = collective_rates(1.0, 0.1, 0.3)
    assert rates.incoherent == pytest.approx(1.0, abs=1e-12)
    assert rates.coherent == pytest.approx(0.9226968484, abs=1e-9)
    assert rates.ratio == pytest.approx(1.9226968484, abs=1e-9)


def test_coincident_emitters_superradiate():
    rates = collective_rates(1.0, 0.0, 0.3)
    assert rates.ratio == pytest.approx(2.0, abs=1e-12)


def test_absorption_suppresses_dephasing_at_contact():
    # near a strongly lossy surface the local rate is quench-dominated
    # and the nonlocal correction becomes negligible: ratio -> 1
    eps = 100.0 + 300.0j
    near = decoherence_rates(eps, 0.7, 1e-3)
    far = decoherence_rates(eps, 0.7, 0.25)
    assert abs(near.ratio - 1.0) < 1e-3
    assert abs(far.ratio - 1.0) > 0.1
    assert near.local_rate > 100.0 * far.local_rate


def test_error_fields_bound_tolerance_change():
    eps = -8.0 + 3.0j
    loose = decoherence_rates(eps, 0.4, 0.05, QuadratureConfig(rel_tol=1e-6))
    tight = decoherence_rates(eps, 0.4, 0.05, QuadratureConfig(rel_tol=1e-12))
    assert abs(loose.local_rate - tight.local_rate) <= loose.local_error
    assert abs(loose.nonlocal_rate
               - tight.nonlocal_rate) <= loose.nonlocal_error
    assert loose.evaluations > 0
    assert tight.evaluations > loose.evaluations


def test_geometry_validation():
    with pytest.raises(ValueError):
        decoherence_rates(2.0, -0.1, 0.5)
    with pytest.raises(ValueError):
        collective_rates(2.0, 0.1, 0.0)


def test_angular_frequency_inverts_wavelength():
    omega = angular_frequency(450.0)
    assert omega * 450e-6 / (2 * np.pi) == pytest.approx(SPEED_OF_LIGHT)
    with pytest.raises(ValueError):
        angular_frequency(0.0)


def test_thermal_occupation():
    omega = angular_frequency(450.0)
    n = bose_occupation(omega, 342.0)
    assert thermal_factor(n) == pytest.approx(21.4, abs=0.1)
    assert bose_occupation(omega, 0.0) == 0.0
    with pytest.raises(ValueError):
        bose_occupation(omega, -1.0)
    # classical limit: n ~ kT / (hbar w)
    hot = bose_occupation(omega, 3420.0)
    assert hot == pytest.approx(10.0 * (n + 0.5) - 0.5, rel=2e-3)


def test_thermal_scaling_preserves_ratio():
    rates = decoherence_rates(-6.0 + 2.0j, 0.7, 0.05)
    warmed = thermal_decoherence_rates(rates, 10.2)
    assert warmed.local_rate == pytest.approx(11.2 * rates.local_rate)
    assert warmed.nonlocal_rate == pytest.approx(11.2 * rates.nonlocal_rate)
    assert warmed.ratio == rates.ratio


def test_symmetric_state_decay_rate():
    rates = collective_rates(1.0, 0.0, 0.3)
    n = 10.2
    assert symmetric_decay_rate(rates, n) == pytest.approx(
        2.0 * (2.0 * n + 1.0), abs=1e-9)
    assert symmetric_decay_rate(rates) == pytest.approx(2.0, abs=1e-10)
