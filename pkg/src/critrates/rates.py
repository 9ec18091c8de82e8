r"""Emission and dephasing rates for emitters above a planar medium.

Two observables built from the spectral integrals:

* Dephasing of a single emitter delocalized over two wave packets at
  lateral separation ``x``: the which-path coherence decays at
  :math:`\Gamma^{D} = \Gamma_L + \Gamma_{NL}`, where the local part
  collects emission from each packet separately and the nonlocal part
  the interference between them. Both are normalized to the free-space
  rate; the reported ratio :math:`\Gamma^{D} / \Gamma_L` equals
  :math:`1 - \sin u / u` in vacuum.
* Collective emission of two vertical dipoles at the same height: the
  symmetric state decays at the incoherent single-emitter rate plus
  the coherent cross rate; the reported ratio is the symmetric rate
  over the incoherent rate and spans 0 (subradiant) to 2
  (superradiant).

A thermal bath multiplies every downward rate by ``n + 1`` and every
upward rate by ``n``; the ratios are unchanged, while time constants
shrink by ``2n + 1``.

Geometry arguments are in units of the transition wavelength.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import c as _SPEED_OF_LIGHT
from scipy.constants import hbar as _HBAR
from scipy.constants import k as _BOLTZMANN

from .greens import (coherent_free, coherent_scattered, purcell_scattered,
                     trace_free, trace_scattered)
from .quadrature import QuadratureConfig

__all__ = [
    "DecoherenceRates",
    "CollectiveRates",
    "decoherence_rates",
    "collective_rates",
    "angular_frequency",
    "bose_occupation",
    "thermal_factor",
    "thermal_decoherence_rates",
    "symmetric_decay_rate",
]


@dataclass(frozen=True)
class DecoherenceRates:
    """Dephasing rates of a delocalized emitter, in free-space units."""

    local_rate: float
    nonlocal_rate: float
    ratio: float
    local_error: float
    nonlocal_error: float
    evaluations: int

    @property
    def total(self):
        return self.local_rate + self.nonlocal_rate


@dataclass(frozen=True)
class CollectiveRates:
    """Two-emitter rates for vertical dipoles, in free-space units.

    ``incoherent`` is the single-emitter (Purcell) rate, ``coherent``
    the cross rate; the symmetric collective state decays at their sum.
    """

    incoherent: float
    coherent: float
    ratio: float
    incoherent_error: float
    coherent_error: float
    evaluations: int


def decoherence_rates(eps, separation, height, config=None):
    """Dephasing rates at wave-packet separation ``x`` and height ``z``.

    Parameters
    ----------
    eps : complex
        Permittivity of the half-space at the transition frequency;
        ``eps = 1`` reproduces free space through the same code path.
    separation, height : float
        Geometry in wavelength units.
    config : QuadratureConfig, optional

    Raises
    ------
    QuadratureError
        If a spectral integral fails to converge.
    """
    config = config or QuadratureConfig()
    u = 2.0 * np.pi * separation
    zeta = 2.0 * np.pi * height
    local_part = trace_scattered(0.0, zeta, eps, config)
    cross_part = trace_scattered(u, zeta, eps, config)
    local_rate = 1.0 + local_part.value.imag
    nonlocal_rate = -(trace_free(u) + cross_part.value.imag)
    return DecoherenceRates(
        local_rate=local_rate,
        nonlocal_rate=nonlocal_rate,
        ratio=(local_rate + nonlocal_rate) / local_rate,
        local_error=local_part.error,
        nonlocal_error=cross_part.error,
        evaluations=local_part.evaluations + cross_part.evaluations)


def collective_rates(eps, separation, height, config=None):
    """Collective emission rates for two vertical dipoles.

    Same conventions as :func:`decoherence_rates`; the ratio is the
    symmetric-state rate normalized by the incoherent rate.
    """
    config = config or QuadratureConfig()
    u = 2.0 * np.pi * separation
    zeta = 2.0 * np.pi * height
    local_part = purcell_scattered(zeta, eps, config)
    cross_part = coherent_scattered(u, zeta, eps, config)
    incoherent = 1.0 + local_part.value
    coherent = coherent_free(u) + cross_part.value
    return CollectiveRates(
        incoherent=incoherent,
        coherent=coherent,
        ratio=(incoherent + coherent) / incoherent,
        incoherent_error=local_part.error,
        coherent_error=cross_part.error,
        evaluations=local_part.evaluations + cross_part.evaluations)


def angular_frequency(wavelength_um):
    """Transition angular frequency in rad/s for a vacuum wavelength."""
    if wavelength_um <= 0:
        raise ValueError("wavelength must be positive")
    return 2.0 * np.pi * _SPEED_OF_LIGHT / (wavelength_um * 1e-6)


def bose_occupation(omega, temperature):
    """Mean thermal photon number at ``omega`` (rad/s) and ``temperature`` (K)."""
    if temperature < 0:
        raise ValueError("temperature must be nonnegative")
    if temperature == 0:
        return 0.0
    return float(1.0 / np.expm1(_HBAR * omega / (_BOLTZMANN * temperature)))


def thermal_factor(occupation):
    """Stimulated enhancement ``2 n + 1`` of decay rates."""
    return 2.0 * occupation + 1.0


def thermal_decoherence_rates(rates, occupation):
    """Dephasing rates against a thermal bath.

    Every rate scales by ``n + 1`` (stimulated emission); the
    local-to-nonlocal balance, hence the ratio, is unchanged.
    """
    scale = occupation + 1.0
    return replace(
        rates,
        local_rate=scale * rates.local_rate,
        nonlocal_rate=scale * rates.nonlocal_rate,
        local_error=scale * rates.local_error,
        nonlocal_error=scale * rates.nonlocal_error)


def symmetric_decay_rate(collective, occupation=0.0):
    """Decay rate of the symmetric two-emitter state, thermal bath included.

    ``(2 n + 1) (incoherent + coherent)`` in free-space units; with far
    separated emitters in vacuum this reduces to the single-emitter
    rate.
    """
    return thermal_factor(occupation) * (collective.incoherent
                                         + collective.coherent)
