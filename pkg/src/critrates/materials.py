"""Permittivity models and the anisotropic Bruggeman effective medium.

Constituent materials are described by standard causal models (Drude,
Drude-Lorentz, tabulated data) evaluated at angular frequency in rad/s.
A two-phase composite of aligned spheroidal grains is homogenized with
the anisotropic Bruggeman mixing rule; the self-consistency condition is
cleared to a quartic polynomial, solved by companion matrix, and the
passive root is polished by Newton iteration on the rational form.

Key components:

* :class:`DrudeModel`, :class:`DrudeLorentzModel`, :class:`TabulatedModel`
  with a common ``permittivity(omega)`` method, plus :func:`load_material`
  for the JSON description format.
* :func:`bruggeman_effective`: effective permittivity of the composite,
  valid on and off the passivity boundary (lossless constituents are
  handled by a small causal perturbation and extrapolation).
* :func:`bruggeman_residual`: dimensionless self-consistency residual
  used as the convergence diagnostic.
* :func:`percolation_threshold`: filling fraction where the composite
  first conducts, as a function of grain depolarization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "DrudeModel",
    "LorentzTerm",
    "DrudeLorentzModel",
    "TabulatedModel",
    "load_material",
    "BruggemanError",
    "bruggeman_effective",
    "bruggeman_residual",
    "percolation_threshold",
]


@dataclass(frozen=True)
class DrudeModel:
    r"""Free-carrier permittivity.

    .. math:: \varepsilon(\omega) = 1 -
        \frac{\omega_p^2}{\omega(\omega + i\gamma)}

    Parameters are in rad/s.
    """

    plasma_frequency: float
    collision_rate: float

    def __post_init__(self):
        if self.plasma_frequency <= 0 or self.collision_rate < 0:
            raise ValueError("Drude parameters must be positive")

    def permittivity(self, omega):
        omega = np.asarray(omega, dtype=float)
        return 1.0 - self.plasma_frequency**2 / (
            omega * (omega + 1j * self.collision_rate))


@dataclass(frozen=True)
class LorentzTerm:
    r"""One Lorentz oscillator,
    :math:`\omega_p^2 / (\omega_R^2 - \omega^2 - i\Gamma\omega)`."""

    plasma_frequency: float
    resonance_frequency: float
    damping_rate: float


@dataclass(frozen=True)
class DrudeLorentzModel:
    """Sum of Lorentz oscillators on a constant background."""

    epsilon_infinity: float = 1.0
    terms: tuple[LorentzTerm, ...] = ()

    def permittivity(self, omega):
        omega = np.asarray(omega, dtype=float)
        eps = np.full(omega.shape, self.epsilon_infinity, dtype=complex)
        for term in self.terms:
            eps += term.plasma_frequency**2 / (
                term.resonance_frequency**2 - omega**2
                - 1j * term.damping_rate * omega)
        return eps


@dataclass(frozen=True)
class TabulatedModel:
    """Complex permittivity interpolated linearly on a frequency grid."""

    angular_frequencies: np.ndarray
    permittivities: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.angular_frequencies, dtype=float)
        eps = np.asarray(self.permittivities, dtype=complex)
        if w.ndim != 1 or w.size < 2 or eps.shape != w.shape:
            raise ValueError("need matching 1d frequency and permittivity grids")
        if not np.all(np.diff(w) > 0):
            raise ValueError("frequency grid must be strictly increasing")
        object.__setattr__(self, "angular_frequencies", w)
        object.__setattr__(self, "permittivities", eps)

    def permittivity(self, omega):
        omega = np.asarray(omega, dtype=float)
        w = self.angular_frequencies
        if np.any(omega < w[0]) or np.any(omega > w[-1]):
            raise ValueError("frequency outside tabulated range")
        return (np.interp(omega, w, self.permittivities.real)
                + 1j * np.interp(omega, w, self.permittivities.imag))


def load_material(source):
    """Build a permittivity model from a JSON file or parsed dict.

    The description format is ``{"model": ..., ...}`` with frequencies in
    rad/s:

    * ``drude``: ``plasma_frequency_rad_s``, ``collision_rate_rad_s``
    * ``drude-lorentz``: optional ``epsilon_infinity`` and a ``terms``
      list of ``{plasma_frequency_rad_s, resonance_frequency_rad_s,
      damping_rate_rad_s}``
    * ``tabulated``: ``angular_frequency_rad_s``, ``epsilon_re``,
      ``epsilon_im``

    A free-form ``notes`` key is ignored.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            data = json.load(handle)
    else:
        data = dict(source)
    kind = data.get("model")
    if kind == "drude":
        return DrudeModel(float(data["plasma_frequency_rad_s"]),
                          float(data["collision_rate_rad_s"]))
    if kind == "drude-lorentz":
        terms = tuple(
            LorentzTerm(float(t["plasma_frequency_rad_s"]),
                        float(t["resonance_frequency_rad_s"]),
                        float(t["damping_rate_rad_s"]))
            for t in data.get("terms", ()))
        return DrudeLorentzModel(float(data.get("epsilon_infinity", 1.0)), terms)
    if kind == "tabulated":
        eps = (np.asarray(data["epsilon_re"], dtype=float)
               + 1j * np.asarray(data["epsilon_im"], dtype=float))
        return TabulatedModel(np.asarray(data["angular_frequency_rad_s"],
                                         dtype=float), eps)
    raise ValueError(f"unknown material model {kind!r}")


class BruggemanError(RuntimeError):
    """Raised when no physically admissible effective permittivity exists.

    Carries the candidate polynomial roots as ``roots``.
    """

    def __init__(self, message, roots=()):
        super().__init__(message)
        self.roots = tuple(roots)


def percolation_threshold(depolarization):
    """Filling fraction where an ideally conducting phase first percolates.

    For aligned spheroidal grains with axial depolarization ``L`` the
    threshold follows from balancing the mixing rule between a diverging
    and a bounded effective permittivity. Equals 1/3 for spheres.
    """
    L = depolarization
    _check_depolarization(L)
    num = 1.0 / (1.0 - L) + 4.0 / (1.0 + L)
    den = 1.0 / L + 5.0 / (1.0 - L) + 4.0 / (1.0 + L)
    return num / den


def _check_depolarization(L):
    if not 0.0 < L < 1.0:
        raise ValueError("depolarization factor must lie in (0, 1)")


def _constituent_terms(e, eps_c, L):
    delta = eps_c - e
    return (delta / (e + L * delta)
            + 4.0 * delta / (2.0 * e + (1.0 - L) * delta))


def bruggeman_residual(e, eps_host, eps_inclusion, fill, depolarization):
    r"""Self-consistency residual of the anisotropic mixing rule.

    For constituents :math:`c` with weights :math:`w_c` and axial
    depolarization :math:`L` (transverse factors :math:`(1-L)/2`, doubly
    degenerate):

    .. math:: g(\varepsilon) = \sum_c w_c \left[
        \frac{\varepsilon_c - \varepsilon}
             {\varepsilon + L(\varepsilon_c - \varepsilon)}
        + \frac{4(\varepsilon_c - \varepsilon)}
               {2\varepsilon + (1-L)(\varepsilon_c - \varepsilon)}
        \right]

    The residual is dimensionless; the effective permittivity satisfies
    ``g = 0``.
    """
    L = depolarization
    return ((1.0 - fill) * _constituent_terms(e, eps_host, L)
            + fill * _constituent_terms(e, eps_inclusion, L))


def _residual_derivative(e, eps_host, eps_inclusion, fill, L):
    total = 0.0 + 0.0j
    for w, eps_c in ((1.0 - fill, eps_host), (fill, eps_inclusion)):
        delta = eps_c - e
        d1 = e + L * delta
        d2 = 2.0 * e + (1.0 - L) * delta
        total += -w * (eps_c / d1**2 + 8.0 * eps_c / d2**2)
    return total


def _mixing_polynomial(eps_host, eps_inclusion, fill, L):
    # Clearing denominators of the rational relation gives a quartic in
    # the effective permittivity. Each constituent contributes its own
    # numerator times the other constituent's denominator pair.
    poly = np.zeros(5, dtype=complex)
    pairs = (((1.0 - fill), eps_host, eps_inclusion),
             (fill, eps_inclusion, eps_host))
    for weight, eps_c, eps_other in pairs:
        term = np.polymul([-1.0, eps_c],
                          [5.0 - 3.0 * L, (1.0 + 3.0 * L) * eps_c])
        term = np.polymul(term, [1.0 - L, L * eps_other])
        term = np.polymul(term, [1.0 + L, (1.0 - L) * eps_other])
        poly = poly + weight * term
    return poly


def _solve_passive(eps_host, eps_inclusion, fill, L, pick_max_imag):
    # The quartic's leading coefficient is -(5-3L)(1-L^2) regardless of
    # the constituents, so the degree never collapses for L in (0, 1).
    poly = _mixing_polynomial(eps_host, eps_inclusion, fill, L)
    roots = np.roots(poly)
    if pick_max_imag:
        candidates = [roots[np.argmax(roots.imag)]]
    else:
        candidates = [r for r in roots
                      if r.imag > 1e-12 * (1.0 + abs(r))]
        if len(candidates) != 1:
            raise BruggemanError(
                f"expected one passive root, found {len(candidates)}", roots)
    e = candidates[0]
    # Newton polish on the rational form; the companion-matrix root is
    # accurate but the rational residual is the convergence contract.
    for _ in range(12):
        g = bruggeman_residual(e, eps_host, eps_inclusion, fill, L)
        if abs(g) <= 1e-15:
            break
        dg = _residual_derivative(e, eps_host, eps_inclusion, fill, L)
        if dg == 0:
            break
        step = g / dg
        e = e - step
        if abs(step) <= 1e-15 * (1.0 + abs(e)):
            break
    return e


def bruggeman_effective(eps_host, eps_inclusion, fill, depolarization):
    """Effective permittivity of the two-phase anisotropic composite.

    Parameters
    ----------
    eps_host, eps_inclusion : complex
        Constituent permittivities, ``Im >= 0`` (passive media).
    fill : float
        Inclusion filling fraction in ``[0, 1]``.
    depolarization : float
        Axial depolarization factor of the aligned grains, in ``(0, 1)``;
        1/3 recovers the isotropic spherical-grain rule.

    Returns
    -------
    complex
        The unique root with ``Im >= 0``. Exactly lossless constituents
        are perturbed by a small causal imaginary part and the limit is
        recovered by Richardson extrapolation, which resolves the branch
        ambiguity of the lossless quartic.
    """
    L = depolarization
    _check_depolarization(L)
    eps_host = complex(eps_host)
    eps_inclusion = complex(eps_inclusion)
    if eps_host.imag < 0 or eps_inclusion.imag < 0:
        raise ValueError("constituent permittivities must have Im >= 0")
    if not 0.0 <= fill <= 1.0:
        raise ValueError("filling fraction must lie in [0, 1]")
    if fill == 0.0:
        return eps_host
    if fill == 1.0:
        return eps_inclusion
    if eps_host.imag == 0.0 and eps_inclusion.imag == 0.0:
        delta = 1e-9 * max(abs(eps_inclusion), 1.0)
        full = _solve_passive(eps_host, eps_inclusion + 1j * delta,
                              fill, L, pick_max_imag=True)
        half = _solve_passive(eps_host, eps_inclusion + 0.5j * delta,
                              fill, L, pick_max_imag=True)
        e = 2.0 * half - full
        return complex(e.real, max(e.imag, 0.0))
    return _solve_passive(eps_host, eps_inclusion, fill, L,
                          pick_max_imag=False)
