r"""Thermal master equation for a pair of two-level emitters.

The two emitters share a thermal electromagnetic bath; tracing the bath
out of the Born-Markov equation leaves a Lindblad generator whose rate
matrix couples the emitters through the cross rate :math:`\Gamma_{12}`:

.. math:: \dot\rho = \sum_{m,n} (\bar n + 1)\frac{\Gamma_{mn}}{2}
    \left(2\sigma_m\rho\sigma_n^\dagger
    - \sigma_m^\dagger\sigma_n\rho - \rho\sigma_m^\dagger\sigma_n\right)
    + \bar n\,\frac{\Gamma_{mn}}{2}
    \left(2\sigma_m^\dagger\rho\sigma_n
    - \sigma_m\sigma_n^\dagger\rho - \rho\sigma_m\sigma_n^\dagger\right)

in the product basis ``|ee>, |eg>, |ge>, |gg>``. The population of the
symmetric state :math:`|s\rangle = (|eg\rangle + |ge\rangle)/\sqrt 2`
obeys the closed rate equation

.. math:: \dot\rho_{ss} = (\Gamma_{11} + \Gamma_{12})
    \left[\bar n\,\rho_{gg,gg} + (\bar n + 1)\rho_{ee,ee}
    - (2\bar n + 1)\rho_{ss}\right]

so its decay rate is :math:`(2\bar n + 1)(\Gamma_{11} + \Gamma_{12})`,
the thermally enhanced symmetric-mode rate. The integrator here is a
plain fixed-step RK4 with Hermitization, accurate enough to verify that
rate equation to study-grade residuals.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "BASIS_LABELS",
    "SYMMETRIC_STATE",
    "lindblad_rhs",
    "evolve",
    "symmetric_population",
    "gibbs_state",
    "symmetric_rate_residual",
    "fit_symmetric_decay",
    "decay_fit_window",
]

BASIS_LABELS = ("ee", "eg", "ge", "gg")

_SIGMA = np.zeros((2, 4, 4))
# emitter 1: |ee> -> |ge>, |eg> -> |gg>
_SIGMA[0, 2, 0] = 1.0
_SIGMA[0, 3, 1] = 1.0
# emitter 2: |ee> -> |eg>, |ge> -> |gg>
_SIGMA[1, 1, 0] = 1.0
_SIGMA[1, 3, 2] = 1.0

_SIGMA_DAG = np.transpose(_SIGMA, (0, 2, 1))
_DAG_PRODUCTS = np.einsum("mij,njk->mnik", _SIGMA_DAG, _SIGMA)
_RAISE_PRODUCTS = np.einsum("mij,njk->mnik", _SIGMA, _SIGMA_DAG)

SYMMETRIC_STATE = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)


def _check_gamma(gamma):
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (2, 2):
        raise ValueError("rate matrix must be 2x2")
    if not np.allclose(gamma, gamma.T):
        raise ValueError("rate matrix must be symmetric")
    if gamma[0, 0] < 0 or gamma[1, 1] < 0:
        raise ValueError("single-emitter rates must be nonnegative")
    return gamma


def lindblad_rhs(rho, gamma, occupation):
    """Right-hand side of the thermal two-emitter master equation."""
    out = np.zeros((4, 4), dtype=complex)
    for m in range(2):
        for n in range(2):
            g = gamma[m, n]
            if g == 0.0:
                continue
            down = _DAG_PRODUCTS[m, n]
            out += (occupation + 1.0) * 0.5 * g * (
                2.0 * _SIGMA[m] @ rho @ _SIGMA_DAG[n]
                - down @ rho - rho @ down)
            if occupation > 0.0:
                up = _RAISE_PRODUCTS[m, n]
                out += occupation * 0.5 * g * (
                    2.0 * _SIGMA_DAG[m] @ rho @ _SIGMA[n]
                    - up @ rho - rho @ up)
    return out


def evolve(gamma, occupation, rho0, t_final, samples=201):
    """Evolve a density matrix and sample it on a uniform time grid.

    Fixed-step RK4; the sample spacing is subdivided internally so the
    integrator step never exceeds 0.01 bath-enhanced lifetimes. The
    state is Hermitized after every step to suppress drift.

    Returns
    -------
    times : ndarray, shape (samples,)
    states : ndarray, shape (samples, 4, 4)
    """
    gamma = _check_gamma(gamma)
    rho = np.array(rho0, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("density matrix must be 4x4")
    times = np.linspace(0.0, float(t_final), samples)
    spacing = times[1] - times[0] if samples > 1 else 0.0
    fastest = (2.0 * occupation + 1.0) * np.abs(gamma).max()
    limit = 0.01 / fastest if fastest > 0 else np.inf
    substeps = max(1, int(np.ceil(spacing / limit))) if spacing > 0 else 1
    dt = spacing / substeps if substeps else 0.0
    states = np.empty((samples, 4, 4), dtype=complex)
    states[0] = rho
    for i in range(1, samples):
        for _ in range(substeps):
            k1 = lindblad_rhs(rho, gamma, occupation)
            k2 = lindblad_rhs(rho + 0.5 * dt * k1, gamma, occupation)
            k3 = lindblad_rhs(rho + 0.5 * dt * k2, gamma, occupation)
            k4 = lindblad_rhs(rho + dt * k3, gamma, occupation)
            rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            rho = 0.5 * (rho + rho.conj().T)
        states[i] = rho
    return times, states


def symmetric_population(states):
    """Population of the symmetric single-excitation state."""
    states = np.asarray(states)
    return np.real(np.einsum("i,...ij,j->...", SYMMETRIC_STATE, states,
                             SYMMETRIC_STATE))


def gibbs_state(occupation):
    """Product thermal state at bath occupation ``occupation``.

    Detailed balance fixes the per-emitter excited fraction at
    ``n / (2n + 1)``.
    """
    p_excited = occupation / (2.0 * occupation + 1.0)
    p_ground = 1.0 - p_excited
    return np.diag([p_excited**2, p_excited * p_ground,
                    p_ground * p_excited, p_ground**2]).astype(complex)


def symmetric_rate_residual(times, states, gamma, occupation):
    """Relative residual of the closed symmetric-population rate equation.

    The time derivative is taken with a five-point central stencil on
    the uniform sample grid and compared to
    ``(G11 + G12) [n p_gg + (n+1) p_ee - (2n+1) p_s]``.
    """
    gamma = _check_gamma(gamma)
    lam = gamma[0, 0] + gamma[0, 1]
    p_s = symmetric_population(states)
    p_ee = np.real(states[:, 0, 0])
    p_gg = np.real(states[:, 3, 3])
    h = times[1] - times[0]
    derivative = (-p_s[4:] + 8.0 * p_s[3:-1]
                  - 8.0 * p_s[1:-3] + p_s[:-4]) / (12.0 * h)
    rhs = lam * (occupation * p_gg + (occupation + 1.0) * p_ee
                 - (2.0 * occupation + 1.0) * p_s)[2:-2]
    scale = np.abs(rhs).max()
    if scale == 0.0:
        return float(np.abs(derivative).max())
    return float(np.abs(derivative - rhs).max() / scale)


def decay_fit_window(gamma, occupation, slope_bias=0.005):
    """Fit window over which the raw log-slope stays within ``slope_bias``.

    Starting from the pure symmetric state, thermal refilling bends the
    log-population curve on a scale set by ``n (n+1) lambda_s t``
    relative to ``(2n+1)``; the window caps that bend, and never
    exceeds one bath-enhanced lifetime.
    """
    gamma = _check_gamma(gamma)
    n = occupation
    lam = gamma[0, 0] + gamma[0, 1]
    if lam <= 0:
        raise ValueError("symmetric mode does not decay")
    lifetime = 1.0 / ((2.0 * n + 1.0) * lam)
    if n == 0:
        return 3.0 * lifetime
    bias_cap = slope_bias * (2.0 * n + 1.0) / (n * (n + 1.0) * lam)
    return min(3.0 * lifetime, bias_cap)


def fit_symmetric_decay(times, populations):
    """Least-squares slope of the log population, returned as a rate."""
    populations = np.asarray(populations, dtype=float)
    if np.any(populations <= 0.0):
        raise ValueError("populations must stay positive over the fit window")
    slope = np.polyfit(times, np.log(populations), 1)[0]
    return -slope
