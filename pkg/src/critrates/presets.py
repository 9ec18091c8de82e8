"""Built-in sweep configurations for the survey figures.

Each preset fixes the emitter geometry and scans either the filling
factor of the percolation composite or the temperature of the
thermochromic film, at the reference transition wavelength of 450 um.
Swept axes use 161 base points, densified threefold where the physics
is sharpest: around the percolation threshold (|f - 1/3| < 0.02) and
inside the hysteresis window (334 K to 344 K).
"""

from __future__ import annotations

import numpy as np

from .sweep import Axis, SweepConfig

__all__ = ["PRESET_NAMES", "preset_config"]


def _dense_fill_axis():
    base = np.linspace(0.0, 0.8, 161)
    window = np.linspace(1.0 / 3.0 - 0.02, 1.0 / 3.0 + 0.02, 25)
    values = np.unique(np.round(np.concatenate([base, window]), 12))
    return Axis("f", tuple(float(v) for v in values))


def _dense_temperature_axis():
    base = np.linspace(318.0, 366.0, 161)
    window = np.linspace(334.0, 344.0, 101)
    values = np.unique(np.round(np.concatenate([base, window]), 12))
    return Axis("T_K", tuple(float(v) for v in values))


def _height_axis():
    return Axis("z_over_lambda",
                tuple(float(v) for v in np.logspace(-4.0, 0.0, 161)))


def _fill_scan(name, observable, x, heights):
    return SweepConfig(
        scenario="percolation-composite",
        observable=observable,
        axes=(Axis("x_over_lambda", (x,)),
              Axis("z_over_lambda", tuple(heights)),
              _dense_fill_axis()),
        output=f"{name}.csv")


def _temperature_scan(name, observable, x, heights):
    return SweepConfig(
        scenario="vo2",
        observable=observable,
        axes=(Axis("x_over_lambda", (x,)),
              Axis("z_over_lambda", tuple(heights)),
              Axis("branch", ("cooling", "heating")),
              _dense_temperature_axis()),
        output=f"{name}.csv")


def _fig2a():
    return _fill_scan("fig2a", "decoherence", 0.7, (1e-2, 1e-3, 1e-4))


def _fig2b():
    return _fill_scan("fig2b", "decoherence", 0.1, (1e-2, 1e-3, 1e-4))


def _fig3a():
    return _temperature_scan("fig3a", "decoherence", 0.7,
                             (1e-3, 1e-2, 1e-1))


def _fig3b():
    # Height scan at fixed temperature inside the hysteresis loop,
    # one curve per (separation, branch) pair.
    return SweepConfig(
        scenario="vo2",
        observable="decoherence",
        axes=(Axis("x_over_lambda", (0.05, 0.3)),
              Axis("branch", ("cooling", "heating")),
              Axis("T_K", (342.0,)),
              _height_axis()),
        output="fig3b.csv")


def _fig4():
    return _fill_scan("fig4", "collective", 0.1, (1e-1, 1e-2, 1e-3, 1e-4))


def _fig5():
    return _temperature_scan("fig5", "collective", 0.1,
                             (1e-3, 1e-2, 1e-1))


_PRESETS = {
    "fig2a": _fig2a,
    "fig2b": _fig2b,
    "fig3a": _fig3a,
    "fig3b": _fig3b,
    "fig4": _fig4,
    "fig5": _fig5,
}

PRESET_NAMES = tuple(_PRESETS)


def preset_config(name):
    """Return the named preset as a fresh :class:`SweepConfig`."""
    try:
        builder = _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from "
                         f"{list(PRESET_NAMES)}") from None
    return builder()
