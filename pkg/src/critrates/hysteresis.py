"""Hysteretic metal-insulator composite tables.

A phase-change composite is described by a CSV table giving, per thermal
branch and temperature, the metallic filling fraction, the grain
depolarization factor, and the constituent permittivities at the working
frequency. The table format is the exchange contract: columns

    branch,T_K,f,L,eps_hm_re,eps_hm_im,eps_i_re,eps_i_im

with rows sorted by (branch, T_K), branch in {cooling, heating}, no
duplicate temperatures within a branch. Quantities are interpolated
linearly in temperature between rows.

:func:`synthetic_table` builds the bundled dataset: logistic filling
curves with hysteresis (distinct heating and cooling centers), a linear
drift of the depolarization factor, a lossy dielectric host, and a
Drude metallic phase.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.constants import c as _SPEED_OF_LIGHT

from .materials import DrudeModel, bruggeman_effective

__all__ = [
    "COLUMNS",
    "BRANCHES",
    "HysteresisTable",
    "read_table",
    "write_table",
    "synthetic_table",
]

COLUMNS = ("branch", "T_K", "f", "L",
           "eps_hm_re", "eps_hm_im", "eps_i_re", "eps_i_im")
BRANCHES = ("cooling", "heating")


@dataclass(frozen=True)
class _Branch:
    temperature: np.ndarray
    fill: np.ndarray
    depolarization: np.ndarray
    eps_host: np.ndarray
    eps_inclusion: np.ndarray


@dataclass(frozen=True)
class HysteresisTable:
    """Per-branch temperature tables with linear interpolation."""

    branches: dict

    def _branch(self, branch):
        if branch not in self.branches:
            raise ValueError(f"unknown branch {branch!r}, expected one of "
                             f"{sorted(self.branches)}")
        return self.branches[branch]

    def _interp(self, temperature, branch, column):
        data = self._branch(branch)
        t = data.temperature
        temperature = float(temperature)
        if temperature < t[0] or temperature > t[-1]:
            raise ValueError(
                f"temperature {temperature} K outside table range "
                f"[{t[0]}, {t[-1]}] K")
        values = getattr(data, column)
        if np.iscomplexobj(values):
            return (np.interp(temperature, t, values.real)
                    + 1j * np.interp(temperature, t, values.imag))
        return float(np.interp(temperature, t, values))

    @property
    def temperature_range(self):
        lows = [b.temperature[0] for b in self.branches.values()]
        highs = [b.temperature[-1] for b in self.branches.values()]
        return max(lows), min(highs)

    def fill(self, temperature, branch):
        return self._interp(temperature, branch, "fill")

    def depolarization(self, temperature, branch):
        return self._interp(temperature, branch, "depolarization")

    def host_permittivity(self, temperature, branch):
        return self._interp(temperature, branch, "eps_host")

    def inclusion_permittivity(self, temperature, branch):
        return self._interp(temperature, branch, "eps_inclusion")

    def effective_permittivity(self, temperature, branch):
        """Composite permittivity at the interpolated state point."""
        return bruggeman_effective(
            self.host_permittivity(temperature, branch),
            self.inclusion_permittivity(temperature, branch),
            self.fill(temperature, branch),
            self.depolarization(temperature, branch))


def _validate_and_pack(rows):
    if not rows:
        raise ValueError("table holds no data rows")
    expected = sorted(rows, key=lambda r: (r[0], r[1]))
    if rows != expected:
        raise ValueError("rows must be sorted by (branch, T_K)")
    branches = {}
    for branch in sorted(set(r[0] for r in rows)):
        if branch not in BRANCHES:
            raise ValueError(f"unknown branch {branch!r}")
        sub = [r for r in rows if r[0] == branch]
        t = np.array([r[1] for r in sub])
        if t.size < 2:
            raise ValueError(f"branch {branch!r} needs at least two rows")
        if not np.all(np.diff(t) > 0):
            raise ValueError(f"duplicate temperature in branch {branch!r}")
        fill = np.array([r[2] for r in sub])
        depol = np.array([r[3] for r in sub])
        eps_host = np.array([complex(r[4], r[5]) for r in sub])
        eps_inc = np.array([complex(r[6], r[7]) for r in sub])
        if np.any(fill < 0) or np.any(fill > 1):
            raise ValueError("filling fraction outside [0, 1]")
        if np.any(depol <= 0) or np.any(depol >= 1):
            raise ValueError("depolarization factor outside (0, 1)")
        if np.any(eps_host.imag < 0) or np.any(eps_inc.imag < 0):
            raise ValueError("permittivities must have Im >= 0")
        branches[branch] = _Branch(t, fill, depol, eps_host, eps_inc)
    return HysteresisTable(branches)


def read_table(path):
    """Parse and validate a hysteresis CSV table."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != COLUMNS:
            raise ValueError(
                f"bad header {header!r}, expected {','.join(COLUMNS)}")
        rows = []
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(COLUMNS):
                raise ValueError(f"line {lineno}: expected "
                                 f"{len(COLUMNS)} fields, got {len(record)}")
            rows.append((record[0], *map(float, record[1:])))
    return _validate_and_pack(rows)


def write_table(table, path):
    """Write a hysteresis table in the CSV exchange format."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(COLUMNS)
        for branch in sorted(table.branches):
            data = table.branches[branch]
            for i in range(data.temperature.size):
                writer.writerow([
                    branch,
                    "%.17g" % data.temperature[i],
                    "%.17g" % data.fill[i],
                    "%.17g" % data.depolarization[i],
                    "%.17g" % data.eps_host[i].real,
                    "%.17g" % data.eps_host[i].imag,
                    "%.17g" % data.eps_inclusion[i].real,
                    "%.17g" % data.eps_inclusion[i].imag,
                ])


def synthetic_table(t_min=318.0, t_max=366.0, t_step=0.5,
                    heating_center=342.0, cooling_center=336.0,
                    width=0.75, fill_max=0.95,
                    depol_start=1.0 / 3.0, depol_end=0.25,
                    eps_host=9.0 + 0.5j,
                    inclusion=None, lambda0_um=450.0):
    """Synthetic hysteretic composite in the CSV exchange schema.

    The filling fraction follows a logistic curve of steepness ``width``
    (kelvin) around the branch center, rescaled per branch so the grid
    endpoints sit exactly at 0 and ``fill_max``. The depolarization
    factor drifts linearly across the grid. The metallic phase is a
    Drude conductor evaluated at the working wavelength; the host is a
    lossy dielectric with constant permittivity.
    """
    if inclusion is None:
        inclusion = DrudeModel(plasma_frequency=8e15, collision_rate=5e13)
    omega0 = 2.0 * np.pi * _SPEED_OF_LIGHT / (lambda0_um * 1e-6)
    eps_inc = complex(inclusion.permittivity(omega0))
    n_steps = round((t_max - t_min) / t_step)
    temperature = t_min + t_step * np.arange(n_steps + 1)
    depol = depol_start + (depol_end - depol_start) * (
        (temperature - t_min) / (t_max - t_min))
    branches = {}
    for branch, center in (("cooling", cooling_center),
                           ("heating", heating_center)):
        raw = 1.0 / (1.0 + np.exp(-(temperature - center) / width))
        fill = fill_max * (raw - raw[0]) / (raw[-1] - raw[0])
        branches[branch] = _Branch(
            temperature.copy(), fill, depol.copy(),
            np.full(temperature.size, complex(eps_host)),
            np.full(temperature.size, eps_inc))
    return HysteresisTable(branches)
