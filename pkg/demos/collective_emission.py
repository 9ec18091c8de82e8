#!/usr/bin/env python3
"""Two-emitter superradiance near the composite, and its thermal boost.

Prints the collective decay enhancement of a symmetric two-emitter state
at two heights (far: full superradiant plateau across every composition;
contact: the composite absorbs the exchanged photon and the emitters
decay independently), then the occupation factor that multiplies every
rate for a thermally populated mode.
"""

import numpy as np

from critrates.presets import preset_config
from critrates.rates import (angular_frequency, bose_occupation,
                             collective_rates, thermal_factor)
from critrates.sweep import run_sweep


def main():
    free = collective_rates(1.0, 0.1, 0.1)
    print(f"free space, x = 0.1: symmetric / single ratio "
          f"{free.ratio:.4f} (2 means perfect superradiance)")

    table = run_sweep(preset_config("fig4"))
    picks = {name: table.columns.index(name)
             for name in ("z_over_lambda", "f", "ratio")}
    for z in (1e-1, 1e-4):
        rows = [row for row in table.rows if row[picks["z_over_lambda"]] == z]
        ratio = np.array([row[picks["ratio"]] for row in rows])
        print(f"  z = {z:5.0e}: ratio spans [{ratio.min():.3f}, "
              f"{ratio.max():.3f}] over the full fill scan")
    print("the plateau survives every composition at a tenth of a "
          "wavelength; at contact absorption eats the cross talk")

    omega = angular_frequency(450.0)
    n = bose_occupation(omega, 342.0)
    print(f"thermal mode at 450 um and 342 K holds n = {n:.1f} photons, "
          f"scaling all rates by 2n + 1 = {thermal_factor(n):.1f}")


if __name__ == "__main__":
    main()
