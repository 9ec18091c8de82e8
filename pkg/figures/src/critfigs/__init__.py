"""Survey figures from sweep CSV tables.

The package consumes the CSV files written by the ``critrates sweep``
command and turns them into the static line figures of the survey:
normalized decoherence or emission ratios against filling factor,
temperature, or height, one styled curve per height or thermal branch.
It reads the CSV contract only; nothing here imports the rate engine.
"""

from .figspec import FIGURE_IDS, FigureSpec, figure_spec
from .render import render
from .sweepcsv import SweepData, read_sweep

__all__ = [
    "FIGURE_IDS",
    "FigureSpec",
    "SweepData",
    "figure_spec",
    "read_sweep",
    "render",
]
