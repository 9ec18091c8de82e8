"""Deterministic matplotlib rendering of sweep figures.

Rendering is a pure function of the input CSV: a fixed SVG hash salt
pins the generated element ids, fonts are embedded as paths, and the
writer metadata that would otherwise carry timestamps or tool versions
is stripped, so re-rendering the same CSV reproduces the SVG byte for
byte.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweepcsv import read_sweep

__all__ = ["render"]

_RC = {
    "svg.hashsalt": "critfigs",
    "svg.fonttype": "path",
    "figure.figsize": (6.4, 4.8),
    "figure.dpi": 100,
}


def _curves(spec, data):
    """Styled (points, color, dash, label) groups present in the CSV.

    Flagged rows carry no ratio and drop out; a styled group with no
    surviving rows is skipped entirely.
    """
    curves = []
    for key, (color, dash, label) in spec.styles.items():
        points = [(row[spec.x_column], row["ratio"])
                  for row in data.rows
                  if row["ratio"] is not None
                  and all(row[col] == part
                          for col, part in zip(spec.group_columns, key))]
        if points:
            points.sort(key=lambda point: point[0])
            curves.append((points, color, dash, label))
    return curves


def render(spec, out_dir="."):
    """Draw one figure and write ``<figure_id>.png`` and ``.svg``.

    Returns the two written paths. Raises ``ValueError`` if the CSV
    lacks a required column or holds no rows for any styled curve.
    """
    data = read_sweep(spec.csv_path)
    data.require(*spec.required_columns())
    curves = _curves(spec, data)
    if not curves:
        raise ValueError(
            f"{spec.csv_path} holds no rows for any styled curve of "
            f"{spec.figure_id}")
    if spec.free_style is not None:
        color, dash, label = spec.free_style
        # the reference ratio is medium-independent, so the distinct
        # (x, free_ratio) pairs collapse the height groups to one curve
        reference = sorted({(row[spec.x_column], row["free_ratio"])
                            for row in data.rows
                            if row["free_ratio"] is not None})
        if reference:
            curves.append((reference, color, dash, label))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = (out / f"{spec.figure_id}.png", out / f"{spec.figure_id}.svg")
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        try:
            for points, color, dash, label in curves:
                xs = [p[0] for p in points]
                ys = [p[1] for p in points]
                if len(points) == 1:
                    ax.plot(xs, ys, marker="o", color=color, label=label)
                else:
                    ax.plot(xs, ys, linestyle=dash, color=color,
                            label=label)
            if spec.log_x:
                ax.set_xscale("log")
            ax.set_xlabel(spec.x_label)
            ax.set_ylabel(spec.y_label)
            ax.legend()
            fig.savefig(paths[0], metadata={"Software": None})
            fig.savefig(paths[1], metadata={"Date": None})
        finally:
            plt.close(fig)
    return paths
