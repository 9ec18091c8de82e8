"""Figure definitions: what to plot against what, and how each curve looks.

Line styles follow the survey's verbal conventions: red dotted, blue
dash-dotted, green dashed and purple full lines keyed to the height
above the surface or to the thermal branch. A spec lists every curve a
figure may hold; the renderer draws the subset its CSV actually
contains.
"""

from dataclasses import dataclass

__all__ = ["FIGURE_IDS", "FigureSpec", "figure_spec"]

RED_DOTTED = ("red", ":")
BLUE_DASH_DOTTED = ("blue", "-.")
GREEN_DASHED = ("green", "--")
PURPLE_FULL = ("purple", "-")

DECOHERENCE_LABEL = "delocalized / localized decoherence rate"
EMISSION_LABEL = "symmetric / single-emitter emission rate"


@dataclass(frozen=True)
class FigureSpec:
    """One renderable figure bound to its input CSV."""

    csv_path: str
    figure_id: str
    x_column: str
    x_label: str
    y_label: str
    group_columns: tuple
    styles: dict
    free_style: tuple | None = None
    log_x: bool = False

    def required_columns(self):
        needed = [self.x_column, *self.group_columns, "ratio"]
        if self.free_style is not None:
            needed.append("free_ratio")
        return needed


def _height_label(z):
    return f"z = {z:g}"


def _fill_scan(csv_path, figure_id, y_label, styles, free=None):
    return FigureSpec(
        csv_path=csv_path,
        figure_id=figure_id,
        x_column="f",
        x_label="filling factor f",
        y_label=y_label,
        group_columns=("z_over_lambda",),
        styles={(z,): (color, dash, _height_label(z))
                for z, (color, dash) in styles.items()},
        free_style=free,
    )


def _temperature_scan(csv_path, figure_id, y_label):
    branch_styles = {
        ("cooling", 1e-2): PURPLE_FULL,
        ("heating", 1e-3): GREEN_DASHED,
        ("heating", 1e-2): BLUE_DASH_DOTTED,
        ("heating", 1e-1): RED_DOTTED,
    }
    return FigureSpec(
        csv_path=csv_path,
        figure_id=figure_id,
        x_column="T_K",
        x_label="temperature (K)",
        y_label=y_label,
        group_columns=("branch", "z_over_lambda"),
        styles={key: (color, dash, f"{key[0]}, {_height_label(key[1])}")
                for key, (color, dash) in branch_styles.items()},
    )


def _height_scan(csv_path):
    branch_styles = {
        ("heating", 0.05): RED_DOTTED,
        ("heating", 0.3): BLUE_DASH_DOTTED,
        ("cooling", 0.05): GREEN_DASHED,
        ("cooling", 0.3): PURPLE_FULL,
    }
    return FigureSpec(
        csv_path=csv_path,
        figure_id="fig3b",
        x_column="z_over_lambda",
        x_label="height z (vacuum wavelengths)",
        y_label=DECOHERENCE_LABEL,
        group_columns=("branch", "x_over_lambda"),
        styles={key: (color, dash, f"{key[0]}, x = {key[1]:g}")
                for key, (color, dash) in branch_styles.items()},
        log_x=True,
    )


_DEC_FILL_STYLES = {1e-2: RED_DOTTED, 1e-3: BLUE_DASH_DOTTED,
                    1e-4: GREEN_DASHED}
_COLL_FILL_STYLES = {1e-1: RED_DOTTED, 1e-2: BLUE_DASH_DOTTED,
                     1e-3: GREEN_DASHED, 1e-4: PURPLE_FULL}

_CATALOG = {
    "fig2a": lambda path: _fill_scan(
        path, "fig2a", DECOHERENCE_LABEL, _DEC_FILL_STYLES,
        free=(*PURPLE_FULL, "free space")),
    "fig2b": lambda path: _fill_scan(
        path, "fig2b", DECOHERENCE_LABEL, _DEC_FILL_STYLES,
        free=(*PURPLE_FULL, "free space")),
    "fig3a": lambda path: _temperature_scan(path, "fig3a",
                                            DECOHERENCE_LABEL),
    "fig3b": _height_scan,
    "fig4": lambda path: _fill_scan(path, "fig4", EMISSION_LABEL,
                                    _COLL_FILL_STYLES),
    "fig5": lambda path: _temperature_scan(path, "fig5", EMISSION_LABEL),
}

FIGURE_IDS = tuple(_CATALOG)


def figure_spec(figure_id, csv_path):
    try:
        factory = _CATALOG[figure_id]
    except KeyError:
        raise ValueError(f"unknown figure id {figure_id!r}; "
                         f"expected one of {FIGURE_IDS}") from None
    return factory(str(csv_path))
