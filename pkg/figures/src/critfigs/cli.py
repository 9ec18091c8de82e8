"""Command line entry point: render one figure from one sweep CSV."""

import argparse
import sys

from .figspec import FIGURE_IDS, figure_spec
from .render import render

__all__ = ["main"]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render a sweep CSV into a static survey figure "
                    "(PNG and SVG).")
    parser.add_argument("csv", help="sweep CSV written by critrates")
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS,
                        help="which figure layout to draw")
    parser.add_argument("--out", default=".", metavar="DIR",
                        help="output directory (default: current)")
    args = parser.parse_args(argv)

    try:
        paths = render(figure_spec(args.figure, args.csv), args.out)
    except (OSError, ValueError) as error:
        print(f"render_figures: {error}", file=sys.stderr)
        return 1
    for path in paths:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
