"""plot command: render one result panel from an experiment CSV."""

from __future__ import annotations

import argparse
import sys

from .panels import PANELS, MissingAxisError, render_panel
from .results import SchemaError, read_table


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="render a result panel from an experiment CSV"
    )
    parser.add_argument("--in", dest="inp", required=True, help="input results CSV")
    parser.add_argument("--panel", required=True, choices=PANELS)
    parser.add_argument("--out", required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        table = read_table(args.inp)
        render_panel(table, args.panel, args.out)
    except (SchemaError, MissingAxisError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
