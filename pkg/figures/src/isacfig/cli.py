"""isacfig command line: render sweep CSVs to two-panel figures."""

from __future__ import annotations

import argparse
import sys

from .data import SchemaError
from .render import FigureSpec, render_sweep


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="isacfig",
        description="Render sweep CSV files into two-panel figures")
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render one sweep CSV")
    p_render.add_argument("--csv", required=True, help="input sweep CSV")
    p_render.add_argument("--out", required=True,
                          help="output image (.svg or .png)")
    p_render.add_argument("--log-x", action="store_true",
                          help="logarithmic swept-parameter axis")
    p_render.add_argument("--title", default="", help="figure title")
    args = parser.parse_args(argv)

    spec = FigureSpec(csv_path=args.csv, out_path=args.out,
                      title=args.title, log_x=args.log_x)
    try:
        render_sweep(spec)
    except SchemaError as exc:
        print(f"isacfig: schema error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"isacfig: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
