"""Command line entry point: plotkit <figure-id> --in <csv> --out <png>."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from plotkit.render import FIGURE_IDS, FigureJob, render
from plotkit.schema import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plotkit", description="Render a wgcasimir scan file as a figure.")
    parser.add_argument("figure_id", choices=FIGURE_IDS)
    parser.add_argument("--in", dest="inputs", type=Path, action="append", required=True,
                        help="scan CSV or JSON; repeat to combine files over the same axes")
    parser.add_argument("--out", type=Path, required=True, help="output image (format from the suffix)")
    parser.add_argument("--cmap", default="viridis")
    parser.add_argument("--xlabel")
    parser.add_argument("--ylabel")
    parser.add_argument("--no-overlays", dest="overlays", action="store_false")
    parser.add_argument("--log", action="store_true", help="logarithmic colour scale")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = FigureJob(inputs=args.inputs, figure_id=args.figure_id, output=args.out, cmap=args.cmap,
                    xlabel=args.xlabel, ylabel=args.ylabel, overlays=args.overlays, log=args.log)
    try:
        summary = render(job)
    except (SchemaError, FileNotFoundError) as err:
        print(f"plotkit: error: {err}", file=sys.stderr)
        return 2
    print(f"{summary.output}: {summary.panels} panels, {summary.overlay_curves} overlay curves, "
          f"{summary.mask_markers} masked points")
    return 0


if __name__ == "__main__":
    sys.exit(main())
