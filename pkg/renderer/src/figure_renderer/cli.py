"""CLI: render spectra|trace|pc --input a.csv [b.csv ...] --label L ... --output out.svg"""

from __future__ import annotations

import argparse
import sys

from .render import FigureKind, RenderSpec, render
from .schemas import SchemaError


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render figures from reservoir-stability CSV artifacts",
    )
    parser.add_argument("kind", choices=["spectra", "trace", "pc"])
    parser.add_argument("--input", nargs="+", required=True,
                        help="one or more harness CSV files")
    parser.add_argument("--label", nargs="*", default=[],
                        help="one label per input (defaults to filenames)")
    parser.add_argument("--output", required=True,
                        help="image path; extension picks the format (svg, pdf, png)")
    args = parser.parse_args(argv)

    spec = RenderSpec(
        figure=FigureKind(args.kind),
        inputs=args.input,
        labels=args.label,
        output=args.output,
    )
    try:
        path = render(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
