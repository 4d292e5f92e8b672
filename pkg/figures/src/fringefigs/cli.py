"""Command-line entry: fringe-figures KIND CSV OUT."""

from __future__ import annotations

import argparse
import sys

from . import RENDERERS, SchemaError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fringe-figures",
        description="Render slabfringe CSV artifacts as figures.",
    )
    parser.add_argument("kind", choices=sorted(RENDERERS))
    parser.add_argument("csv_path")
    parser.add_argument("out_path")
    args = parser.parse_args(argv)
    try:
        render(args.csv_path, args.kind, args.out_path)
    except SchemaError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
