"""Offline figure renderers for slabfringe CSV artifacts.

Purely presentational: each renderer validates the CSV header against the
columns its figure needs, then draws. No physics is recomputed here.
"""

from pathlib import Path

from . import alpha_scan, lambda_scan, patterns, ray_diagram
from .schema import SchemaError

__version__ = "0.1.0"

RENDERERS = {
    "ray": ray_diagram.render,
    "pattern": patterns.render,
    "alpha-scan": alpha_scan.render,
    "lambda-scan": lambda_scan.render,
}


def render(csv_path: str | Path, figure_kind: str, out_image_path: str | Path) -> None:
    """Render one figure kind from a CSV artifact to an image file."""
    try:
        renderer = RENDERERS[figure_kind]
    except KeyError:
        raise ValueError(
            f"unknown figure kind {figure_kind!r}; expected one of "
            f"{', '.join(sorted(RENDERERS))}"
        ) from None
    renderer(csv_path, out_image_path)


__all__ = ["RENDERERS", "SchemaError", "render"]
