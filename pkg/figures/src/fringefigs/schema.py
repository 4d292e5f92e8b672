"""Shared CSV schema validation for all figure renderers.

Renderers draw only what the CSV declares; the first thing each one does is
check the header against the columns its figure needs, and fail naming
whatever is missing.
"""

from __future__ import annotations

import csv
from pathlib import Path


class SchemaError(ValueError):
    """The CSV does not carry the columns this figure requires."""


def read_rows(csv_path: str | Path, required: tuple[str, ...]) -> list[dict[str, str]]:
    """Read a CSV after verifying its header covers the required columns."""
    path = Path(csv_path)
    with path.open(newline="", encoding="utf-8") as stream:
        reader = csv.DictReader(stream)
        fieldnames = reader.fieldnames or []
        missing = [column for column in required if column not in fieldnames]
        if missing:
            raise SchemaError(
                f"{path}: missing required column(s): {', '.join(missing)}"
            )
        return list(reader)
