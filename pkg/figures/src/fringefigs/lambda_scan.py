"""Wavelength scan: exit angle of each diffraction-order channel versus wavelength."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import read_rows

REQUIRED = ("lambda_angstrom", "order_sum", "exit_angle_deg")


def render(csv_path: str | Path, out_path: str | Path) -> None:
    rows = read_rows(csv_path, REQUIRED)
    fig, ax = plt.subplots(figsize=(7, 4.5))

    by_order: dict[int, list[tuple[float, float]]] = {}
    for row in rows:
        by_order.setdefault(int(row["order_sum"]), []).append(
            (float(row["lambda_angstrom"]), float(row["exit_angle_deg"]))
        )
    for order in sorted(by_order, reverse=True):
        points = sorted(by_order[order])
        ax.plot(
            [p[0] for p in points],
            [p[1] for p in points],
            lw=1.2,
            label=f"order sum {order:+d}",
        )
    if by_order:
        ax.legend(loc="best", fontsize=8)

    ax.set_xlabel("wavelength (angstrom)")
    ax.set_ylabel("exit angle (deg)")
    ax.set_title("Channel positions versus wavelength")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
