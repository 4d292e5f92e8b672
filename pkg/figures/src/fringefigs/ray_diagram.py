"""Ray diagram: the three-bounce paths between the slabs, from a table CSV."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import read_rows

REQUIRED = (
    "exit_angle_deg",
    "n1",
    "beta_rad",
    "n2",
    "n3",
    "path_cm",
    "amplitude_raw",
    "amplitude_paper_scaled",
    "x_A_mm",
    "x_B_mm",
    "x_C_mm",
    "transmitted",
)


def render(csv_path: str | Path, out_path: str | Path) -> None:
    rows = read_rows(csv_path, REQUIRED)
    fig, ax = plt.subplots(figsize=(9, 3.2))

    if rows:
        # layout values recovered from the data itself: the gap from any leg
        # rise over its tangent, the device edge from the exit intersections
        first = rows[0]
        gap_mm = (float(first["x_B_mm"]) - float(first["x_A_mm"])) / math.tan(
            float(first["beta_rad"])
        )
        exits = [
            float(r["x_C_mm"])
            + gap_mm * math.tan(math.radians(float(r["exit_angle_deg"])))
            for r in rows
        ]
        edge_mm = min(exits)

        thickness = 0.12 * gap_mm
        for y0 in (-thickness, gap_mm):
            ax.fill_between([0, edge_mm], y0, y0 + thickness, color="0.75", zorder=0)

        colors = {}
        palette = plt.cm.tab10.colors
        for row, exit_x in zip(rows, exits):
            angle = f"{float(row['exit_angle_deg']):.2f}"
            if angle not in colors:
                colors[angle] = palette[len(colors) % len(palette)]
            xs = [
                float(row["x_A_mm"]),
                float(row["x_B_mm"]),
                float(row["x_C_mm"]),
                exit_x,
            ]
            ys = [0.0, gap_mm, 0.0, gap_mm]
            ax.plot(xs, ys, color=colors[angle], lw=0.9)

        # incident ray, recovered from a specular first bounce when present
        specular = next((r for r in rows if r["n1"] == "0"), None)
        if specular is not None:
            alpha = float(specular["beta_rad"])
            x_a = float(specular["x_A_mm"])
            ax.plot(
                [x_a - gap_mm * math.tan(alpha), x_a],
                [gap_mm, 0.0],
                color="black",
                lw=1.4,
            )

        handles, labels = [], []
        for angle, color in sorted(colors.items(), key=lambda kv: float(kv[0])):
            handles.append(plt.Line2D([0], [0], color=color, lw=1.5))
            labels.append(f"{angle} deg")
        ax.legend(handles, labels, loc="center left", bbox_to_anchor=(1.01, 0.5))

    ax.set_xlabel("position along the slabs (mm)")
    ax.set_ylabel("gap (mm)")
    ax.set_title("Optical paths between the slabs")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
