"""Incidence-angle scan map: exit channels coloured by relative strength.

Rows with empty exit fields are dark incidence angles; they are painted as
shaded bands so discontinued channel lines stand out.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import read_rows

REQUIRED = ("alpha_deg", "exit_angle_deg", "rel_intensity")


def render(csv_path: str | Path, out_path: str | Path) -> None:
    rows = read_rows(csv_path, REQUIRED)
    fig, ax = plt.subplots(figsize=(7, 4.5))

    lit = [r for r in rows if r["exit_angle_deg"]]
    dark_alphas = sorted({float(r["alpha_deg"]) for r in rows if not r["exit_angle_deg"]})
    alphas = sorted({float(r["alpha_deg"]) for r in rows})

    if dark_alphas:
        step = (
            min(b - a for a, b in zip(alphas, alphas[1:])) if len(alphas) > 1 else 1.0
        )
        for alpha in dark_alphas:
            ax.axvspan(
                alpha - step / 2, alpha + step / 2,
                color="#3b0f70", alpha=0.35, lw=0, zorder=0,
            )

    if lit:
        scatter = ax.scatter(
            [float(r["alpha_deg"]) for r in lit],
            [float(r["exit_angle_deg"]) for r in lit],
            c=[float(r["rel_intensity"]) for r in lit],
            cmap="viridis",
            vmin=0.0,
            vmax=1.0,
            s=6,
        )
        fig.colorbar(scatter, ax=ax, label="intensity relative to the strongest channel")

    if alphas:
        ax.set_xlim(min(alphas), max(alphas))
    ax.set_xlabel("incidence angle (deg)")
    ax.set_ylabel("exit angle (deg)")
    ax.set_title("Exit channels versus incidence angle")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
