"""Fringe pattern plot from a pattern CSV (one exit channel)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import read_rows

REQUIRED = ("phi_rad", "sin_phi", "intensity", "intensity_no_envelope")


def render(csv_path: str | Path, out_path: str | Path) -> None:
    rows = read_rows(csv_path, REQUIRED)
    fig, ax = plt.subplots(figsize=(7, 4))

    if rows:
        sin_phi = [float(r["sin_phi"]) for r in rows]
        with_env = [float(r["intensity"]) for r in rows]
        without = [float(r["intensity_no_envelope"]) for r in rows]
        ax.plot(sin_phi, without, lw=0.9, label="modulation")
        if with_env != without:
            ax.plot(sin_phi, with_env, lw=0.9, ls="--", label="with envelope")
        ax.legend(loc="upper right")

    ax.set_xlabel("sin(phi), offset from the channel centre")
    ax.set_ylabel("intensity (arb. units)")
    ax.set_title("Far-field fringe pattern")
    ax.margins(x=0)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
