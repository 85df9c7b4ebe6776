"""Render report curves and diagrams to figure files.

Used by the CLI's --plot option: for each homological dimension one panel
grid over the stages q, Betti curves as blue steps and spectral gaps as red
lines, plus a persistence-diagram scatter when diagrams were computed.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_curves(result, outdir: str, stem: str, N: int) -> list[str]:
    """One figure per dimension; returns the written paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    dims = sorted({ch.n for ch in result.channels})
    xs = result.critical_values
    for n in dims:
        chans = [ch for ch in result.channels if ch.n == n]
        fig, axes = plt.subplots(
            1, len(chans), figsize=(3.2 * len(chans), 2.8), squeeze=False, sharex=True
        )
        for ax, ch in zip(axes[0], chans):
            ax.step(xs, ch.betti, where="post", color="tab:blue", label=f"betti {ch.n},{ch.q}")
            ax.set_xlabel("filtration radius")
            ax.set_ylabel(f"betti ({ch.n},{ch.q})", color="tab:blue")
            if ch.lambda1 is not None:
                twin = ax.twinx()
                twin.plot(xs, ch.lambda1, color="tab:red", marker=".", lw=1)
                twin.set_ylabel(f"gap ({ch.n},{ch.q})", color="tab:red")
        fig.suptitle(f"N={N}, dimension {n}")
        fig.tight_layout()
        path = os.path.join(outdir, f"{stem}_N{N}_dim{n}_curves.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written


def plot_diagrams(result, outdir: str, stem: str, N: int) -> list[str]:
    """Persistence diagram scatter per dimension; infinite deaths on the top edge."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    dims = sorted({ch.n for ch in result.channels if ch.diagram is not None})
    if not dims:
        return written
    finite_max = max(result.critical_values) if result.critical_values else 1.0
    top = finite_max * 1.1 if finite_max > 0 else 1.0
    for n in dims:
        chans = [ch for ch in result.channels if ch.n == n and ch.diagram is not None]
        fig, ax = plt.subplots(figsize=(3.6, 3.6))
        for ch in chans:
            births, deaths, sizes = [], [], []
            for b, d, m in ch.diagram:
                births.append(b)
                deaths.append(top if math.isinf(d) else d)
                sizes.append(18 + 10 * (m - 1))
            if births:
                ax.scatter(births, deaths, s=sizes, alpha=0.7, label=f"q={ch.q}")
        ax.plot([0, top], [0, top], color="gray", lw=0.8)
        ax.axhline(top, color="gray", lw=0.6, ls="--")
        ax.set_xlabel("birth")
        ax.set_ylabel("death")
        ax.set_title(f"N={N}, dimension {n}")
        ax.legend(fontsize=7)
        fig.tight_layout()
        path = os.path.join(outdir, f"{stem}_N{N}_dim{n}_diagram.png")
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
