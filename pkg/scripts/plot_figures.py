"""Draw time traces, histograms and the bifurcation diagram from a
``reproduce-paper`` output directory.

    python scripts/plot_figures.py results/paper
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from nmrjj.io import read_table


def traces(out: Path, tag: str, ax_t, ax_h):
    q = read_table(out / "series" / f"quantum_{tag}.csv")
    c = read_table(out / "classical" / f"classical_{tag}.csv")
    h = read_table(out / "histograms" / f"histogram_{tag}.csv")
    ax_t.plot(q["s"], q["z"], "o", ms=3, label="quantum")
    ax_t.plot(c["s"], c["z"], "-", lw=1, label="mean field")
    ax_t.set_xlabel("s = w1 t")
    ax_t.set_ylabel("<Iz>/I")
    ax_t.set_ylim(-1.05, 1.05)
    ax_t.set_title(tag)
    ax_t.legend(fontsize=7)
    width = h["bin_center"][1] - h["bin_center"][0]
    ax_h.barh(h["bin_center"], h["count"], height=width, alpha=0.6)
    ax_h.plot(h["gaussian"], h["bin_center"], "k-", lw=1)
    ax_h.set_ylim(-1.05, 1.05)
    ax_h.set_xlabel("count")


def main(out: Path):
    fig, axes = plt.subplots(2, 2, figsize=(8, 6), gridspec_kw={"width_ratios": [3, 1]})
    traces(out, "L0.67_north", *axes[0])
    traces(out, "L2.70_south", *axes[1])
    fig.tight_layout()
    fig.savefig(out / "time_traces.png", dpi=150)

    curve = read_table(out / "bifurcation_curve.csv")
    sweep = read_table(out / "sweep.csv")
    lam = np.array(sweep["lambda"])
    north = np.array(sweep["hemisphere"]) == "north"
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(curve["lambda"], curve["z0_plus"], "k-")
    ax.plot(curve["lambda"], curve["z0_minus"], "k-")
    for mask, marker, hemi in ((north, "o", "north"), (~north, "s", "south")):
        ax.errorbar(lam[mask], np.array(sweep["z_mean_quantum"])[mask], yerr=0.1, fmt=marker, capsize=2,
                    label=f"quantum ({hemi})")
        ax.plot(lam[mask], np.array(sweep["z_mean_classical"])[mask], marker, mfc="none",
                label=f"mean field ({hemi})")
    ax.axhline(np.cos(np.pi / 4), ls="--", lw=0.8)
    ax.axhline(np.cos(3 * np.pi / 4), ls="--", lw=0.8)
    ax.set_xlabel("lambda")
    ax.set_ylabel("temporal mean z")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "bifurcation.png", dpi=150)


if __name__ == "__main__":
    main(Path(sys.argv[1] if len(sys.argv) > 1 else "results/paper"))
