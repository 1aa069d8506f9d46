"""Optional figure rendering for CLI reports.

Figures go to PNG files next to a CSV dump of the same data, so a report
directory is self-contained: machine-readable table plus a picture.
"""

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def render_character_table(table, outdir, stem="chartable"):
    os.makedirs(outdir, exist_ok=True)
    k = table.num_irreps
    vals = table.values

    csv_path = os.path.join(outdir, f"{stem}.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["irrep", "dim"] + [f"class{c}(size {s})" for c, s in enumerate(table.classes.sizes)])
        for pi in range(k):
            w.writerow([pi, table.dims[pi]] + [f"{v.real:.6g}{v.imag:+.6g}j" for v in vals[pi]])

    fig, ax = plt.subplots(figsize=(1.2 * k + 2, 1.0 * k + 1.5))
    im = ax.imshow(vals.real, cmap="coolwarm")
    for i in range(k):
        for j in range(k):
            v = vals[i, j]
            txt = f"{v.real:.2g}" if abs(v.imag) < 1e-9 else f"{v.real:.2g}{v.imag:+.2g}i"
            ax.text(j, i, txt, ha="center", va="center", fontsize=8)
    ax.set_xlabel("conjugacy class")
    ax.set_ylabel("irrep (canonical order)")
    ax.set_title(f"Character table, |G| = {table.group.order}")
    fig.colorbar(im, ax=ax, shrink=0.8)
    png_path = os.path.join(outdir, f"{stem}.png")
    fig.savefig(png_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, png_path]


def render_k_groups(result, outdir, stem="kgroups"):
    os.makedirs(outdir, exist_ok=True)
    diag = result.snf.diagonal()

    csv_path = os.path.join(outdir, f"{stem}.csv")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["slot", "snf_diagonal"])
        for i, d in enumerate(diag):
            w.writerow([i, d])
        w.writerow([])
        w.writerow(["K0", result.k0.describe()])
        w.writerow(["K1_rank", result.k1_rank])

    fig, ax = plt.subplots(figsize=(max(4, 0.8 * len(diag) + 2), 3.2))
    ax.bar(range(len(diag)), diag, color="steelblue")
    ax.set_xlabel("diagonal slot")
    ax.set_ylabel("invariant factor")
    ax.set_title(f"SNF diagonal; {result.describe()}")
    ax.set_xticks(range(len(diag)))
    png_path = os.path.join(outdir, f"{stem}.png")
    fig.savefig(png_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, png_path]
