"""Figures and delimited tables for density convergence runs."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import matplotlib as mpl

mpl.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .density import DensityReport, render  # noqa: E402

CSV_COLUMNS = ["X", "count_class", "count_squarefree", "rel_empirical", "rel_predicted", "abs_error"]


def decade_grid(limit: int, start: int = 100) -> list[int]:
    """Powers of ten from ``start`` below ``limit``, then ``limit`` itself."""
    grid = []
    x = start
    while x < limit:
        grid.append(x)
        x *= 10
    grid.append(limit)
    return grid


def write_series_csv(series: Sequence[DensityReport], path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for rep in series:
            rel = float(rep.rel_density_empirical)
            pred = float(rep.predicted_rel_density)
            w.writerow([rep.X, rep.count_class, rep.count_squarefree, render(rel), str(rep.predicted_rel_density), render(abs(rel - pred))])
    return path


def plot_density_convergence(series: Sequence[DensityReport], path, dpi: int = 150) -> Path:
    """Two panels: the empirical relative density against its limit, and the error on log axes."""
    path = Path(path)
    xs = [rep.X for rep in series]
    rel = [float(rep.rel_density_empirical) for rep in series]
    pred = float(series[0].predicted_rel_density)
    err = [abs(v - pred) for v in rel]
    r, N = series[0].r, series[0].N

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.semilogx(xs, rel, "o-", color="C0", label="sieve")
    ax1.axhline(pred, color="C3", ls="--", lw=1, label=f"limit {series[0].predicted_rel_density}")
    ax1.set_xlabel("X")
    ax1.set_ylabel("relative density")
    ax1.set_title(f"square-free t = {r} mod {N}")
    ax1.legend(frameon=False)

    # an exact hit has zero error; keep it visible on the log axis
    floor = min([e for e in err if e > 0], default=1e-12) / 10
    ax2.loglog(xs, [max(e, floor) for e in err], "s-", color="C2")
    ax2.set_xlabel("X")
    ax2.set_ylabel("|empirical - limit|")
    ax2.set_title("convergence")

    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
