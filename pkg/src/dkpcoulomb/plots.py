"""Figure rendering for the CLI report paths.

Every command that writes a delimited file drops one PNG next to it: level
diagrams for spectrum tables, component profiles for wavefunction exports,
a measured-vs-tolerance chart for verification reports. Rendering is
headless and deterministic in layout; these are working plots, not
publication figures.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "save_level_diagram",
    "save_profile_figure",
    "save_residual_chart",
]


def save_level_diagram(levels, path) -> None:
    """Horizontal-bar level diagram, one column per (branch, j)."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0), dpi=120)
    columns = []
    for lv in levels:
        key = (lv.branch.value, lv.j)
        if key not in columns:
            columns.append(key)
    for lv in levels:
        x = columns.index((lv.branch.value, lv.j))
        ax.hlines(lv.e_over_mc2, x - 0.35, x + 0.35, lw=1.8)
        ax.annotate(f"n={lv.n}", (x + 0.38, lv.e_over_mc2), fontsize=7,
                    va="center")
    ax.set_xticks(range(len(columns)))
    ax.set_xticklabels([f"{b}\nj={j}" for b, j in columns], fontsize=8)
    ax.set_ylabel("epsilon / mc^2")
    ax.set_title("bound levels")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_profile_figure(r, values, residual, path) -> None:
    """Six-component profile plus the worst per-point equation residual."""
    r = np.asarray(r, dtype=float)
    fig, (ax0, ax1) = plt.subplots(
        2, 1, figsize=(7.0, 6.5), dpi=120, sharex=True,
        gridspec_kw={"height_ratios": [3, 1]},
    )
    for name, vals in values.items():
        ax0.plot(r, vals, lw=1.2, label=name)
    ax0.legend(fontsize=8, ncol=3)
    ax0.set_ylabel("amplitude (peak-normalized)")
    ax0.set_title("radial profile")
    ax1.semilogy(r, np.maximum(np.asarray(residual, dtype=float), 1e-20), lw=1.0)
    ax1.set_xlabel("r")
    ax1.set_ylabel("worst residual")
    ax1.set_xscale("log")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_residual_chart(names, measured, tolerances, path) -> None:
    """Log-scale measured-vs-tolerance bars for the verification report."""
    names = list(names)
    measured = [float(m) for m in measured]
    tolerances = [float(t) for t in tolerances]
    xs = np.arange(len(names))
    floor = 1e-18
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=120)
    ax.bar(xs, [max(m, floor) if np.isfinite(m) else floor for m in measured],
           width=0.55, label="measured")
    ax.scatter(xs, tolerances, marker="_", s=500, color="k", label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(xs)
    ax.set_xticklabels(names, fontsize=8, rotation=30, ha="right")
    ax.set_ylabel("residual / deviation")
    ax.set_title("verification criteria")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
