"""Figures for the state-complexity report."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIGURE_KWARGS = dict(figsize=(5.0, 3.4), dpi=150)
GRID_KWARGS = dict(linestyle="-", color="black", linewidth=0.5, alpha=0.3)


def plot_complexity(rows, path: str | Path):
    """State counts against k on a log axis; returns the written path.

    The NFA column is drawn dashed since it is a quoted bound, not a measured size.
    """
    ks = [r.k for r in rows]
    fig, ax = plt.subplots(**FIGURE_KWARGS)
    try:
        ax.plot(ks, [r.corrected_states for r in rows], "o-", label="Rev-WKA (corrected, 2k+3)")
        ax.plot(ks, [r.verbatim_states for r in rows], "s:", mfc="none", label="Rev-WKA (verbatim table)")
        ax.plot(ks, [r.nfa_reference for r in rows], "^--", label=r"NFA reference $2^{k+1}$")
        ax.set_yscale("log", base=2)
        ax.set_xlabel("k")
        ax.set_ylabel("states")
        ax.set_xticks(ks)
        ax.grid(True, **GRID_KWARGS)
        ax.legend(loc="upper left", fontsize=8)
        fig.tight_layout()
        path = Path(path)
        fig.savefig(path)
    finally:
        plt.close(fig)
    return path
