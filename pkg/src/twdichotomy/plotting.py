"""Figures for survey output, written straight to files (Agg backend)."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .dichotomy import SurveyRow  # noqa: E402


def plot_survey(rows: Sequence[SurveyRow], path: str | Path, title: str = "") -> Path:
    """Tree-width range per ``n`` with acceptance counts on a second axis."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 3.6))
    have = [r for r in rows if r.accepted]
    if have:
        ns = [r.n for r in have]
        ax.fill_between(ns, [r.tw_min for r in have], [r.tw_max for r in have],
                        alpha=0.25, color="C0", label="min to max")
        ax.plot(ns, [r.tw_med for r in have], "o-", color="C0", label="median")
        ax.set_ylim(min(r.tw_min for r in have) - 0.5, max(r.tw_max for r in have) + 1.5)
    ax.set_xlabel("n")
    ax.set_ylabel("tree-width")
    ax.yaxis.get_major_locator().set_params(integer=True)
    twin = ax.twinx()
    twin.bar([r.n for r in rows], [r.accepted for r in rows], alpha=0.2, color="C1", width=0.6)
    twin.set_ylabel("accepted samples", color="C1")
    ax.set_zorder(twin.get_zorder() + 1)
    ax.patch.set_visible(False)
    if have:
        ax.legend(loc="upper left", ncol=2, frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_family_widths(series: dict[str, Sequence[tuple[int, int, int]]], path: str | Path) -> Path:
    """One line per family: member index against exact tree-width."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5, 3.6))
    for name, pts in series.items():
        ax.plot([p[0] for p in pts], [p[2] for p in pts], "o-", label=name)
    ax.set_xlabel("member index i")
    ax.set_ylabel("tree-width")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
