"""Figures rendered from the plot-data tables. Files only, no display."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

BOT_COLOUR = "#b2182b"
HUMAN_COLOUR = "#2166ac"

STYLE = {
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.titlesize": 10,
    "legend.frameon": False,
    "savefig.dpi": 120,
}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    # no Software/date metadata so repeated runs give identical files
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def _stacked(ax, labels, bots, humans):
    x = range(len(labels))
    ax.bar(x, humans, color=HUMAN_COLOUR, label="human")
    ax.bar(x, bots, bottom=humans, color=BOT_COLOUR, label="automated")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=90)
    ax.legend(loc="upper right")


def technique_bars(rows: Sequence[Mapping], path: Path) -> Path:
    """Bots and humans per technique, per honeypot running it, most precise first."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(8, 3.5))
        _stacked(ax, [f"τ{r['technique']}" for r in rows],
                 [r["bots_per_honeypot"] for r in rows], [r["humans_per_honeypot"] for r in rows])
        ax.set_ylabel("attracted users per honeypot")
        return _save(fig, path)


def honeypot_bars(rows: Sequence[Mapping], path: Path) -> Path:
    ordered = sorted(rows, key=lambda r: (-(r["precision"] if r["precision"] is not None else -1), r["honeypot"]))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(9, 3.5))
        _stacked(ax, [str(r["techniques"]) for r in ordered],
                 [r["n_bots"] for r in ordered], [r["n_humans"] for r in ordered])
        ax.set_ylabel("attracted users")
        return _save(fig, path)


def follower_boxes(profiles: Sequence[Mapping], path: Path) -> Path:
    """Friends and followers of attracted accounts on a log axis."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4, 3.5))
        data = [[max(p["friends_count"], 1) for p in profiles], [max(p["followers_count"], 1) for p in profiles]]
        ax.boxplot(data)
        ax.set_xticks([1, 2])
        ax.set_xticklabels(["friends", "followers"])
        ax.set_yscale("log")
        return _save(fig, path)


def age_histogram(profiles: Sequence[Mapping], path: Path, bins: int = 20) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3))
        ax.hist([p["account_age_days"] for p in profiles], bins=bins, color="#777777")
        ax.set_xlabel("account age (days)")
        ax.set_ylabel("accounts")
        return _save(fig, path)


def render_all(outdir: Path, technique_rows, honeypot_rows, profiles) -> list[Path]:
    """Write every figure that has data; returns the files written."""
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if technique_rows:
        written.append(technique_bars(technique_rows, outdir / "techniques.png"))
    if any(r["N"] for r in honeypot_rows):
        written.append(honeypot_bars(honeypot_rows, outdir / "honeypots.png"))
    if profiles:
        written.append(follower_boxes(profiles, outdir / "followers.png"))
        written.append(age_histogram(profiles, outdir / "account_age.png"))
    return written
