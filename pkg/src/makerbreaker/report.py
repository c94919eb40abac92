"""Figure rendering for the report path.

Every `run` writes its delimited outputs (summary.csv, box traces) and,
unless figures are disabled, a small set of PNGs alongside them: box
runs get the weight trace against the theoretical bound, game runs get
outcome counts and the Maker move-count distribution.
"""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

FIG_DPI = 120


def _style(ax, title, xlabel, ylabel):
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)


def render_box_figure(transcripts, out_path: Path) -> Path:
    """Max box weight per round for every seed, against the bound."""
    fig, ax = plt.subplots(figsize=(8, 5))
    m = transcripts[0].params["m"]
    rounds_max = 0
    for t in transcripts:
        q = t.params.get("q")
        weights = [0.0] * m
        maxima = []
        for mv in t.moves:
            if mv.player == "boxmaker":
                deltas = (
                    [c / q for c in mv.note["claims"]]
                    if q
                    else [float(c) for c in mv.note["claims"]]
                )
                weights = [w + d for w, d in zip(weights, deltas)]
                maxima.append(max(weights))
            elif mv.player == "boxbreaker":
                weights[mv.note["reset"]] = 0.0
        rounds_max = max(rounds_max, len(maxima))
        ax.plot(range(1, len(maxima) + 1), maxima, lw=0.8, alpha=0.6)
    ks = range(1, rounds_max + 1)
    ax.plot(ks, [1 + math.log(m + k) for k in ks], "k--", lw=1.5, label="1 + ln(m+k)")
    _style(ax, f"Box weights vs. reset bound (m={m})", "round", "max scaled weight")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=FIG_DPI)
    plt.close(fig)
    return out_path


def render_outcome_figure(transcripts, out_path: Path) -> Path:
    """Outcome counts and Maker move-count distribution for a run."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.5))
    outcomes = Counter(t.outcome.kind if t.outcome else "?" for t in transcripts)
    labels = sorted(outcomes)
    ax1.bar(labels, [outcomes[k] for k in labels], color="tab:blue")
    _style(ax1, "Outcomes", "", "games")
    claims = [
        t.stats.get("maker_claims", 0)
        for t in transcripts
        if t.outcome and t.outcome.kind == "maker_win"
    ]
    if claims:
        bins = max(5, min(30, len(set(claims))))
        ax2.hist(claims, bins=bins, color="tab:green", alpha=0.8)
    _style(ax2, "Maker claims per win", "claims", "games")
    fig.tight_layout()
    fig.savefig(out_path, dpi=FIG_DPI)
    plt.close(fig)
    return out_path


def render_run_figures(cfg, transcripts, out_dir: Path) -> list:
    """The figures rendered next to a run's delimited output."""
    written = []
    if not transcripts:
        return written
    if cfg.kind == "box":
        written.append(render_box_figure(transcripts, out_dir / "box-weights.png"))
    else:
        written.append(render_outcome_figure(transcripts, out_dir / "outcomes.png"))
    return written
