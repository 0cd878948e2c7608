"""Figures for sweep summaries and single decompositions (matplotlib, Agg)."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .sweep import SweepSummary  # noqa: E402


def _save(fig, out_dir: Path, name: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def gm_count_figure(summary: SweepSummary, out_dir) -> Path:
    """Genus-minimising count per k, with mismatching records marked."""
    gm = defaultdict(int)
    bad = defaultdict(int)
    for r in summary.records:
        gm[r.k] += r.gm
        bad[r.k] += not r.consistent
    ks = sorted(set(gm) | set(bad))
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(ks, [gm[k] for k in ks], "o-", ms=3, label="genus-minimising")
    if any(bad.values()):
        ax.plot(ks, [bad[k] for k in ks], "rx", label="mismatch")
    ax.set_xlabel("k")
    ax.set_ylabel("count")
    ax.set_title(summary.kind)
    ax.legend()
    return _save(fig, Path(out_dir), f"{summary.kind}_gm_count.png")


def window_figure(summary: SweepSummary, out_dir) -> Path:
    """Scatter of (k, p - k^2), filled where the triple is genus-minimising."""
    pts = [(r.k, r.p - r.k * r.k, r.gm, r.consistent) for r in summary.records
           if r.p is not None]
    fig, ax = plt.subplots(figsize=(7, 5))
    for gm, colour, label in ((False, "0.85", "not gm"), (True, "C0", "gm")):
        sel = [(k, dp) for k, dp, g, _ in pts if g == gm]
        if sel:
            ax.scatter(*zip(*sel), s=2, c=colour, label=label)
    bad = [(k, dp) for k, dp, _, ok in pts if not ok]
    if bad:
        ax.scatter(*zip(*bad), s=12, c="red", marker="x", label="inconsistent")
    ax.set_xlabel("k")
    ax.set_ylabel("p - k^2")
    ax.set_title(summary.kind)
    ax.legend(markerscale=4)
    return _save(fig, Path(out_dir), f"{summary.kind}_window.png")


def gbar_figure(summary: SweepSummary, out_dir) -> Path:
    """Gbar / p for each record; the genus-minimising threshold is 2."""
    ratios = [(r.k, r.gbar / r.p) for r in summary.records if r.p]
    fig, ax = plt.subplots(figsize=(7, 4))
    if ratios:
        ax.scatter(*zip(*ratios), s=2, alpha=0.4)
    ax.axhline(2.0, color="red", lw=0.8)
    ax.set_xlabel("k")
    ax.set_ylabel("Gbar / p")
    ax.set_title(summary.kind)
    return _save(fig, Path(out_dir), f"{summary.kind}_gbar.png")


def summary_figures(summary: SweepSummary, out_dir) -> list[Path]:
    paths = [gm_count_figure(summary, out_dir), gbar_figure(summary, out_dir)]
    if summary.kind in ("verify-theorem", "verify-reduction"):
        paths.append(window_figure(summary, out_dir))
    return paths


def spectrum_figure(k: int, q: int, values, out_dir) -> Path:
    """Bar plot of v over consecutive z-points."""
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.bar(range(len(values)), values, width=0.8)
    ax.set_xlabel("r")
    ax.set_ylabel("v(z_r, z_r+1)")
    ax.set_title(f"k={k}, q={q}")
    return _save(fig, Path(out_dir), f"spectrum_k{k}_q{q}.png")
