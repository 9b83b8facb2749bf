"""Matplotlib figure rendering for the report paths.

Figures are written next to the delimited output they visualize.  The
PNG software tag is suppressed so reruns produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_PNG_METADATA = {"Software": None}
_OBJECTIVE_LABELS = {
    "qual": "quality gain",
    "sem": "semantic coherence",
    "ra": "review availability",
}


def _save(fig, path: str | Path) -> None:
    fig.savefig(str(path), dpi=100, metadata=_PNG_METADATA)
    plt.close(fig)


def render_distribution_boxplots(
    pooled: dict[str, dict[str, list[float]]], path: str | Path
) -> None:
    """One panel per objective, one box per algorithm, outliers hidden."""
    algorithms = sorted(pooled)
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, objective in zip(axes, ("qual", "sem", "ra")):
        data = [pooled[a].get(objective, []) or [0.0] for a in algorithms]
        ax.boxplot(data, tick_labels=algorithms, showfliers=False)
        ax.set_title(_OBJECTIVE_LABELS[objective])
        ax.tick_params(axis="x", rotation=45)
    fig.suptitle("Objective distributions by algorithm")
    fig.tight_layout()
    _save(fig, path)


def render_ablation_scatter(
    rows: list[tuple[str, float, float]],
    x_label: str,
    path: str | Path,
) -> None:
    """Scatter of one objective against availability, colored by mode."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for mode, color, marker in (("ra_plus", "tab:blue", "o"), ("ra_minus", "tab:red", "x")):
        xs = [x for m, x, _ in rows if m == mode]
        ys = [y for m, _, y in rows if m == mode]
        ax.scatter(xs, ys, s=18, alpha=0.6, c=color, marker=marker, label=mode)
    ax.set_xlabel(_OBJECTIVE_LABELS.get(x_label, x_label))
    ax.set_ylabel(_OBJECTIVE_LABELS["ra"])
    ax.legend()
    fig.tight_layout()
    _save(fig, path)


def render_ratio_bars(rows: list[tuple[str, str, float]], path: str | Path) -> None:
    """Reviewable-solution ratios by run label."""
    labels = [f"{label}/{seed}" for label, seed, _ in rows]
    values = [ratio for _, _, ratio in rows]
    fig, ax = plt.subplots(figsize=(max(6, 0.7 * len(rows)), 4))
    ax.bar(range(len(rows)), values, color="tab:blue")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("reviewable ratio")
    fig.tight_layout()
    _save(fig, path)


def render_front_scatter(
    points: list[tuple[float, float, float]], path: str | Path
) -> None:
    """Pairwise objective scatter of one front."""
    pairs = (("qual", "sem", 0, 1), ("qual", "ra", 0, 2), ("sem", "ra", 1, 2))
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, (x_name, y_name, xi, yi) in zip(axes, pairs):
        ax.scatter([p[xi] for p in points], [p[yi] for p in points], s=20, alpha=0.7)
        ax.set_xlabel(_OBJECTIVE_LABELS[x_name])
        ax.set_ylabel(_OBJECTIVE_LABELS[y_name])
    fig.suptitle("Front objectives")
    fig.tight_layout()
    _save(fig, path)
