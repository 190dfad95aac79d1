"""Matplotlib renderings of the report tables.

Every renderer takes already-computed rows and writes one PNG next to
the delimited output; nothing here feeds back into the measures.
"""

from __future__ import annotations

from pathlib import Path

from .report import BIN_LABELS, RDCG_BIN_LABELS, HistogramReport


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120)
    _plt().close(fig)


def render_overlap_histogram(histogram: HistogramReport, path: str | Path) -> Path:
    """Grouped bar chart of query counts per overlap bin, one group per market."""
    plt = _plt()
    path = Path(path)
    markets = sorted(histogram.per_market) or ["ALL"]
    series = {m: histogram.per_market.get(m, histogram.counts) for m in markets}
    x = range(len(BIN_LABELS))
    width = 0.8 / len(markets)
    fig, ax = plt.subplots(figsize=(9, 4.5))
    for i, market in enumerate(markets):
        ax.bar([xi + i * width for xi in x], series[market], width=width, label=market)
    ax.set_xticks([xi + 0.4 - width / 2 for xi in x])
    ax.set_xticklabels(BIN_LABELS, rotation=45, ha="right")
    ax.set_xlabel("URL overlap (Jaccard ratio)")
    ax.set_ylabel("queries")
    ax.legend()
    fig.tight_layout()
    _save(fig, path)
    return path


def render_perturbation_sweep(rows: list[dict], path: str | Path) -> Path:
    """One panel per measure column: value vs block position, a line per block size."""
    plt = _plt()
    path = Path(path)
    measure_cols = [c for c in rows[0] if c.startswith(("footrule_", "kendall_"))]
    counts = sorted({r["common_count"] for r in rows})
    fig, axes = plt.subplots(1, len(measure_cols), figsize=(4.2 * len(measure_cols), 4), squeeze=False)
    for ax, col in zip(axes[0], measure_cols):
        for count in counts:
            pts = [(r["block_position"], r[col]) for r in rows if r["common_count"] == count]
            ax.plot([p for p, _ in pts], [v for _, v in pts], linewidth=0.5 + 0.25 * count)
        ax.set_title(col)
        ax.set_xlabel("block position")
        ax.set_ylim(-1.05, 1.05)
    axes[0][0].set_ylabel("normalized score")
    fig.tight_layout()
    _save(fig, path)
    return path


def render_dcg_scatter(rows: list[dict], path: str | Path) -> Path:
    """Relative DCG against URL overlap and against the normalized footrule."""
    plt = _plt()
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    r = [row["r_dcg"] for row in rows]
    ax1.scatter(r, [row["j_url_5"] for row in rows], s=12)
    ax1.set_xlabel("relative DCG")
    ax1.set_ylabel("URL Jaccard (top 5)")
    ax2.scatter(r, [row["s_url_5"] for row in rows], s=12)
    ax2.set_xlabel("relative DCG")
    ax2.set_ylabel("normalized footrule (top 5)")
    for ax in (ax1, ax2):
        ax.set_xlim(-1.05, 1.05)
    fig.tight_layout()
    _save(fig, path)
    return path


def render_rdcg_histogram(bins: list[int], path: str | Path) -> Path:
    """Distribution of relative DCG over the low-overlap queries."""
    plt = _plt()
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(bins)), bins)
    ax.set_xticks(range(len(bins)))
    ax.set_xticklabels(RDCG_BIN_LABELS, rotation=45, ha="right")
    ax.set_xlabel("relative DCG (low-overlap queries)")
    ax.set_ylabel("queries")
    fig.tight_layout()
    _save(fig, path)
    return path
