"""Scaling plot for benchmark rows."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def scaling_figure(rows, path: str) -> None:
    """Save time against edge count, with the line through the origin and
    the largest run for reference, plus throughput per size."""
    ms = [r[2] for r in rows]
    m = [r[1] for r in rows]
    fig, (ax_t, ax_r) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax_t.plot(m, ms, "o-", label="measured")
    if m and m[-1]:
        ax_t.plot([0, m[-1]], [0, ms[-1]], "--", color="grey", label="linear")
    ax_t.set_xlabel("edges")
    ax_t.set_ylabel("ms (test + embedding)")
    ax_t.legend()
    ax_r.plot(m, [e / (t / 1e3) if t else 0 for e, t in zip(m, ms)], "s-")
    ax_r.set_xlabel("edges")
    ax_r.set_ylabel("edges per second")
    for ax in (ax_t, ax_r):
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
