"""Benchmark report figures, rendered to files next to the delimited output."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def render_bench_figures(rows, plot_dir, title=""):
    """Render benchmark figures from cmd_bench rows; returns written paths.

    Three figures: mean cost vs k (with 3-sigma error bars), per-phase time
    vs k, and peak queue entries vs k against the k*n budget line.
    """
    os.makedirs(plot_dir, exist_ok=True)
    ks = [r["k"] for r in rows]
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.errorbar(
        ks,
        [r["mean_cost"] for r in rows],
        yerr=[3 * r["se_cost"] for r in rows],
        marker="o",
        capsize=3,
    )
    ax.set_xlabel("k")
    ax.set_ylabel("mean disagreement cost")
    ax.set_title(f"Cost vs capacity {title}".strip())
    ax.grid(True, alpha=0.3)
    path = os.path.join(plot_dir, "cost_vs_k.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, [r["ingest_us_per_edge"] for r in rows], marker="o", label="ingest (us/edge)")
    ax.set_xlabel("k")
    ax.set_ylabel("ingest time (us/edge)")
    ax2 = ax.twinx()
    ax2.plot(
        ks,
        [r["finalize_ms"] for r in rows],
        marker="s",
        color="tab:orange",
        label="finalize (ms)",
    )
    ax2.set_ylabel("finalize time (ms)")
    lines1, labels1 = ax.get_legend_handles_labels()
    lines2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(lines1 + lines2, labels1 + labels2, loc="upper left")
    ax.set_title(f"Phase times vs capacity {title}".strip())
    ax.grid(True, alpha=0.3)
    path = os.path.join(plot_dir, "time_vs_k.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, [r["peak_entries"] for r in rows], marker="o", label="peak entries")
    ax.plot(ks, [r["kn_bound"] for r in rows], linestyle="--", label="k*n budget")
    ax.set_xlabel("k")
    ax.set_ylabel("queue entries")
    ax.legend()
    ax.set_title(f"Memory vs capacity {title}".strip())
    ax.grid(True, alpha=0.3)
    path = os.path.join(plot_dir, "memory_vs_k.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(path)

    return paths
