"""Summary figures rendered next to catalog / audit output files."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

BRANCH_ORDER = ["1i", "1ii", "1iii", "2i", "2ii", "3"]


def _fig_path(out_path: Path, suffix: str) -> Path:
    return out_path.with_name(f"{out_path.stem}_{suffix}.png")


def save_catalog_figures(rows: list[dict], out_path: Path) -> list[Path]:
    """Branch distribution and H1 torsion-order histogram for a catalog."""
    written = []

    branch_counts = Counter(row["branch"] for row in rows)
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [b for b in BRANCH_ORDER if b in branch_counts]
    ax.bar(labels, [branch_counts[b] for b in labels], color="steelblue")
    ax.set_xlabel("identification branch")
    ax.set_ylabel("admissible tuples")
    ax.set_title("Catalog: tuples per identification branch")
    path = _fig_path(out_path, "branches")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    written.append(path)

    orders = []
    infinite = 0
    for row in rows:
        h1 = row["h1"]
        if h1["rank"] > 0:
            infinite += 1
        else:
            total = 1
            for d in h1["torsion"]:
                total *= d
            orders.append(total)
    fig, ax = plt.subplots(figsize=(6, 4))
    if orders:
        ax.hist(orders, bins=min(40, max(orders)), color="darkorange")
    ax.set_xlabel("|H1| (finite part)")
    ax.set_ylabel("admissible tuples")
    title = "Catalog: first-homology orders"
    if infinite:
        title += f" ({infinite} with infinite H1 omitted)"
    ax.set_title(title)
    path = _fig_path(out_path, "h1")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    written.append(path)

    return written


def save_audit_figures(report: dict, out_path: Path) -> list[Path]:
    """Violations-per-branch and coverage summary for an audit report."""
    written = []

    branch_counts = Counter(v["branches"][0] for v in report["violations"])
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [b for b in BRANCH_ORDER if b in branch_counts]
    ax.bar(labels or ["none"], [branch_counts[b] for b in labels] or [0], color="firebrick")
    ax.set_xlabel("identification branch")
    ax.set_ylabel("violating class pairs")
    ax.set_title("Audit: identification violations by branch")
    path = _fig_path(out_path, "violations")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    written.append(path)

    covered = sum(1 for t in report["targets"] if t["covered"])
    missing = len(report["targets"]) - covered
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(["covered", "uncovered"], [covered, missing], color=["seagreen", "firebrick"])
    ax.set_ylabel("grid manifolds")
    ax.set_title("Audit: census coverage of grid manifolds")
    path = _fig_path(out_path, "coverage")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    written.append(path)

    return written
