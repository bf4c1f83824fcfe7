"""Report rendering: delimited summaries plus matplotlib figures.

Everything is written into one output directory:

    familiarity.csv        per-KP familiarity and percentage at the instant
    simulation.csv         replay count matrix (rows = steps, columns = docs)
    familiarity.png        percentage bars, BKPs hatched
    simulation_counts.png  per-document count trajectories over the replay
    retention.png          the forgetting curve in force
    tree_<kp>.png          node-link diagram of a KP's understanding tree
"""

from __future__ import annotations

import csv
import math
from datetime import datetime
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.lines import Line2D

from .core import KnowledgeState, retention
from .engine import Engine
from .recommend import SimulationResult
from .tree import UnderstandingTree


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_familiarity_csv(engine: Engine, state: KnowledgeState, path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["kp", "name", "bkp", "familiarity", "percentage"])
        for kp_id in sorted(engine.corpus.lexicon):
            kp = engine.corpus.lexicon[kp_id]
            writer.writerow(
                [
                    kp_id,
                    kp.display_name,
                    int(kp.is_bkp),
                    f"{state.familiarity.get(kp_id, 0.0):.6f}",
                    f"{state.percentage(kp_id):.6f}",
                ]
            )
    return path


def write_simulation_csv(result: SimulationResult, path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["step", *result.columns])
        for label, counts in result.rows:
            writer.writerow([label, *counts])
    return path


def familiarity_figure(engine: Engine, state: KnowledgeState, path: Path) -> Path:
    kp_ids = sorted(engine.corpus.lexicon)
    percentages = [state.percentage(kp) for kp in kp_ids]
    bkps = engine.corpus.bkp_ids
    fig, ax = plt.subplots(figsize=(8, max(3, 0.32 * len(kp_ids))))
    bars = ax.barh(kp_ids, percentages, color="#4878b0")
    for kp_id, bar in zip(kp_ids, bars):
        if kp_id in bkps:
            bar.set_hatch("//")
            bar.set_color("#9ecae1")
    ax.set_xlim(0, 1.05)
    ax.axvline(1.0, color="grey", linestyle=":", linewidth=1)
    ax.set_xlabel("familiarity percentage")
    ax.set_title(f"Familiarity at {state.as_of.isoformat()}")
    ax.invert_yaxis()
    return _save(fig, path)


def simulation_figure(result: SimulationResult, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(8, 4.5))
    steps = list(range(len(result.rows)))
    for col_index, doc_id in enumerate(result.columns):
        ax.plot(
            steps,
            [counts[col_index] for _, counts in result.rows],
            marker="o",
            markersize=3,
            label=doc_id,
        )
    ax.set_xticks(steps)
    ax.set_xticklabels([label for label, _ in result.rows], rotation=45, ha="right")
    ax.set_ylabel("knowledge points not understood")
    ax.set_title("Replay count matrix")
    ax.legend(ncol=2, fontsize=8)
    return _save(fig, path)


def retention_figure(engine: Engine, path: Path) -> Path:
    config = engine.config.retention
    horizon = 5 * config.stability_hours
    xs = [horizon * i / 200 for i in range(201)]
    ys = [retention(x, config) for x in xs]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(xs, ys)
    ax.axvline(config.stability_hours, color="grey", linestyle=":", linewidth=1)
    ax.annotate("1/e", (config.stability_hours, math.exp(-1)), textcoords="offset points", xytext=(6, 4))
    ax.set_xlabel("hours since session")
    ax.set_ylabel("retention")
    ax.set_title(f"Forgetting curve (stability {config.stability_hours:g} h)")
    return _save(fig, path)


def _layered_positions(tree: UnderstandingTree) -> dict[str, tuple[float, float]]:
    # Depth = longest path from the root, so shared nodes sit below all parents.
    depth: dict[str, int] = {tree.root: 0}
    order = [tree.root]
    index = 0
    while index < len(order):
        node = order[index]
        index += 1
        for child in tree.children(node):
            child_depth = depth[node] + 1
            if child_depth > depth.get(child, -1):
                depth[child] = child_depth
                order.append(child)
    layers: dict[int, list[str]] = {}
    for node in sorted(tree.node_set):
        layers.setdefault(depth.get(node, 0), []).append(node)
    positions: dict[str, tuple[float, float]] = {}
    for level, members in layers.items():
        for i, node in enumerate(members):
            positions[node] = ((i + 1) / (len(members) + 1), -level)
    return positions


def tree_figure(
    tree: UnderstandingTree,
    state: KnowledgeState | None,
    path: Path,
) -> Path:
    positions = _layered_positions(tree)
    fig, ax = plt.subplots(figsize=(9, 5.5))
    cmap = plt.get_cmap("RdYlGn")
    for parent, children in tree.edges.items():
        for child in children:
            x0, y0 = positions[parent]
            x1, y1 = positions[child]
            cut = (parent, child) in tree.cut_edges
            ax.annotate(
                "",
                xy=(x1, y1),
                xytext=(x0, y0),
                arrowprops={
                    "arrowstyle": "-|>",
                    "color": "#bbbbbb" if cut else "#666666",
                    "linestyle": "dashed" if cut else "solid",
                    "shrinkA": 12,
                    "shrinkB": 12,
                },
            )
    for node, (x, y) in positions.items():
        pct = state.percentage(node) if state is not None else 0.0
        color = cmap(pct)
        marker = "s" if node in tree.bkps else "o"
        ax.scatter([x], [y], s=900, marker=marker, color=color, edgecolors="#333333", zorder=3)
        label = node if state is None else f"{node}\n{round(pct * 100)}%"
        ax.annotate(label, (x, y), ha="center", va="center", fontsize=7, zorder=4)
    ax.set_axis_off()
    ax.set_title(f"Understanding tree of {tree.root}")
    handles = [
        Line2D([], [], marker="o", linestyle="", color="#cccccc", label="knowledge point"),
        Line2D([], [], marker="s", linestyle="", color="#cccccc", label="basic knowledge point"),
    ]
    ax.legend(handles=handles, loc="lower right", fontsize=8)
    return _save(fig, path)


def write_report(
    engine: Engine,
    out_dir: str | Path,
    at: datetime | str | None = None,
    kp_ids: tuple[str, ...] = (),
    sequence: list[str] | None = None,
    policy: str = "min-count",
) -> list[Path]:
    """Render the full report bundle; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    state = engine.knowledge_state(at)
    result = engine.run_simulation(policy=policy, sequence=sequence)

    written = [
        write_familiarity_csv(engine, state, out / "familiarity.csv"),
        write_simulation_csv(result, out / "simulation.csv"),
        familiarity_figure(engine, state, out / "familiarity.png"),
        simulation_figure(result, out / "simulation_counts.png"),
        retention_figure(engine, out / "retention.png"),
    ]
    for kp_id in kp_ids:
        tree = engine.tree(kp_id)
        written.append(tree_figure(tree, state, out / f"tree_{kp_id}.png"))
    return written
