"""Matplotlib figures: Hasse diagrams of forests and arrow diagrams of dual structures."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .dot import edge_style  # noqa: E402
from .serialize import label_str  # noqa: E402

_LINESTYLE = {"solid": "-", "dashed": "--", "dotted": ":", "bold": "-"}


def forest_layout(F):
    """Node -> (x, y); roots at the top, leaves spread left to right."""
    pos = {}
    col = [0]

    def place(i, depth):
        kids = F._lower[i]
        if not kids:
            x = col[0]
            col[0] += 1
        else:
            xs = [place(c, depth + 1) for c in kids]
            x = sum(xs) / len(xs)
        pos[F.elements[i]] = (x, -depth)
        return x

    for i in range(len(F)):
        if not F._upper[i]:
            place(i, 0)
    return pos


def plot_forest(F, ax=None, title=None):
    if ax is None:
        _, ax = plt.subplots(figsize=(max(3, 0.8 * len(F)), 3))
    pos = forest_layout(F)
    for lo, hi in F.covers:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="0.3", lw=1, zorder=1)
    for e, (x, y) in pos.items():
        ax.scatter([x], [y], s=60, color="white", edgecolor="black", zorder=2)
        if len(F) <= 30:
            ax.annotate(label_str(e), (x, y), xytext=(4, 4), textcoords="offset points", fontsize=6)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def structure_layout(X):
    """Points grouped by class of the quotient forest, layered by its depth."""
    from .translation import sim_classes, cover_classes

    sim = sim_classes(X)
    lay = cover_classes(X, sim)
    depth = lay.order._depths
    layers = {}
    for c, members in enumerate(sim.classes):
        layers.setdefault(depth[c], []).append(sorted(members))
    pos = {}
    for d, groups in layers.items():
        x = 0.0
        for g in groups:
            for p in g:
                pos[p] = (x, -d)
                x += 1
            x += 0.6
    return pos


def plot_structure(X, ax=None, title=None):
    if ax is None:
        _, ax = plt.subplots(figsize=(max(4, 0.6 * len(X)), 3.5))
    pos = structure_layout(X)
    tables = [(k, t, False) for k, t in enumerate(X.ops)]
    if X.endo is not None:
        tables.append((len(X.ops), X.endo, True))
    for k, t, total in tables:
        style, colour = edge_style(k, total)
        for p, q in enumerate(t):
            if q is None:
                continue
            if p == q:
                x, y = pos[p]
                dx = 0.18 * (k - (len(tables) - 1) / 2)
                ax.add_patch(plt.Circle((x + dx, y + 0.12), 0.08, fill=False, ls=_LINESTYLE[style],
                                        color=colour, lw=0.8))
                continue
            ax.add_patch(FancyArrowPatch(pos[p], pos[q], arrowstyle="-|>", mutation_scale=8,
                                         connectionstyle="arc3,rad=0.15", ls=_LINESTYLE[style],
                                         color=colour, lw=0.8, shrinkA=5, shrinkB=5))
    for p, (x, y) in pos.items():
        ax.scatter([x], [y], s=30, color="black", zorder=3)
        if len(X) <= 30:
            ax.annotate(label_str(X.points[p]), (x, y), xytext=(3, -9), textcoords="offset points", fontsize=5)
    ax.autoscale_view()
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def save_figure(obj, path, title=None):
    """Render a forest or dual structure to ``path`` (format from the suffix)."""
    from .natural import DualStructure

    if isinstance(obj, DualStructure):
        ax = plot_structure(obj, title=title)
    else:
        ax = plot_forest(obj, title=title)
    fig = ax.figure
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
