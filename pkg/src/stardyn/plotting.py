"""PNG renderings of the Bratteli tower and of a truncated ``X~``."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .dot import bratteli_edges, tower_summands  # noqa: E402
from .spectral import Cycle, alpha_tilde, enumerate_points, in_domain  # noqa: E402

__all__ = ["render_bratteli", "render_xtilde"]


def _finish(fig, ax, path):
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_bratteli(ext, levels, path):
    layers = [tower_summands(ext, n) for n in range(levels + 1)]
    width = max((len(s) for s in layers), default=1)
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * width), max(3, 1.1 * (levels + 1))))
    pos = {}
    for n, summands in enumerate(layers):
        offset = (width - len(summands)) / 2
        for s in summands:
            pos[s.node] = (offset + s.index, -n)
            ax.scatter(*pos[s.node], s=380, color="white", edgecolors="black", zorder=2)
            ax.annotate(str(s.size), pos[s.node], ha="center", va="center", zorder=3)
        ax.annotate("B_%d" % n, (-1.2, -n), ha="right", va="center", color="gray")
    for n in range(levels):
        for (a, b), mult in bratteli_edges(ext, n).items():
            (x0, y0), (x1, y1) = pos[a], pos[b]
            ax.plot([x0, x1], [y0, y1], color="black", lw=0.6 + 0.6 * mult, zorder=1)
            if mult > 1:
                ax.annotate(str(mult), ((x0 + x1) / 2, (y0 + y1) / 2), color="tab:red", fontsize=8)
    ax.set_xlim(-2, width)
    return _finish(fig, ax, path)


def render_xtilde(m, depth, path):
    points = enumerate_points(m, depth)
    columns = {}
    pos = {}
    for p in points:
        col = depth + 2 if isinstance(p, Cycle) else len(p.coords) - 1
        row = columns.get(col, 0)
        columns[col] = row + 1
        pos[p] = (col, -row)
    height = max(columns.values(), default=1)
    fig, ax = plt.subplots(figsize=(max(4, 1.4 * (depth + 3)), max(3, 0.6 * height)))
    for p, (x, y) in pos.items():
        ax.annotate(p.label(m.names), (x, y), ha="center", va="center", fontsize=8,
                    bbox={"boxstyle": "round" if isinstance(p, Cycle) else "square", "fc": "white"})
    for p in points:
        if in_domain(m, p):
            r = alpha_tilde(m, p)
            if r in pos and r != p:
                ax.annotate("", pos[r], pos[p], arrowprops={"arrowstyle": "->", "color": "gray",
                                                               "shrinkA": 22, "shrinkB": 22})
    ax.set_xlim(-1, depth + 3)
    ax.set_ylim(-height, 0.5)
    return _finish(fig, ax, path)
