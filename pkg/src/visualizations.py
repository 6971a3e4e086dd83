"""
Plot data for an overlapping map: the sampled graph of both branches and the
orbit of a starting point, as one table with columns block,x,y,branch.
`plot_map` renders the same table (graph, diagonal and cobweb) to a PNG.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from src.admissibility import Sign  # noqa: E402
from src.config import Settings, get_settings  # noqa: E402
from src.dynamics import OverlapParams, itinerary, orbit, projection_tie_resolver  # noqa: E402
from src.precision import Number  # noqa: E402
from src.utils.io import log  # noqa: E402

COLUMNS = ["block", "x", "y", "branch"]
GRAPH_SAMPLES = 1000


def map_graph(params: OverlapParams, samples: int = GRAPH_SAMPLES) -> pd.DataFrame:
    """f sampled at x = k / samples, k = 0..samples (plain floats, for drawing only)."""
    a, p = float(params.a), float(params.p)
    x = np.arange(samples + 1) / samples
    if params.sign is Sign.MINUS:
        right = x > p
    else:
        right = x >= p
    y = np.where(right, a * x + (1 - a), a * x)
    return pd.DataFrame({"block": "graph", "x": x, "y": y, "branch": right.astype(int)})


def orbit_block(params: OverlapParams, x0: Number, length: int,
                settings: Settings | None = None) -> pd.DataFrame:
    """Rows (x_k, x_{k+1}, symbol of x_k) for k < length."""
    settings = settings or get_settings()
    critical = x0 is params.p
    resolver = projection_tie_resolver if critical else None
    values = orbit(params, x0, length, settings, resolver, critical)
    symbols = itinerary(params, x0, length, settings, resolver, critical)
    return pd.DataFrame({
        "block": "orbit",
        "x": [float(v) for v in values[:-1]],
        "y": [float(v) for v in values[1:]],
        "branch": list(symbols),
    })


def plot_data(params: OverlapParams, x0: Number, length: int,
              settings: Settings | None = None, samples: int = GRAPH_SAMPLES) -> pd.DataFrame:
    frames = [map_graph(params, samples)]
    if length > 0:
        frames.append(orbit_block(params, x0, length, settings))
    return pd.concat(frames, ignore_index=True)[COLUMNS]


def plot_map(params: OverlapParams, data: pd.DataFrame, path: str | Path) -> Path:
    """Both branches, the diagonal and the cobweb of the orbit block."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    graph = data[data["block"] == "graph"]
    steps = data[data["block"] == "orbit"]

    fig, ax = plt.subplots(figsize=(6, 6))
    for b, colour in ((0, "tab:blue"), (1, "tab:orange")):
        part = graph[graph["branch"] == b]
        ax.plot(part["x"], part["y"], color=colour, label=f"branch {b}")
    ax.plot([0, 1], [0, 1], color="grey", lw=0.8, ls="--")
    ax.axvline(float(params.p), color="grey", lw=0.6, ls=":")

    if not steps.empty:
        xs, ys = [], []
        for x, y in zip(steps["x"], steps["y"]):
            xs += [x, x]
            ys += [x, y]
        first = steps["x"].iloc[0]
        ax.plot([first] + xs, [0.0] + ys, color="black", lw=0.8, marker="o", ms=2, label="orbit")

    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect(1.0)
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")
    ax.set_title(f"a = {float(params.a):.6f}, p = {float(params.p):.6f} ({params.sign.value})")
    ax.legend(loc="upper left")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    log(f"Saved figure → {path}", "ok")
    return path
