"""SVG figures of catenary-approximating polylines.

Output is byte-deterministic for fixed inputs and library versions: the SVG
id salt is pinned and the date metadata is dropped.
"""

from __future__ import annotations

import io
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..catenary import CatenaryFit  # noqa: E402

WIDTH_PT = 1000
HEIGHT_PT = 600
MARGIN = 0.05
CATENARY_SAMPLES = 256

RC = {
    "svg.hashsalt": "ptcsurface",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.2,
    "path.simplify": False,
}


def _new_figure():
    fig = plt.figure(figsize=(WIDTH_PT / 72, HEIGHT_PT / 72))
    ax = fig.add_axes([MARGIN, MARGIN, 1 - 2 * MARGIN, 1 - 2 * MARGIN])
    ax.set_xlim(-1.05, 1.05)
    ax.tick_params(direction="in", pad=3)
    ax.annotate("t", xy=(1.0, 0.0), xycoords="axes fraction", xytext=(4, 0),
                textcoords="offset points", va="center")
    ax.annotate("r", xy=(0.0, 1.0), xycoords="axes fraction", xytext=(0, 4),
                textcoords="offset points", ha="center")
    return fig, ax


def _catenary_curve(fit: CatenaryFit):
    t = np.linspace(-1.0, 1.0, CATENARY_SAMPLES)
    c = fit.reference.c
    return t, c * np.cosh(t / c)


def _save_svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def polyline_svg(fit: CatenaryFit, overlay_catenary: bool = False) -> str:
    """Draw one polyline (t horizontal, radius vertical), optionally over its catenary."""
    with plt.rc_context(RC):
        fig, ax = _new_figure()
        ts, rs = zip(*fit.vertices)
        if overlay_catenary:
            ct, cr = _catenary_curve(fit)
            ax.plot(ct, cr, color="0.55", linestyle="--",
                    label=f"catenary c = {fit.reference.c:.4f}")
        ax.plot(ts, rs, color="C0", marker="o", markersize=3.5,
                label=f"{fit.family.parity.value} PTC polyline, m = {fit.m}, {fit.branch.value}")
        ax.axhline(0.0, color="0.8", linewidth=0.6)
        ax.set_ylim(0.0, fit.reference.a * 1.08)
        ax.legend(loc="upper center", frameon=False)
        return _save_svg(fig)


def table_svg(fits: Sequence[CatenaryFit]) -> str:
    """All polylines of a comparison table on one canvas, with their catenaries."""
    with plt.rc_context(RC):
        fig, ax = _new_figure()
        drawn = set()
        top = 0.0
        for i, fit in enumerate(fits):
            key = fit.branch
            if key not in drawn:
                ct, cr = _catenary_curve(fit)
                ax.plot(ct, cr, color="k", linestyle="--", linewidth=0.8)
                drawn.add(key)
            ts, rs = zip(*fit.vertices)
            ax.plot(ts, rs, color=f"C{i % 10}", marker="o", markersize=2.5,
                    label=f"m = {fit.m}, {fit.branch.value}")
            top = max(top, fit.reference.a)
        ax.set_ylim(0.0, top * 1.08)
        ax.legend(loc="upper center", frameon=False, ncol=4)
        return _save_svg(fig)
