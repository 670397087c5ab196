"""Figure rendering for experiment results.

One PSNR-vs-quality and one MSE-vs-quality figure per image (blocked in
green, deblocked in red), plus a combined deblocked-PSNR figure across all
images.
"""

import math
import re

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def _safe(name):
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


def _by_image(rows):
    grouped = {}
    for row in rows:
        grouped.setdefault(row.image, []).append(row)
    for series in grouped.values():
        series.sort(key=lambda r: r.quality)
    return grouped


def render_figures(rows, outdir):
    """Write PNG figures for a list of ExperimentRow; returns written paths."""
    outdir.mkdir(parents=True, exist_ok=True)
    grouped = _by_image(rows)
    written = []

    for name, series in grouped.items():
        q = [r.quality for r in series]

        fig, ax = plt.subplots(figsize=(6, 4.5))
        ax.plot(q, [r.psnr_blocked for r in series], "g-o", label="blocked")
        ax.plot(q, [r.psnr_deblocked for r in series], "r-s", label="deblocked")
        ax.set_xlabel("quality")
        ax.set_ylabel("PSNR (dB)")
        ax.set_title(f"PSNR vs quality: {name}")
        ax.grid(True, alpha=0.3)
        ax.legend()
        path = outdir / f"psnr_vs_quality_{_safe(name)}.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

        fig, ax = plt.subplots(figsize=(6, 4.5))
        ax.plot(q, [r.mse_blocked for r in series], "g-o", label="blocked")
        ax.plot(q, [r.mse_deblocked for r in series], "r-s", label="deblocked")
        ax.set_xlabel("quality")
        ax.set_ylabel("MSE")
        ax.set_title(f"MSE vs quality: {name}")
        ax.grid(True, alpha=0.3)
        ax.legend()
        path = outdir / f"mse_vs_quality_{_safe(name)}.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for name, series in grouped.items():
        q = [r.quality for r in series]
        y = [r.psnr_deblocked for r in series]
        if any(math.isinf(v) for v in y):
            continue
        ax.plot(q, y, "-o", label=name)
    ax.set_xlabel("quality")
    ax.set_ylabel("deblocked PSNR (dB)")
    ax.set_title("PSNR vs quality, all images")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    path = outdir / "psnr_vs_quality_all.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)
    return written
