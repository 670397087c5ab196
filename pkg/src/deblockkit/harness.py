"""Batch experiment matrix: codec -> deblock -> metrics over (image, quality).

Emits a schema-stable CSV, a whitespace-separated plot-data file of
PSNR-vs-quality series, and (optionally) rendered figures.
"""

import math
import sys
from dataclasses import dataclass

from . import codec, deblock, metrics
from .image import crop_to_block_grid

CSV_HEADER = (
    "image,quality,psnr_blocked,mse_blocked,"
    "psnr_deblocked,mse_deblocked,delta_psnr"
)


@dataclass(frozen=True)
class ExperimentRow:
    image: str
    quality: int
    psnr_blocked: float
    mse_blocked: float
    psnr_deblocked: float
    mse_deblocked: float

    @property
    def delta_psnr(self):
        if math.isinf(self.psnr_blocked) and math.isinf(self.psnr_deblocked):
            return 0.0
        return self.psnr_deblocked - self.psnr_blocked


def run_cell(img, name, quality, cfg):
    decoded, _ = codec.encode_decode(img, codec.CodecConfig(quality=quality))
    deblocked = deblock.deblock_pipeline(decoded, cfg)
    mse_b = metrics.mse(img, decoded)
    mse_d = metrics.mse(img, deblocked)
    return ExperimentRow(
        image=name,
        quality=quality,
        psnr_blocked=metrics.psnr_from_mse(mse_b),
        mse_blocked=mse_b,
        psnr_deblocked=metrics.psnr_from_mse(mse_d),
        mse_deblocked=mse_d,
    )


def run_experiment(images, qualities, cfg, on_error=None):
    """Run the full matrix. images: iterable of (name, storage image).

    Per-image failures are reported through on_error (default: stderr) and
    the rest of the matrix continues.
    """
    if on_error is None:
        on_error = lambda msg: print(msg, file=sys.stderr)
    rows = []
    for name, img in images:
        try:
            img = crop_to_block_grid(img)
            for q in sorted(qualities):
                rows.append(run_cell(img, name, q, cfg))
        except Exception as exc:
            on_error(f"{name}: {exc}")
    return rows


def _fmt(value):
    return f"{value:.4f}"


def write_csv(rows, path):
    with open(path, "w") as f:
        f.write(CSV_HEADER + "\n")
        for r in rows:
            f.write(
                f"{r.image},{r.quality},{_fmt(r.psnr_blocked)},"
                f"{_fmt(r.mse_blocked)},{_fmt(r.psnr_deblocked)},"
                f"{_fmt(r.mse_deblocked)},{_fmt(r.delta_psnr)}\n"
            )


def write_plotdata(rows, path):
    """PSNR-vs-quality series per image, qualities ascending."""
    grouped = {}
    for r in rows:
        grouped.setdefault(r.image, []).append(r)
    with open(path, "w") as f:
        f.write("# image quality psnr_blocked psnr_deblocked\n")
        for name, series in grouped.items():
            for r in sorted(series, key=lambda r: r.quality):
                f.write(
                    f"{name} {r.quality} {_fmt(r.psnr_blocked)} "
                    f"{_fmt(r.psnr_deblocked)}\n"
                )
            f.write("\n")
