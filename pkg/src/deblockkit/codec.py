"""Block-DCT codec simulator.

Reproduces baseline JPEG's lossy core per 8x8 block: level shift, forward
DCT, quality-scaled quantization, dequantization, inverse DCT. Entropy
coding is omitted (lossless, so it does not affect pixels); an optional
first-order-entropy bits-per-pixel estimate stands in for it.
"""

from dataclasses import dataclass

import numpy as np

from .image import round_half_away, to_storage

BLOCK = 8

# Conventional 8x8 luminance quantization table (quality 50 baseline).
_BASE_LUMINANCE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)


@dataclass(frozen=True)
class QuantTable:
    steps: np.ndarray  # 8x8 integer steps, each in [1, 255]
    quality: int

    def __post_init__(self):
        steps = np.asarray(self.steps, dtype=np.int64)
        if steps.shape != (BLOCK, BLOCK):
            raise ValueError("quantization table must be 8x8")
        if steps.min() < 1 or steps.max() > 255:
            raise ValueError("quantization steps must lie in [1, 255]")
        object.__setattr__(self, "steps", steps)

    def __str__(self):
        rows = [" ".join(f"{v:3d}" for v in row) for row in self.steps]
        return "\n".join(rows)


@dataclass(frozen=True)
class CodecConfig:
    quality: int = 50
    estimate_bpp: bool = False

    def __post_init__(self):
        if not 1 <= self.quality <= 100:
            raise ValueError(f"quality {self.quality} outside [1, 100]")


@dataclass(frozen=True)
class CodecSidecar:
    """Self-describing record of what produced a decoded image."""

    quality: int
    quant_steps: np.ndarray
    bpp_estimate: float | None = None


def base_luminance_table():
    return QuantTable(steps=_BASE_LUMINANCE.copy(), quality=50)


def scale_table(base, quality):
    """IJG-style quality scaling of a base table."""
    if not 1 <= quality <= 100:
        raise ValueError(f"quality {quality} outside [1, 100]")
    if quality < 50:
        scale = 5000 // quality
    else:
        scale = 200 - 2 * quality
    steps = (base.steps * scale + 50) // 100
    steps = np.clip(steps, 1, 255)
    return QuantTable(steps=steps, quality=quality)


def _dct_matrix():
    u = np.arange(BLOCK)[:, None]
    x = np.arange(BLOCK)[None, :]
    m = 0.5 * np.cos((2 * x + 1) * u * np.pi / 16)
    m[0, :] *= 1.0 / np.sqrt(2.0)
    return m


_D = _dct_matrix()


def dct8x8_forward(block):
    """Orthonormal 2-D DCT-II of a level-shifted 8x8 block."""
    block = np.asarray(block, dtype=float)
    if block.shape != (BLOCK, BLOCK):
        raise ValueError("block must be 8x8")
    return _D @ block @ _D.T


def dct8x8_inverse(coeffs):
    """Inverse of dct8x8_forward (transform only; no level unshift)."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (BLOCK, BLOCK):
        raise ValueError("coefficient block must be 8x8")
    return _D.T @ coeffs @ _D


def quantize_dequantize(coeffs, q):
    """Quantize each coefficient to the nearest multiple of its table step."""
    coeffs = np.asarray(coeffs, dtype=float)
    steps = q.steps.astype(float)
    return round_half_away(coeffs / steps) * steps


def estimate_bpp(levels, n_pixels):
    """First-order entropy of a quantized-level stream, in bits per pixel.

    Indicative only; a real entropy coder would land elsewhere.
    """
    levels = np.asarray(levels).ravel()
    if levels.size == 0:
        raise ValueError("empty coefficient stream")
    _, counts = np.unique(levels, return_counts=True)
    p = counts / levels.size
    entropy = float(-np.sum(p * np.log2(p)))
    return entropy * levels.size / n_pixels


def _split_blocks(img):
    h, w = img.shape
    return img.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK).transpose(0, 2, 1, 3)


def _join_blocks(blocks, h, w):
    return blocks.transpose(0, 2, 1, 3).reshape(h, w)


def encode_decode(img, cfg):
    """Run the lossy codec core over a storage-form image.

    Returns (decoded storage-form image, CodecSidecar).
    """
    img = np.asarray(img, dtype=float)
    h, w = img.shape
    if h % BLOCK or w % BLOCK:
        raise ValueError(f"dimensions {w}x{h} not multiples of 8")
    table = scale_table(base_luminance_table(), cfg.quality)
    steps = table.steps.astype(float)

    blocks = _split_blocks(img - 128.0)
    coeffs = np.einsum("ux,rcxy,vy->rcuv", _D, blocks, _D)
    levels = round_half_away(coeffs / steps)
    recon = np.einsum("xu,rcuv,yv->rcxy", _D, levels * steps, _D)
    decoded = to_storage(_join_blocks(recon, h, w) + 128.0)

    bpp = estimate_bpp(levels, h * w) if cfg.estimate_bpp else None
    return decoded, CodecSidecar(
        quality=cfg.quality, quant_steps=table.steps.copy(), bpp_estimate=bpp
    )
