"""Deterministic synthetic test images.

Stand-ins for a natural-image corpus: every generator is a pure function
of its spec, so fixtures never need to ship with the repository.
"""

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import uniform_filter

from .image import round_half_away, to_storage

KINDS = ("ramp", "step", "smooth-noise")


@dataclass(frozen=True)
class SyntheticSpec:
    kind: str
    width: int
    height: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown synthetic kind {self.kind!r}")
        if self.width % 8 or self.height % 8 or self.width < 8 or self.height < 8:
            raise ValueError("dimensions must be positive multiples of 8")

    @property
    def name(self):
        base = f"{self.kind}-{self.width}x{self.height}"
        if self.kind == "smooth-noise":
            base += f"-s{self.seed}"
        return base


def gen_synthetic(spec):
    """Generate the storage-form image described by spec."""
    w, h = spec.width, spec.height
    if spec.kind == "ramp":
        col = round_half_away(np.arange(w) * 255.0 / (w - 1))
        return np.tile(col, (h, 1))
    if spec.kind == "step":
        # flat half-planes split mid-block, 4 past a block-boundary column
        split = (w // 2 // 8) * 8 + 4
        img = np.full((h, w), 70.0)
        img[:, split:] = 190.0
        return img
    rng = np.random.default_rng(spec.seed)
    noise = rng.uniform(0.0, 1.0, size=(h, w))
    smooth = uniform_filter(noise, size=9, mode="nearest")
    return to_storage(smooth * 255.0)
