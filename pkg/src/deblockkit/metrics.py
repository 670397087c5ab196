"""Objective quality metrics: MSE and PSNR against an 8-bit peak of 255."""

import math
from dataclasses import dataclass

import numpy as np

PEAK = 255.0


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr: float  # dB; math.inf when the images are identical
    n: int
    quality: int | None = None
    deblock_config: object = None


def mse(reference, test):
    """Mean squared pixel difference between two same-size storage images."""
    reference = np.asarray(reference, dtype=float)
    test = np.asarray(test, dtype=float)
    if reference.shape != test.shape:
        raise ValueError(
            f"dimension mismatch: {reference.shape} vs {test.shape}"
        )
    diff = reference - test
    return float(np.mean(diff * diff))


def psnr_from_mse(value):
    """PSNR in dB for a given MSE; identical images (mse 0) give +inf."""
    if value < 0:
        raise ValueError("mse must be >= 0")
    if value == 0:
        return math.inf
    return 20.0 * math.log10(PEAK / math.sqrt(value))


def psnr(reference, test):
    return psnr_from_mse(mse(reference, test))


def compare(reference, test, quality=None, deblock_config=None):
    m = mse(reference, test)
    return MetricsReport(
        mse=m,
        psnr=psnr_from_mse(m),
        n=int(np.asarray(reference).size),
        quality=quality,
        deblock_config=deblock_config,
    )
