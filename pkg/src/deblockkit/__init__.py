"""Grayscale block-DCT compression simulator and deblocking post-filter."""

from .codec import (
    CodecConfig,
    QuantTable,
    base_luminance_table,
    encode_decode,
    scale_table,
)
from .deblock import DeblockConfig, deblock_pipeline
from .image import crop_to_block_grid, load_pgm, save_pgm, to_storage
from .metrics import mse, psnr, psnr_from_mse
from .synthetic import SyntheticSpec, gen_synthetic

__all__ = [
    "CodecConfig",
    "QuantTable",
    "base_luminance_table",
    "encode_decode",
    "scale_table",
    "DeblockConfig",
    "deblock_pipeline",
    "crop_to_block_grid",
    "load_pgm",
    "save_pgm",
    "to_storage",
    "mse",
    "psnr",
    "psnr_from_mse",
    "SyntheticSpec",
    "gen_synthetic",
]
