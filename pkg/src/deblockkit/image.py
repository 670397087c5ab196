"""Grayscale image model and binary PGM (P5) I/O.

Images are 2-D float64 numpy arrays, row-major, shape (height, width).
Two forms are distinguished:

* storage form: every value integral and within [0, 255] (what goes to disk)
* working form: arbitrary real values, never clamped mid-pipeline

Clamping and rounding happen exactly once, in ``to_storage``.
"""

import numpy as np


class PgmError(Exception):
    """Malformed or unsupported PGM data."""


def round_half_away(x):
    """Round to nearest integer, ties away from zero."""
    x = np.asarray(x, dtype=float)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def is_storage_form(img):
    img = np.asarray(img)
    return bool(
        np.all(img == np.floor(img)) and np.all(img >= 0) and np.all(img <= 255)
    )


def to_storage(img):
    """Clamp to [0, 255] then round to nearest integer (ties away from zero)."""
    return round_half_away(np.clip(np.asarray(img, dtype=float), 0.0, 255.0))


def _read_tokens(data, count):
    """Pull `count` whitespace-separated header tokens, skipping # comments.

    Returns (tokens, offset just past the single whitespace byte that
    terminates the last token).
    """
    tokens = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i : i + 1] == b"#":
            while i < n and data[i : i + 1] != b"\n":
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace():
            i += 1
        if start == i:
            raise PgmError("truncated PGM header")
        tokens.append(data[start:i])
        if len(tokens) == count:
            if i >= n:
                raise PgmError("truncated PGM header")
            i += 1  # exactly one whitespace byte separates header from raster
    return tokens, i


def load_pgm(path):
    """Read a binary PGM (P5, maxval <= 255) file into a storage-form image."""
    with open(path, "rb") as f:
        data = f.read()
    if not data.startswith(b"P5"):
        raise PgmError(f"{path}: not a binary PGM (missing P5 magic)")
    tokens, offset = _read_tokens(data[2:], 3)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise PgmError(f"{path}: malformed PGM header") from None
    if width <= 0 or height <= 0:
        raise PgmError(f"{path}: invalid dimensions {width}x{height}")
    if maxval > 255:
        raise PgmError(f"{path}: unsupported maxval {maxval} (must be <= 255)")
    if maxval <= 0:
        raise PgmError(f"{path}: invalid maxval {maxval}")
    raster = data[2 + offset :]
    expected = width * height
    if len(raster) < expected:
        raise PgmError(
            f"{path}: truncated raster ({len(raster)} of {expected} bytes)"
        )
    pixels = np.frombuffer(raster[:expected], dtype=np.uint8)
    return pixels.reshape(height, width).astype(float)


def save_pgm(img, path):
    """Write a storage-form image as binary PGM: 'P5\\n<w> <h>\\n255\\n' + raster."""
    img = np.asarray(img)
    if img.ndim != 2:
        raise PgmError("image must be 2-D")
    if not is_storage_form(img):
        raise PgmError("not storage form: pixels must be integral in [0, 255]")
    height, width = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (width, height))
        f.write(img.astype(np.uint8).tobytes())


def crop_to_block_grid(img):
    """Crop (top-left anchored) to the largest dimensions that are multiples of 8."""
    img = np.asarray(img, dtype=float)
    height, width = img.shape
    if height < 8 or width < 8:
        raise ValueError(f"image {width}x{height} smaller than one 8x8 block")
    return img[: height - height % 8, : width - width % 8]
