"""Spatial deblocking post-filter.

Three-part pipeline over the 8x8 block grid of a decoded image:

1. Uniform boundary smoothing: wherever the two pixels straddling a block
   boundary differ by at least a threshold, the difference is split and
   tapered into three pixels on each side, equalizing the boundary pair.
2. Blocked-edge detection + filtering: each interior boundary is examined
   in 8-row segments; a row triggers when the boundary gap exceeds every
   adjacent-pixel difference on at least one side. Segments with enough
   triggered rows get an intensity-weighted Gaussian filter applied to the
   pixels nearest the boundary, along the triggered rows only.

Vertical boundaries are processed before horizontal ones in both passes;
horizontal processing reads the vertical pass's output. All pixel math is
done in working form (unclamped floats); the pipeline clamps/rounds once,
at the end.
"""

from dataclasses import dataclass

import numpy as np

from .image import to_storage

VERTICAL = "vertical"
HORIZONTAL = "horizontal"

# per-row detection outcomes
NOT_TRIGGERED = "none"
EQ1 = "eq1"  # left-side differences all below the boundary gap
EQ2 = "eq2"  # right-side differences all below the boundary gap
BOTH = "both"


@dataclass(frozen=True)
class DeblockConfig:
    smooth_threshold: float = 8.0
    row_threshold: int = 4  # a segment is blocked when triggered rows > this
    window: int = 5  # Gaussian window size, odd
    symmetric_taper: bool = False

    def __post_init__(self):
        if self.smooth_threshold < 0:
            raise ValueError("smooth_threshold must be >= 0")
        if not 0 <= self.row_threshold <= 8:
            raise ValueError("row_threshold must be in [0, 8]")
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError("window must be an odd integer >= 3")


@dataclass(frozen=True)
class EdgeDescriptor:
    orientation: str  # VERTICAL or HORIZONTAL
    boundary: int  # block-grid line index, positive multiple of 8
    span: int  # first row (vertical) / column (horizontal) of the 8-pixel segment

    def __post_init__(self):
        if self.orientation not in (VERTICAL, HORIZONTAL):
            raise ValueError(f"bad orientation {self.orientation!r}")
        if self.boundary <= 0 or self.boundary % 8:
            raise ValueError("boundary must be a positive multiple of 8")
        if self.span < 0 or self.span % 8:
            raise ValueError("span must be a non-negative multiple of 8")


@dataclass(frozen=True)
class EdgeDetection:
    counter: int
    flags: tuple  # 8 entries from {NOT_TRIGGERED, EQ1, EQ2, BOTH}
    blocked: bool


def _apply_boundary_smoothing(arr, y, cfg):
    """Smooth the boundary between columns y and y+1 across all rows of arr.

    In-place; arr is working form. Requires y-2 >= 0 and y+3 < width.
    """
    w = arr.shape[1]
    if y < 2 or y + 3 >= w:
        raise ValueError(f"boundary column {y} too close to the image edge")
    d = arr[:, y + 1] - arr[:, y]
    s = np.where(np.abs(d) >= cfg.smooth_threshold, d / 2.0, 0.0)
    outer = s / 4.0 if cfg.symmetric_taper else s / 2.0
    arr[:, y] += s
    arr[:, y + 1] -= s
    arr[:, y - 1] += s / 2.0
    arr[:, y + 2] -= s / 2.0
    arr[:, y - 2] += outer
    arr[:, y + 3] -= s / 4.0


def smooth_edge_row(line, y, cfg):
    """Smooth one pixel line around the boundary between offsets y and y+1."""
    out = np.array(line, dtype=float)
    _apply_boundary_smoothing(out[None, :], y, cfg)
    return out


def smooth_all_boundaries(img, cfg):
    """Uniform smoothing over every interior block boundary.

    Vertical boundaries first (full pass), then horizontal boundaries on
    the vertical pass's output.
    """
    out = np.array(img, dtype=float)
    h, w = out.shape
    if h % 8 or w % 8:
        raise ValueError(f"dimensions {w}x{h} not multiples of 8")
    for b in range(8, w, 8):
        _apply_boundary_smoothing(out, b - 1, cfg)
    t = out.T
    for b in range(8, h, 8):
        _apply_boundary_smoothing(t, b - 1, cfg)
    return out


def _detect_patch(patch, cfg):
    """Detection over an 8x10 patch, boundary between columns 4 and 5."""
    diffs = np.abs(np.diff(patch, axis=1))  # 8x9, diffs[:, j] = |p_j - p_{j+1}|
    g0 = diffs[:, 4]
    left = diffs[:, 0:4].max(axis=1)  # L1..L4 = |p4-p3| .. |p1-p0|
    right = diffs[:, 5:9].max(axis=1)  # R1..R4 = |p5-p6| .. |p8-p9|
    flags = []
    for i in range(8):
        e1 = left[i] < g0[i]
        e2 = right[i] < g0[i]
        if e1 and e2:
            flags.append(BOTH)
        elif e1:
            flags.append(EQ1)
        elif e2:
            flags.append(EQ2)
        else:
            flags.append(NOT_TRIGGERED)
    counter = sum(f != NOT_TRIGGERED for f in flags)
    return EdgeDetection(
        counter=counter, flags=tuple(flags), blocked=counter > cfg.row_threshold
    )


def _oriented(img, edge):
    """View of img with the edge expressed as a vertical boundary."""
    return img if edge.orientation == VERTICAL else img.T


def _edge_patch(arr, edge):
    h, w = arr.shape
    if not 8 <= edge.boundary <= w - 8:
        raise ValueError(f"boundary {edge.boundary} not interior to width {w}")
    if edge.span + 8 > h:
        raise ValueError(f"span {edge.span} out of range for height {h}")
    return arr[edge.span : edge.span + 8, edge.boundary - 5 : edge.boundary + 5]


def detect_edge(img, edge, cfg):
    """Classify one 8-row boundary segment.

    Per row, ten pixels p0..p9 straddle the boundary (between p4 and p5).
    The row triggers when the boundary gap |p4-p5| strictly exceeds all
    four adjacent differences on the left and/or right side. The segment
    is blocked when more than cfg.row_threshold rows trigger.
    """
    arr = _oriented(np.asarray(img, dtype=float), edge)
    return _detect_patch(_edge_patch(arr, edge), cfg)


def gaussian_filter_1d(window, center):
    """Intensity-weighted Gaussian over one window, returning the new centre.

    Weights fall off with squared distance from the centre *value*; the
    spread is the mean absolute difference from the centre over the whole
    window. A flat window (spread 0) is returned unchanged.
    """
    window = np.asarray(window, dtype=float)
    if window.ndim != 1 or window.size % 2 == 0:
        raise ValueError("window must be 1-D with odd length")
    xc = window[center]
    eps = float(np.mean(np.abs(window - xc)))
    if eps == 0.0:
        return float(xc)
    weights = np.exp(-((xc - window) ** 2) / (2.0 * eps * eps))
    return float(np.sum(window * weights) / np.sum(weights))


def _filter_targets(flag, boundary):
    # p3, p4 sit left of the boundary line, p5, p6 right of it
    if flag == EQ1:
        return (boundary - 1, boundary, boundary + 1)  # p4, p5, p6
    if flag == EQ2:
        return (boundary, boundary - 1, boundary - 2)  # p5, p4, p3
    return (boundary - 2, boundary - 1, boundary, boundary + 1)  # union


def _filter_rows_inplace(arr, edge, det, cfg):
    half = (cfg.window - 1) // 2
    w = arr.shape[1]
    for i, flag in enumerate(det.flags):
        if flag == NOT_TRIGGERED:
            continue
        r = edge.span + i
        snapshot = arr[r].copy()
        for c in _filter_targets(flag, edge.boundary):
            idx = np.clip(np.arange(c - half, c + half + 1), 0, w - 1)
            arr[r, c] = gaussian_filter_1d(snapshot[idx], half)


def filter_marked_rows(img, edge, det, cfg):
    """Gaussian-filter the boundary pixels of every triggered row.

    All window reads come from a snapshot of the pre-filter row, so target
    order within a row cannot matter. Rows that did not trigger are left
    bit-identical.
    """
    if not det.blocked:
        raise ValueError("filter_marked_rows requires a blocked detection")
    out = np.array(img, dtype=float)
    _filter_rows_inplace(_oriented(out, edge), edge, det, cfg)
    return out


def _segment2_pass(arr, orientation, cfg):
    h, w = arr.shape
    for b in range(8, w, 8):
        for span in range(0, h, 8):
            edge = EdgeDescriptor(orientation=orientation, boundary=b, span=span)
            det = _detect_patch(_edge_patch(arr, edge), cfg)
            if det.blocked:
                _filter_rows_inplace(arr, edge, det, cfg)


def deblock_pipeline(img, cfg=None):
    """Full post-filter: uniform smoothing, then detect-and-filter.

    Takes and returns a storage-form image; all intermediate work stays in
    unclamped floats.
    """
    if cfg is None:
        cfg = DeblockConfig()
    work = np.array(img, dtype=float)
    h, w = work.shape
    if h % 8 or w % 8:
        raise ValueError(f"dimensions {w}x{h} not multiples of 8")
    work = smooth_all_boundaries(work, cfg)
    _segment2_pass(work, VERTICAL, cfg)
    _segment2_pass(work.T, HORIZONTAL, cfg)
    return to_storage(work)
