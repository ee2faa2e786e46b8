"""Page-image preprocessing: resize, Otsu threshold selection, binarization.

The pixel loops live in doclabeler.kernels (compiled when available);
threshold selection runs over a 256-bin histogram and uses exact integer
arithmetic so results match a brute-force search bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DocLabelerError


@dataclass
class GrayImage:
    """8-bit grayscale raster; pixels are a row-major HxW uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.uint8)
        if arr.ndim != 2:
            raise DocLabelerError(f"gray image must be 2-D, got shape {arr.shape}")
        self.pixels = np.ascontiguousarray(arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def histogram(self) -> np.ndarray:
        return kernels.histogram256(self.pixels)

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)


def resize_image(img: GrayImage, scale: float) -> GrayImage:
    """Bilinear resize; output dimensions are round(input * scale)."""
    if scale <= 0:
        raise DocLabelerError(f"scale must be positive, got {scale}")
    out_w = round(img.width * scale)
    out_h = round(img.height * scale)
    if out_w < 1 or out_h < 1:
        raise DocLabelerError(
            f"scale {scale} collapses {img.width}x{img.height} to {out_w}x{out_h}"
        )
    if (out_h, out_w) == (img.height, img.width):
        return GrayImage(img.pixels.copy())
    return GrayImage(kernels.resize_bilinear(img.pixels, out_h, out_w))


def otsu_threshold(hist) -> int:
    """Split point maximizing between-class variance; ties pick the smallest t.

    The degenerate single-intensity histogram has zero variance everywhere,
    so the tie-break yields t = 0; binarizing a constant image is therefore
    skipped by preprocess_image.
    """
    h = [int(v) for v in hist]
    if len(h) != 256:
        raise DocLabelerError(f"histogram must have 256 bins, got {len(h)}")
    if any(v < 0 for v in h):
        raise DocLabelerError("histogram counts must be non-negative")
    total = sum(h)
    if total == 0:
        raise DocLabelerError("histogram is empty")

    total_sum = sum(i * v for i, v in enumerate(h))
    # sigma^2(t) = w0*w1*(mu0-mu1)^2 = (s0*w1 - (S-s0)*w0)^2 / (w0*w1);
    # compare as exact rationals via cross-multiplication.
    best_t = 0
    best_num = 0  # numerator^2
    best_den = 1
    w0 = 0
    s0 = 0
    for t in range(256):
        w0 += h[t]
        s0 += t * h[t]
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue  # zero variance, never beats a strictly positive best
        num = (s0 * w1 - (total_sum - s0) * w0) ** 2
        den = w0 * w1
        if num * best_den > best_num * den:
            best_t = t
            best_num = num
            best_den = den
    return best_t


def binarize(img: GrayImage, threshold: int) -> GrayImage:
    """Intensities <= threshold become 0, the rest 255."""
    if not 0 <= threshold <= 255:
        raise DocLabelerError(f"threshold out of range: {threshold}")
    return GrayImage(kernels.binarize(img.pixels, threshold))


def preprocess_image(img: GrayImage, scale: float | None = None, binarization: bool = False) -> GrayImage:
    """The cleanup pipeline applied to generated page images.

    Binarization is a no-op for constant images (every threshold has zero
    between-class variance there).
    """
    out = img
    if scale is not None and scale != 1.0:
        out = resize_image(out, scale)
    if binarization:
        hist = out.histogram()
        if np.count_nonzero(hist) > 1:
            out = binarize(out, otsu_threshold(hist))
    return out
