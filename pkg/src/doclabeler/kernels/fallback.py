"""Numpy fallback for the compiled kernels.

Keep the arithmetic expression-for-expression identical to _kernels.pyx so
both backends produce bitwise-equal images.
"""

import numpy as np


def resize_bilinear(src: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    in_h, in_w = src.shape
    sy = np.clip((np.arange(out_h) + 0.5) * (in_h / out_h) - 0.5, 0, in_h - 1)
    sx = np.clip((np.arange(out_w) + 0.5) * (in_w / out_w) - 0.5, 0, in_w - 1)
    y0 = sy.astype(np.intp)
    x0 = sx.astype(np.intp)
    y1 = np.minimum(y0 + 1, in_h - 1)
    x1 = np.minimum(x0 + 1, in_w - 1)
    fy = (sy - y0)[:, None]
    fx = (sx - x0)[None, :]

    v00 = src[np.ix_(y0, x0)].astype(np.float64)
    v01 = src[np.ix_(y0, x1)].astype(np.float64)
    v10 = src[np.ix_(y1, x0)].astype(np.float64)
    v11 = src[np.ix_(y1, x1)].astype(np.float64)

    top = v00 + (v01 - v00) * fx
    bot = v10 + (v11 - v10) * fx
    return (top + (bot - top) * fy + 0.5).astype(np.uint8)


def binarize(src: np.ndarray, threshold: int) -> np.ndarray:
    return np.where(src <= threshold, 0, 255).astype(np.uint8)


def histogram256(src: np.ndarray) -> np.ndarray:
    return np.bincount(src.ravel(), minlength=256).astype(np.int64)
