# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled image kernels: bilinear resize, binarize, histogram.

The arithmetic here must stay expression-for-expression identical to
kernels.fallback so both backends produce bitwise-equal images.
"""

import numpy as np


def resize_bilinear(const unsigned char[:, ::1] src, int out_h, int out_w):
    """Resize with pixel-center bilinear sampling, clamped at the borders."""
    cdef int in_h = src.shape[0]
    cdef int in_w = src.shape[1]
    out = np.empty((out_h, out_w), dtype=np.uint8)
    cdef unsigned char[:, ::1] dst = out
    cdef double ry = (<double>in_h) / out_h
    cdef double rx = (<double>in_w) / out_w
    cdef int x, y, x0, x1, y0, y1
    cdef double sx, sy, fx, fy, v00, v01, v10, v11, top, bot

    for y in range(out_h):
        sy = (y + 0.5) * ry - 0.5
        if sy < 0:
            sy = 0
        if sy > in_h - 1:
            sy = in_h - 1
        y0 = <int>sy
        y1 = y0 + 1
        if y1 > in_h - 1:
            y1 = in_h - 1
        fy = sy - y0
        for x in range(out_w):
            sx = (x + 0.5) * rx - 0.5
            if sx < 0:
                sx = 0
            if sx > in_w - 1:
                sx = in_w - 1
            x0 = <int>sx
            x1 = x0 + 1
            if x1 > in_w - 1:
                x1 = in_w - 1
            fx = sx - x0
            v00 = src[y0, x0]
            v01 = src[y0, x1]
            v10 = src[y1, x0]
            v11 = src[y1, x1]
            top = v00 + (v01 - v00) * fx
            bot = v10 + (v11 - v10) * fx
            dst[y, x] = <unsigned char>(top + (bot - top) * fy + 0.5)
    return out


def binarize(const unsigned char[:, ::1] src, int threshold):
    """Map intensities <= threshold to 0 and the rest to 255."""
    cdef int h = src.shape[0]
    cdef int w = src.shape[1]
    out = np.empty((h, w), dtype=np.uint8)
    cdef unsigned char[:, ::1] dst = out
    cdef int x, y
    for y in range(h):
        for x in range(w):
            dst[y, x] = 0 if src[y, x] <= threshold else 255
    return out


def histogram256(const unsigned char[:, ::1] src):
    """256-bin intensity histogram."""
    out = np.zeros(256, dtype=np.int64)
    cdef long long[::1] hist = out
    cdef int h = src.shape[0]
    cdef int w = src.shape[1]
    cdef int x, y
    for y in range(h):
        for x in range(w):
            hist[src[y, x]] += 1
    return out
