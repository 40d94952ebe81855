"""Restoration quality metrics and transform-domain sparsity measurements."""

from __future__ import annotations

import math

import numpy as np
import scipy.signal

from .tensor import frob_norm
from .transforms import dct_nd, idct_nd

__all__ = [
    "psnr",
    "ssim",
    "rel_change",
    "sparsity_level",
    "truncate_reconstruct",
]

_SSIM_K1 = 0.01
_SSIM_K2 = 0.03
_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5


def psnr(x_star: np.ndarray, x_true: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB.

    10 * log10(count * peak**2 / ||x_star - x_true||_F**2) with peak the
    maximum entry of the reference.  Identical inputs return +inf.
    """
    x_star = np.asarray(x_star, dtype=float)
    x_true = np.asarray(x_true, dtype=float)
    if x_star.shape != x_true.shape:
        raise ValueError(f"shape mismatch: {x_star.shape} vs {x_true.shape}")
    err = float(np.sum((x_star - x_true) ** 2))
    if err == 0.0:
        return math.inf
    peak = float(np.max(x_true))
    return 10.0 * math.log10(x_true.size * peak * peak / err)


def _gaussian_window(size: int, sigma: float) -> np.ndarray:
    r = np.arange(size, dtype=float) - (size - 1) / 2.0
    g = np.exp(-(r * r) / (2.0 * sigma * sigma))
    w = np.outer(g, g)
    return w / w.sum()


def _ssim_slice_windowed(a: np.ndarray, b: np.ndarray, c1: float, c2: float) -> float:
    win = _gaussian_window(_SSIM_WINDOW, _SSIM_SIGMA)
    mu1 = scipy.signal.convolve2d(a, win, mode="valid")
    mu2 = scipy.signal.convolve2d(b, win, mode="valid")
    mu1_sq, mu2_sq, mu12 = mu1 * mu1, mu2 * mu2, mu1 * mu2
    s1 = scipy.signal.convolve2d(a * a, win, mode="valid") - mu1_sq
    s2 = scipy.signal.convolve2d(b * b, win, mode="valid") - mu2_sq
    s12 = scipy.signal.convolve2d(a * b, win, mode="valid") - mu12
    num = (2.0 * mu12 + c1) * (2.0 * s12 + c2)
    den = (mu1_sq + mu2_sq + c1) * (s1 + s2 + c2)
    return float(np.mean(num / den))


def _ssim_slice_global(a: np.ndarray, b: np.ndarray, c1: float, c2: float) -> float:
    mu1, mu2 = a.mean(), b.mean()
    s1, s2 = a.var(), b.var()
    s12 = ((a - mu1) * (b - mu2)).mean()
    num = (2.0 * mu1 * mu2 + c1) * (2.0 * s12 + c2)
    den = (mu1 * mu1 + mu2 * mu2 + c1) * (s1 + s2 + c2)
    return float(num / den)


def ssim(
    x_star: np.ndarray,
    x_true: np.ndarray,
    data_range: float | None = None,
    mode: str = "windowed",
) -> float:
    """Mean structural similarity between two tensors.

    2-D inputs are compared directly; higher-order inputs are compared per
    2-D leading slice and averaged over the remaining modes.  ``mode``
    selects the 11x11 Gaussian-window statistics ("windowed", the reference
    convention) or whole-image statistics ("global").  ``data_range`` is
    inferred when omitted: 1.0 for unit-scale data, otherwise 255.
    """
    a = np.asarray(x_star, dtype=float)
    b = np.asarray(x_true, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.ndim < 2:
        raise ValueError("ssim needs at least 2-D input")
    if mode not in ("windowed", "global"):
        raise ValueError(f"unknown ssim mode: {mode!r}")
    if data_range is None:
        peak = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
        data_range = 1.0 if peak <= 1.0 else 255.0
    if mode == "windowed" and (a.shape[0] < _SSIM_WINDOW or a.shape[1] < _SSIM_WINDOW):
        raise ValueError(
            f"spatial extent {a.shape[:2]} smaller than the {_SSIM_WINDOW}x{_SSIM_WINDOW} window"
        )
    c1 = (_SSIM_K1 * data_range) ** 2
    c2 = (_SSIM_K2 * data_range) ** 2
    slice_fn = _ssim_slice_windowed if mode == "windowed" else _ssim_slice_global
    a2 = a.reshape(a.shape[0], a.shape[1], -1)
    b2 = b.reshape(b.shape[0], b.shape[1], -1)
    vals = [slice_fn(a2[:, :, i], b2[:, :, i], c1, c2) for i in range(a2.shape[2])]
    return float(np.mean(vals))


def rel_change(x_next: np.ndarray, x_prev: np.ndarray, denom_tensor: np.ndarray) -> float:
    """||x_next - x_prev||_F / ||denom_tensor||_F."""
    x_next = np.asarray(x_next, dtype=float)
    x_prev = np.asarray(x_prev, dtype=float)
    if x_next.shape != x_prev.shape:
        raise ValueError(f"shape mismatch: {x_next.shape} vs {x_prev.shape}")
    d = frob_norm(denom_tensor)
    if d == 0.0:
        raise ValueError("zero denominator tensor")
    return frob_norm(x_next - x_prev) / d


def sparsity_level(t: np.ndarray, tn: float) -> float:
    """Fraction of zero transform coefficients after truncating |c| < tn to 0."""
    if tn < 0:
        raise ValueError("tn must be nonnegative")
    c = dct_nd(t)
    zeroed = np.abs(c) < tn
    return float(np.mean(zeroed | (c == 0.0)))


def truncate_reconstruct(t: np.ndarray, tn: float) -> np.ndarray:
    """Inverse transform of the coefficient tensor truncated at |c| < tn."""
    if tn < 0:
        raise ValueError("tn must be nonnegative")
    c = dct_nd(t)
    return idct_nd(np.where(np.abs(c) < tn, 0.0, c))
