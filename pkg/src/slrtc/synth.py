"""Deterministic synthetic data generators for tests, demos, and benchmarks."""

from __future__ import annotations

import numpy as np
import scipy.fft

__all__ = ["cp_dct_sparse", "smooth_image"]


def cp_dct_sparse(
    shape: tuple[int, ...] = (20, 20, 3),
    rank: int = 2,
    coeffs_per_factor: int = 3,
    seed: int = 0,
) -> np.ndarray:
    """Random CP tensor whose factors are sparse in the orthonormal DCT basis.

    Each factor vector keeps only ``coeffs_per_factor`` low-frequency
    coefficients, so every mode unfolding has rank at most ``rank`` and the
    tensor's multi-way DCT spectrum has at most rank * prod(coeffs) nonzero
    entries.  Entries are scaled to peak magnitude 1.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if any(coeffs_per_factor > n for n in shape):
        raise ValueError("coeffs_per_factor exceeds a mode extent")
    rng = np.random.default_rng(seed)
    factors = []
    for extent in shape:
        spec = np.zeros((extent, rank))
        coeff = rng.uniform(0.5, 1.5, size=(coeffs_per_factor, rank))
        coeff *= rng.choice([-1.0, 1.0], size=coeff.shape)
        spec[:coeffs_per_factor, :] = coeff
        factors.append(scipy.fft.idct(spec, type=2, norm="ortho", axis=0))
    t = np.zeros(shape)
    for r in range(rank):
        comp = factors[0][:, r]
        for f in factors[1:]:
            comp = np.multiply.outer(comp, f[:, r])
        t = t + comp
    return t / np.max(np.abs(t))


def smooth_image(height: int = 256, width: int = 256, seed: int = 0) -> np.ndarray:
    """Procedural color image in [0, 1], shape (height, width, 3).

    Low-frequency oriented cosines set the composition, soft tanh edges add
    object-like boundaries, and faint mid-frequency waves add texture.  The
    result has the concentrated-but-not-degenerate transform spectrum
    typical of natural photographs.  The range is stretched so the minimum
    is exactly 0 and the maximum exactly 1.
    """
    rng = np.random.default_rng(seed)
    yy = np.linspace(0.0, 1.0, height)[:, None]
    xx = np.linspace(0.0, 1.0, width)[None, :]

    def wave_field(n_waves: int, max_freq: float) -> np.ndarray:
        field = np.zeros((height, width))
        for _ in range(n_waves):
            u, v = rng.uniform(-max_freq, max_freq, size=2)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            amp = rng.uniform(0.3, 1.0) / (1.0 + np.hypot(u, v))
            field += amp * np.cos(2.0 * np.pi * (u * xx + v * yy) + phase)
        return field

    def pink_field() -> np.ndarray:
        """Random field with a 1/f-style power-law spectrum, unit peak."""
        white = rng.standard_normal((height, width))
        spec = scipy.fft.dctn(white, type=2, norm="ortho")
        fy = np.arange(height)[:, None] / height
        fx = np.arange(width)[None, :] / width
        spec *= 1.0 / (1.0 + 24.0 * np.hypot(fx, fy)) ** 2
        field = scipy.fft.idctn(spec, type=2, norm="ortho")
        return field / np.max(np.abs(field))

    base = wave_field(6, 3.0)
    cx, cy = rng.uniform(0.3, 0.7, size=2)
    base += 0.9 * np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / 0.04)
    for _ in range(3):
        u, v = rng.uniform(-2.0, 2.0, size=2)
        offset = rng.uniform(-0.5, 0.5)
        base += 0.35 * np.tanh(8.0 * (u * xx + v * yy + offset))
    base += 0.5 * pink_field()
    channels = [base + 0.3 * wave_field(3, 2.0) + 0.1 * pink_field() for _ in range(3)]
    img = np.stack(channels, axis=2)
    img -= img.min()
    peak = img.max()
    if peak > 0:
        img /= peak
    return img
