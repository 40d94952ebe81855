"""Dense N-way tensor utilities: mode-n matricization, inner products, sampling masks.

Tensors are plain ``float64`` :class:`numpy.ndarray` objects of order 1..8.
The matricization convention is "earlier modes vary fastest": the
``(i_1, ..., i_N)`` entry of a tensor maps to row ``i_n`` and column

    j = 1 + sum_{l != n} (i_l - 1) * J_l,   J_l = prod_{t < l, t != n} I_t

of its mode-n unfolding (1-based indices).  Sampling masks are boolean arrays
of the same shape as the tensor they apply to; a mask of lower order (e.g. a
2-D structural mask for an H x W x C image) is broadcast across the trailing
modes.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "unfold",
    "fold",
    "project",
    "expand_mask",
    "inner",
    "frob_norm",
    "sampling_rate",
    "random_mask",
    "mask_from_image",
]


def unfold(t: np.ndarray, mode: int) -> np.ndarray:
    """Mode-n matricization of a tensor.

    Parameters
    ----------
    t : ndarray
        Input tensor of order N.
    mode : int
        Mode index in 1..N (``mode=1`` selects the first axis).

    Returns
    -------
    ndarray
        The ``I_mode x prod(other extents)`` unfolding, with columns
        enumerating the remaining modes earliest-mode-fastest.
    """
    t = np.asarray(t, dtype=float)
    if not 1 <= mode <= t.ndim:
        raise ValueError(f"mode {mode} out of range for order-{t.ndim} tensor")
    m = np.moveaxis(t, mode - 1, 0).reshape((t.shape[mode - 1], -1), order="F")
    return np.ascontiguousarray(m)


def fold(m: np.ndarray, mode: int, shape) -> np.ndarray:
    """Inverse of :func:`unfold`: rebuild a tensor of `shape` from its mode-n unfolding."""
    shape = tuple(int(s) for s in shape)
    m = np.asarray(m, dtype=float)
    if not 1 <= mode <= len(shape):
        raise ValueError(f"mode {mode} out of range for order-{len(shape)} tensor")
    rest = shape[: mode - 1] + shape[mode:]
    expected = (shape[mode - 1], math.prod(rest))
    if m.ndim != 2 or m.shape != expected:
        raise ValueError(f"matrix shape {m.shape} inconsistent with {expected}")
    t = m.reshape((shape[mode - 1],) + rest, order="F")
    return np.moveaxis(t, 0, mode - 1)


def expand_mask(mask: np.ndarray, shape) -> np.ndarray:
    """Validate `mask` against `shape`, broadcasting a lower-order mask across trailing modes."""
    mask = np.asarray(mask, dtype=bool)
    shape = tuple(int(s) for s in shape)
    if mask.ndim > len(shape) or mask.shape != shape[: mask.ndim]:
        raise ValueError(f"mask shape {mask.shape} does not match tensor shape {shape}")
    if mask.ndim < len(shape):
        mask = mask.reshape(mask.shape + (1,) * (len(shape) - mask.ndim))
        mask = np.broadcast_to(mask, shape)
    return mask


def project(t: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Keep entries where `mask` is observed, zero elsewhere."""
    t = np.asarray(t, dtype=float)
    return np.where(expand_mask(mask, t.shape), t, 0.0)


def inner(a: np.ndarray, b: np.ndarray) -> float:
    """Componentwise inner product of two equally shaped tensors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.dot(a.ravel(), b.ravel()))


def frob_norm(a: np.ndarray) -> float:
    """Frobenius norm, the square root of the self inner product."""
    return float(np.linalg.norm(np.asarray(a, dtype=float).ravel()))


def sampling_rate(mask: np.ndarray) -> float:
    """Fraction of observed entries."""
    mask = np.asarray(mask, dtype=bool)
    return float(np.count_nonzero(mask)) / mask.size


def random_mask(shape, sr: float, seed: int) -> np.ndarray:
    """Uniform random mask with exactly ``round(sr * prod(shape))`` observed entries.

    Deterministic for a fixed `seed`.
    """
    shape = tuple(int(s) for s in shape)
    if not 0.0 < sr <= 1.0:
        raise ValueError(f"sampling rate {sr} not in (0, 1]")
    size = math.prod(shape)
    n_obs = int(round(sr * size))
    rng = np.random.default_rng(seed)
    flat = np.zeros(size, dtype=bool)
    flat[rng.choice(size, size=n_obs, replace=False)] = True
    return flat.reshape(shape)


def mask_from_image(path, shape=None) -> np.ndarray:
    """Build a structural mask from a grayscale image: white pixels (>= 128/255) are observed.

    Returns the 2-D pattern, or, when the target `shape` is given, the pattern
    tiled identically across all trailing modes (all channels/frames share it).
    """
    from .io import read_gray8

    gray = read_gray8(path)
    mask = gray >= 128
    if shape is None:
        return mask
    return np.ascontiguousarray(expand_mask(mask, shape))
