"""Orthonormal multi-dimensional DCT and its inverse.

The forward transform applies the orthonormal type-II DCT along every mode;
the inverse applies the type-III (transpose) counterpart.  Both preserve the
Frobenius norm, so coefficient-domain and spatial-domain error norms agree.
"""

from __future__ import annotations

import numpy as np
import scipy.fft

__all__ = ["dct_nd", "idct_nd"]


def dct_nd(t: np.ndarray) -> np.ndarray:
    """Orthonormal type-II DCT applied along every mode."""
    return scipy.fft.dctn(np.asarray(t, dtype=float), type=2, norm="ortho")


def idct_nd(t: np.ndarray) -> np.ndarray:
    """Inverse (adjoint) of :func:`dct_nd`."""
    return scipy.fft.idctn(np.asarray(t, dtype=float), type=2, norm="ortho")
