"""Thin SVD with a deterministic sign convention.

LAPACK leaves the sign of each singular vector pair (u_i, v_i) arbitrary.
Downstream shrinkage only uses the products u_i * sigma_i * v_i^T, which are
sign-invariant, but deterministic output makes results reproducible across
runs and platforms, so we fix each pair's sign here.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

__all__ = ["ThinSvd", "thin_svd", "reassemble"]


class ThinSvd(NamedTuple):
    u: np.ndarray
    """Left singular vectors, shape (m, r) with r = min(m, n)."""
    s: np.ndarray
    """Singular values in descending order, shape (r,)."""
    vt: np.ndarray
    """Right singular vectors transposed, shape (r, n)."""


def thin_svd(m: np.ndarray) -> ThinSvd:
    """Thin SVD of a 2-D array with deterministic singular-vector signs.

    Falls back to the slower, more robust LAPACK driver if the default
    divide-and-conquer routine fails to converge.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"thin_svd expects a matrix, got ndim={a.ndim}")
    try:
        u, s, vt = scipy.linalg.svd(a, full_matrices=False, lapack_driver="gesdd")
    except scipy.linalg.LinAlgError:
        u, s, vt = scipy.linalg.svd(a, full_matrices=False, lapack_driver="gesvd")
    # Sign convention: the entry of largest magnitude in each u column is
    # positive; ties broken by the first such entry.
    for i in range(u.shape[1]):
        col = u[:, i]
        j = int(np.argmax(np.abs(col)))
        if col[j] < 0:
            u[:, i] = -col
            vt[i, :] = -vt[i, :]
    return ThinSvd(u=u, s=s, vt=vt)


def reassemble(u: np.ndarray, s: np.ndarray, vt: np.ndarray) -> np.ndarray:
    """Form u @ diag(s) @ vt without materialising the diagonal matrix."""
    return (u * s) @ vt
