"""Scalar shrinkage maps and singular-value proximal operators.

The scalar maps are exact proximal operators of separable penalties.  The
matrix operators apply them to the singular values of a thin SVD, which
minimizes the matching spectral penalty plus a quadratic coupling term in
closed form; for the weighted variant this exactness requires a
nondecreasing weight sequence, which compute_weights guarantees whenever
the input spectrum is descending.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import reassemble, thin_svd

__all__ = [
    "WeightVector",
    "soft_shrink",
    "p_shrink",
    "compute_weights",
    "w_shrink",
    "prox_wnn",
    "prox_pshrink_matrix",
]


@dataclass(frozen=True)
class WeightVector:
    """Index-dependent singular-value weights w_i = delta / (sigma_i + epsilon)."""

    w: np.ndarray
    delta: float
    epsilon: float

    def __len__(self) -> int:
        return len(self.w)


def soft_shrink(a: np.ndarray, mu: float) -> np.ndarray:
    """Soft thresholding sign(a) * max(|a| - mu, 0), componentwise."""
    a = np.asarray(a, dtype=float)
    return np.sign(a) * np.maximum(np.abs(a) - mu, 0.0)


def p_shrink(a: np.ndarray, mu: float, p: float) -> np.ndarray:
    """p-shrinkage sign(a) * max(|a| - mu * |a|**(p - 1), 0), componentwise.

    Zero inputs map to zero: for p < 1 the factor |a|**(p-1) diverges at
    the origin, and the proximal map the formula comes from sends 0 to 0.
    With p = 1 this reduces exactly to soft thresholding.
    """
    a = np.asarray(a, dtype=float)
    mag = np.abs(a)
    with np.errstate(divide="ignore"):
        shift = np.where(mag > 0.0, mu * mag ** (p - 1.0), np.inf)
    return np.sign(a) * np.maximum(mag - shift, 0.0)


def compute_weights(sigma: np.ndarray, delta: float = 1.0, epsilon: float = 1e-6) -> WeightVector:
    """Weights w_i = delta / (sigma_i + epsilon) for a descending spectrum.

    Smaller singular values receive larger weights, so they are shrunk more.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    sigma = np.asarray(sigma, dtype=float)
    return WeightVector(w=delta / (sigma + epsilon), delta=float(delta), epsilon=float(epsilon))


def _weight_array(weights) -> np.ndarray:
    if isinstance(weights, WeightVector):
        return weights.w
    return np.asarray(weights, dtype=float)


def w_shrink(sigma: np.ndarray, mu: float, weights) -> np.ndarray:
    """Weighted thresholding of a spectrum: max(sigma_i - mu * w_i, 0)."""
    sigma = np.asarray(sigma, dtype=float)
    w = _weight_array(weights)
    if w.shape != sigma.shape:
        raise ValueError(f"weight shape {w.shape} does not match spectrum shape {sigma.shape}")
    return np.maximum(sigma - mu * w, 0.0)


def prox_wnn(a: np.ndarray, mu: float, weights) -> np.ndarray:
    """Weighted singular value thresholding of a matrix.

    Shrunk values keep their original (u_i, v_i) pairing by index; with
    non-uniform weights the output spectrum may lose descending order,
    which is intentional.
    """
    u, s, vt = thin_svd(a)
    return reassemble(u, w_shrink(s, mu, weights), vt)


def prox_pshrink_matrix(a: np.ndarray, mu: float, p: float) -> np.ndarray:
    """Singular value p-shrinkage of a matrix."""
    u, s, vt = thin_svd(a)
    return reassemble(u, p_shrink(s, mu, p), vt)
