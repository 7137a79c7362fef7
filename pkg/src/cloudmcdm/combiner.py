"""Deviation-square-sum weight fusion.

Subjective and objective weight vectors span a two-dimensional cone; the fused
weight is the conic combination that maximizes the total squared deviation of
composite object scores, found as the dominant eigenvector of the projected
quadratic form under a unit-norm constraint on the mixing coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataprep import NormalizedMatrix
from .ewm import WeightVector

_FALLBACK_THETA = np.array([1.0, 1.0]) / np.sqrt(2.0)


@dataclass(frozen=True)
class CombinationResult:
    theta: tuple[float, float]          # (subjective, objective) mixing coefficients
    combined: WeightVector              # simplex-normalized fused weights
    objective_value: float              # attained deviation square sum, theta' M theta


def deviation_matrix(z: NormalizedMatrix) -> np.ndarray:
    """B = sum over ordered object pairs (i, l) of (z_i - z_l)(z_i - z_l)^T.

    Symmetric PSD; zero for a single object. Both orderings of each pair are
    counted, so B = 2 * (sum over unordered pairs).
    """
    v = z.values
    m = v.shape[0]
    # sum_{i,l} (z_i - z_l)(z_i - z_l)^T = 2m * Z'Z - 2 (Z'1)(Z'1)'
    s = v.sum(axis=0)
    b = 2.0 * m * (v.T @ v) - 2.0 * np.outer(s, s)
    return (b + b.T) / 2.0


def combine_weights(ws: WeightVector, wo: WeightVector, z: NormalizedMatrix) -> CombinationResult:
    """Fuse subjective and objective weights over the normalized data matrix.

    theta solves max theta' (W' B W) theta subject to |theta| = 1, theta >= 0,
    with W = [ws wo]; negative eigenvector components (possible when the 2x2
    form has a negative off-diagonal) are clamped to zero and theta is
    renormalized. When the data carry no deviation at all (B = 0), theta falls
    back to equal mixing.
    """
    if ws.indicator_ids != wo.indicator_ids:
        raise ValueError("subjective and objective weights must share the same indicator order")
    w = np.column_stack([ws.weights, wo.weights])  # n x 2
    b = deviation_matrix(z)
    if z.values.shape[1] != w.shape[0]:
        raise ValueError(
            f"data has {z.values.shape[1]} indicator columns but weights have {w.shape[0]}"
        )
    m2 = w.T @ b @ w
    if np.allclose(m2, 0.0):
        theta = _FALLBACK_THETA.copy()
    else:
        eigvals, eigvecs = np.linalg.eigh(m2)
        theta = eigvecs[:, -1]
        if theta.sum() < 0:
            theta = -theta
        theta = np.clip(theta, 0.0, None)
        theta = theta / np.linalg.norm(theta)
    wc = w @ theta
    wc = wc / wc.sum()
    value = float(theta @ m2 @ theta)
    combined = WeightVector(ws.indicator_ids, wc, kind="combined")
    return CombinationResult(theta=(float(theta[0]), float(theta[1])), combined=combined,
                             objective_value=value)
