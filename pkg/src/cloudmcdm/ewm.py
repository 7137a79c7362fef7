"""Entropy weight method: objective indicator weights from data variation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataprep import NormalizedMatrix

_SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class WeightVector:
    indicator_ids: tuple[str, ...]
    weights: np.ndarray
    kind: str  # subjective | objective | combined

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.shape != (len(self.indicator_ids),):
            raise ValueError("weight count does not match indicator count")
        if (w < -_SIMPLEX_TOL).any():
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > _SIMPLEX_TOL:
            raise ValueError(f"weights must sum to 1, got {w.sum()!r}")

    def as_dict(self) -> dict[str, float]:
        return {i: float(w) for i, w in zip(self.indicator_ids, self.weights)}


def entropy_weights(z: NormalizedMatrix) -> tuple[WeightVector, np.ndarray]:
    """Objective weights from per-column information entropy.

    p_ij = z_ij / sum_i z_ij, e_j = -(1/ln m) * sum_i p_ij ln p_ij (0*ln0 := 0),
    d_j = 1 - e_j, w_j = d_j / sum d_j. Constant columns (filled with 0.5 by
    normalization) reach e_j = 1 and get weight 0. If every column is constant,
    weights fall back to uniform.

    Returns (weights, per-column entropies e).
    """
    v = z.values
    m, n = v.shape
    if m < 2:
        raise ValueError("entropy weighting needs at least 2 evaluation objects")
    if (v < 0).any() or (v > 1).any():
        raise ValueError("entropy weighting expects values in [0,1]; normalize first")
    col_sums = v.sum(axis=0)
    if (col_sums <= 0).any():
        j = int(np.argmax(col_sums <= 0))
        raise ValueError(f"column {z.indicator_ids[j]!r} sums to 0; cannot form proportions")
    p = v / col_sums
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(p > 0, p * np.log(p), 0.0)
    e = -plogp.sum(axis=0) / np.log(m)
    d = 1.0 - e
    d = np.where(d < 1e-12, 0.0, d)  # snap fp noise at e ~ 1 to an exact zero
    total = d.sum()
    w = np.full(n, 1.0 / n) if total == 0 else d / total
    return WeightVector(z.indicator_ids, w, kind="objective"), e
