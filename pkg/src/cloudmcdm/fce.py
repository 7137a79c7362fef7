"""Fuzzy comprehensive evaluation baseline for cross-checking cloud scores.

Triangular membership functions over the grade bands, weighted-average
aggregation and centroid (band-midpoint) defuzzification.
"""

from __future__ import annotations

import numpy as np

from .cloud import GradeScheme
from .ewm import WeightVector


def triangular_memberships(score: float, scheme: GradeScheme) -> np.ndarray:
    """Membership row of one score over the scheme's grade bands.

    Triangles peak at band midpoints and reach zero at the adjacent midpoints;
    outside the first/last midpoint the end band takes full membership. The
    row sums to 1.
    """
    if not 0.0 <= score <= 100.0:
        raise ValueError(f"score {score} outside [0, 100]")
    mids = scheme.midpoints()
    k = len(mids)
    row = np.zeros(k)
    if score <= mids[0]:
        row[0] = 1.0
    elif score >= mids[-1]:
        row[-1] = 1.0
    else:
        j = int(np.searchsorted(mids, score)) - 1
        t = (score - mids[j]) / (mids[j + 1] - mids[j])
        row[j] = 1.0 - t
        row[j + 1] = t
    return row


def membership_matrix(scores, scheme: GradeScheme) -> np.ndarray:
    """Stack per-indicator membership rows (indicators x bands)."""
    return np.vstack([triangular_memberships(float(s), scheme) for s in scores])


def fce_score(m: np.ndarray, w: WeightVector, scheme: GradeScheme) -> float:
    """Crisp score: b = w' M aggregated memberships, defuzzified by band midpoints."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape != (len(w.indicator_ids), len(scheme.bands)):
        raise ValueError(
            f"membership matrix shape {m.shape} does not match "
            f"{len(w.indicator_ids)} indicators x {len(scheme.bands)} bands"
        )
    row_sums = m.sum(axis=1)
    if np.abs(row_sums - 1.0).max() > 1e-9:
        raise ValueError("each membership row must sum to 1")
    b = w.weights @ m
    return float(b @ scheme.midpoints())
