"""Shared generators for the test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from cloudmcdm.iahp import SAATY_VALUES

REPO = Path(__file__).resolve().parents[1]
DEMO = REPO / "data" / "demo"


def nearest_scale_index(v: float) -> int:
    return int(np.argmin(np.abs(SAATY_VALUES - v)))


def consistent_judgment(w: np.ndarray) -> np.ndarray:
    """Multiplicatively consistent matrix j_ik = w_i / w_k."""
    return np.outer(w, 1.0 / w)


def perturbed_judgment(n: int, rng: np.random.Generator, wobble: int = 3) -> np.ndarray:
    """Reciprocal on-scale matrix: consistent ratios shifted by up to `wobble` knots.

    Models a noisy expert: transitively coherent at heart, locally contradictory.
    """
    w = rng.uniform(0.5, 3.0, n)
    j = np.ones((n, n))
    for i in range(n):
        for k in range(i + 1, n):
            idx = nearest_scale_index(w[i] / w[k])
            idx = int(np.clip(idx + rng.integers(-wobble, wobble + 1), 0, 16))
            j[i, k] = SAATY_VALUES[idx]
            j[k, i] = 1.0 / j[i, k]
    return j
