"""Raw indicator ingestion and direction-aware min-max normalization."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np


@dataclass(frozen=True)
class DataMatrix:
    """m evaluation objects (rows) x n indicators (columns), raw units."""

    object_ids: tuple[str, ...]
    indicator_ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.shape != (len(self.object_ids), len(self.indicator_ids)):
            raise ValueError(
                f"values shape {v.shape} does not match "
                f"{len(self.object_ids)} objects x {len(self.indicator_ids)} indicators"
            )


# A normalized matrix has the same structure; the distinction is the [0,1] contract.
NormalizedMatrix = DataMatrix


def min_max_normalize(d: DataMatrix, directions: Mapping[str, str]) -> NormalizedMatrix:
    """Column-wise min-max scaling to [0,1].

    benefit: (x - min) / (max - min); cost: (max - x) / (max - min).
    Constant columns map to 0.5 everywhere, so downstream entropy weighting
    assigns them zero discriminating power without a division by zero.
    """
    x = d.values
    if not np.isfinite(x).all():
        bad = np.argwhere(~np.isfinite(x))[0]
        raise ValueError(
            f"non-finite value at object {d.object_ids[bad[0]]!r}, "
            f"indicator {d.indicator_ids[bad[1]]!r}"
        )
    out = np.empty_like(x)
    for j, ind in enumerate(d.indicator_ids):
        try:
            direction = directions[ind]
        except KeyError:
            raise KeyError(f"no direction given for indicator {ind!r}") from None
        col = x[:, j]
        lo, hi = col.min(), col.max()
        if hi == lo:
            out[:, j] = 0.5
        elif direction == "benefit":
            out[:, j] = (col - lo) / (hi - lo)
        elif direction == "cost":
            out[:, j] = (hi - col) / (hi - lo)
        else:
            raise ValueError(f"indicator {ind!r}: direction must be 'benefit' or 'cost', got {direction!r}")
    return DataMatrix(d.object_ids, d.indicator_ids, out)


def load_data_csv(path: str | Path, indicator_ids: list[str] | None = None) -> DataMatrix:
    """Read a data CSV: header row of indicator ids, first column = object id.

    With `indicator_ids` the columns are checked and reordered to that order.
    """
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if len(rows) < 2:
        raise ValueError(f"{path}: expected a header row and at least one data row")
    header = [c.strip() for c in rows[0][1:]]
    object_ids, values = [], []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header) + 1:
            raise ValueError(f"{path}: row {r} has {len(row)} cells, expected {len(header) + 1}")
        object_ids.append(row[0].strip())
        try:
            values.append([float(c) for c in row[1:]])
        except ValueError as e:
            raise ValueError(f"{path}: row {r}: {e}") from None
    d = DataMatrix(tuple(object_ids), tuple(header), np.array(values))
    if indicator_ids is not None:
        if set(header) != set(indicator_ids):
            missing = sorted(set(indicator_ids) - set(header))
            extra = sorted(set(header) - set(indicator_ids))
            raise ValueError(f"{path}: column mismatch; missing {missing}, unexpected {extra}")
        order = [header.index(i) for i in indicator_ids]
        d = DataMatrix(d.object_ids, tuple(indicator_ids), d.values[:, order])
    return d
