"""Rolling (chronological) cross-validation folds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FoldSplit:
    folds: tuple        # k contiguous index arrays, chronological
    splits: tuple       # (train_indices, val_indices) per rolling split

    @property
    def k(self):
        return len(self.folds)


def rolling_folds(n_windows: int, k: int = 4) -> FoldSplit:
    """Contiguous chronological folds; split i trains on folds 1..i and
    validates on fold i+1, so validation is always later in time."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if n_windows < k:
        raise ValueError(f"cannot split {n_windows} windows into {k} folds")
    folds = tuple(np.array_split(np.arange(n_windows), k))
    splits = []
    for i in range(1, k):
        train = np.concatenate(folds[:i])
        splits.append((train, folds[i]))
    return FoldSplit(folds=folds, splits=tuple(splits))
