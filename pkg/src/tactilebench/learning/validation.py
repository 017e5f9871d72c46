"""Input validation helpers shared by the estimators."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatchError


def check_array(X, ndim=None, name="X") -> np.ndarray:
    """Coerce to a float64 array and verify finiteness (and rank if given)."""
    arr = np.asarray(X, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise ShapeMismatchError(f"{name} must be {ndim}-d, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_X_y(X, y, x_ndim=2):
    X = check_array(X, ndim=x_ndim, name="X")
    y = check_array(y, name="y").reshape(len(np.atleast_1d(np.asarray(y))), -1)
    if X.shape[0] != y.shape[0]:
        raise ShapeMismatchError(
            f"X and y have different sample counts: {X.shape[0]} vs {y.shape[0]}"
        )
    return X, y


def check_is_fitted(estimator, attr: str):
    if getattr(estimator, attr, None) is None:
        raise RuntimeError(
            f"{type(estimator).__name__} is not fitted; call fit() first"
        )
