"""Feature standardization with train-only statistics."""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ..errors import ZeroVarianceWarning
from ..learning.validation import check_array, check_is_fitted


def standardize(X, stats_from):
    """``(X - mu) / sigma`` with mu, sigma from the training subset only.

    Population standard deviation per feature. Zero-variance features are
    centered with sigma treated as 1, and a ZeroVarianceWarning is
    emitted. Returns ``(N, mu, sigma)``.
    """
    X = np.asarray(X, dtype=float)
    train = np.asarray(stats_from, dtype=float)
    if train.size == 0:
        raise ValueError("training subset is empty")
    mu = train.mean(axis=0)
    sigma = train.std(axis=0)
    flat = sigma == 0.0
    if np.any(flat):
        warnings.warn(
            f"{int(flat.sum())} feature(s) have zero variance on the "
            "training subset; sigma treated as 1",
            ZeroVarianceWarning,
        )
        sigma = np.where(flat, 1.0, sigma)
    return (X - mu) / sigma, mu, sigma


class Standardizer(BaseEstimator, TransformerMixin):
    """Per-feature standardization fit on training data only.

    Works on 2-d matrices and on 3-d window stacks (the trailing axis is
    the feature axis either way).
    """

    def fit(self, X, y=None):
        X = check_array(X)
        flat = X.reshape(-1, X.shape[-1])
        _, self.mu_, self.sigma_ = standardize(flat, flat)
        return self

    def transform(self, X):
        check_is_fitted(self, "mu_")
        X = check_array(X)
        return (X - self.mu_) / self.sigma_
