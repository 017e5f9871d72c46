"""Closed-form ridge / ordinary least squares baselines."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin

from ..errors import SingularMatrixError
from .validation import check_X_y, check_array, check_is_fitted


def fit_ridge(X, y, lam: float) -> np.ndarray:
    """Solve ``(X^T X + lam I) w = X^T y``.

    With ``lam == 0`` a rank-deficient design raises SingularMatrixError
    instead of silently returning a least-norm solution.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if lam < 0:
        raise ValueError("ridge penalty must be >= 0")
    gram = X.T @ X
    if lam == 0.0:
        if np.linalg.matrix_rank(X) < X.shape[1]:
            raise SingularMatrixError(
                "design matrix is rank-deficient and lam == 0"
            )
    else:
        gram = gram + lam * np.eye(X.shape[1])
    return np.linalg.solve(gram, X.T @ y)


class RidgeRegression(BaseEstimator, RegressorMixin):
    """Ridge with an unpenalized intercept (fit on centered data)."""

    def __init__(self, alpha=1.0, fit_intercept=True):
        self.alpha = alpha
        self.fit_intercept = fit_intercept

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        y = y.ravel()
        if self.fit_intercept:
            self.x_mean_ = X.mean(axis=0)
            self.y_mean_ = float(y.mean())
            Xc, yc = X - self.x_mean_, y - self.y_mean_
        else:
            self.x_mean_ = np.zeros(X.shape[1])
            self.y_mean_ = 0.0
            Xc, yc = X, y
        self.coef_ = fit_ridge(Xc, yc, float(self.alpha))
        self.intercept_ = self.y_mean_ - float(self.x_mean_ @ self.coef_)
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, ndim=2)
        return X @ self.coef_ + self.intercept_


class LinearRegressionBaseline(RidgeRegression):
    """Ordinary least squares: ridge with zero penalty."""

    def __init__(self, fit_intercept=True):
        super().__init__(alpha=0.0, fit_intercept=fit_intercept)
