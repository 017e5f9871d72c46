"""Scikit-learn-style regressor around the recurrent network engine."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin

from .network import Network, NetworkSpec
from .training import TrainConfig, fit
from .validation import check_X_y, check_array, check_is_fitted


class WindowedLstmRegressor(BaseEstimator, RegressorMixin):
    """Angle regressor over sliding windows of aligned sensor rows.

    ``X`` has shape ``(n_windows, window_size, n_features)``. Each LSTM
    layer is followed by a normalization layer; the final hidden state
    feeds a relu dense head with a linear output unit. Validation data for
    best-epoch weight selection is the chronological tail of the training
    set, so no future rows leak into the fit.
    """

    def __init__(
        self,
        lstm_units=(64, 32),
        dense_units=(32, 16, 8),
        learning_rate=2.5e-4,
        batch_size=128,
        epochs=60,
        loss="mae",
        validation_fraction=0.15,
        select_best_weights=True,
        seed=0,
    ):
        self.lstm_units = lstm_units
        self.dense_units = dense_units
        self.learning_rate = learning_rate
        self.batch_size = batch_size
        self.epochs = epochs
        self.loss = loss
        self.validation_fraction = validation_fraction
        self.select_best_weights = select_best_weights
        self.seed = seed

    def _build_spec(self, n_features):
        layers = []
        for units in self.lstm_units:
            layers.append(f"lstm({units})")
            layers.append("layernorm")
        for units in self.dense_units:
            layers.append(f"dense({units}, relu)")
        layers.append("dense(1)")
        return NetworkSpec(input_width=n_features, layers=tuple(layers),
                           seed=self.seed)

    def fit(self, X, y, X_val=None, y_val=None):
        X, y = check_X_y(X, y, x_ndim=3)
        if X_val is None and self.validation_fraction > 0 and len(X) > 10:
            split = int(round(len(X) * (1.0 - self.validation_fraction)))
            X, X_val = X[:split], X[split:]
            y, y_val = y[:split], y[split:]
        # center targets so the MAE loss spends no epochs on the offset
        self.y_mean_ = float(np.mean(y))
        y = y - self.y_mean_
        if y_val is not None:
            y_val = np.asarray(y_val, dtype=float).reshape(len(X_val), -1) - self.y_mean_
        self.net_ = Network(self._build_spec(X.shape[-1]))
        config = TrainConfig(
            learning_rate=self.learning_rate,
            batch_size=self.batch_size,
            epochs=self.epochs,
            loss=self.loss,
            select_best_weights=self.select_best_weights,
            seed=self.seed,
        )
        self.history_ = fit(self.net_, X, y, config, X_val=X_val, y_val=y_val)
        return self

    def predict(self, X):
        check_is_fitted(self, "net_")
        X = check_array(X, ndim=3)
        out = []
        for start in range(0, len(X), 4096):
            out.append(self.net_.forward(X[start : start + 4096]))
        return np.concatenate(out).ravel() + self.y_mean_
