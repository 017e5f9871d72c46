from .estimators import WindowedLstmRegressor
from .gradcheck import max_relative_error
from .losses import cross_entropy, get_loss, mae, mse
from .metrics import MetricsReport, aggregate, evaluate
from .network import Network, NetworkSpec
from .optim import Adam, Sgd, make_optimizer
from .regression import LinearRegressionBaseline, RidgeRegression, fit_ridge
from .serialize import load_weights, network_from_document, save_weights, weights_to_document
from .training import TrainConfig, backward_and_step, evaluate_loss, fit

__all__ = [
    "Adam",
    "LinearRegressionBaseline",
    "MetricsReport",
    "Network",
    "NetworkSpec",
    "RidgeRegression",
    "Sgd",
    "TrainConfig",
    "WindowedLstmRegressor",
    "aggregate",
    "backward_and_step",
    "cross_entropy",
    "evaluate",
    "evaluate_loss",
    "fit",
    "fit_ridge",
    "get_loss",
    "load_weights",
    "mae",
    "make_optimizer",
    "max_relative_error",
    "mse",
    "network_from_document",
    "save_weights",
    "weights_to_document",
]
