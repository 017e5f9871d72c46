import math

import numpy as np
import pytest

from tactilebench.errors import (
    NaNLossError,
    ShapeMismatchError,
    SingularMatrixError,
    ZeroTargetVarianceError,
)
from tactilebench.learning import (
    Network,
    NetworkSpec,
    Sgd,
    TrainConfig,
    backward_and_step,
    evaluate,
    fit,
    fit_ridge,
    get_loss,
    max_relative_error,
    network_from_document,
    weights_to_document,
)
from tactilebench.learning.layers import Lstm


def zeroed(net):
    net.set_weights([np.zeros_like(p) for p in net.params()])
    return net


class TestForward:
    def test_zero_weight_network_outputs_zero(self):
        net = zeroed(Network(NetworkSpec(4, ("lstm(3)", "dense(2, relu)", "dense(1)"))))
        x = np.random.default_rng(0).normal(size=(5, 6, 4))
        assert np.allclose(net.forward(x), 0.0)

    def test_identity_dense_reproduces_input(self):
        net = Network(NetworkSpec(3, ("dense(3)",)))
        net.set_weights([np.eye(3), np.zeros(3)])
        x = np.random.default_rng(1).normal(size=(4, 3))
        assert np.allclose(net.forward(x), x)

    def test_shape_mismatch_raises(self):
        net = Network(NetworkSpec(3, ("dense(2)",)))
        with pytest.raises(ShapeMismatchError):
            net.forward(np.zeros((4, 5)))

    def test_lstm_matches_scalar_cell_oracle(self):
        # Independent oracle: the LSTM recurrence written out one scalar
        # operation at a time, using the layer's own weight matrices.
        rng = np.random.default_rng(7)
        layer = Lstm(2, 3, rng=rng)
        T = 6
        x = np.tile(rng.normal(size=(1, 1, 2)), (1, T, 1))

        def sig(v):
            return 1.0 / (1.0 + math.exp(-v))

        H = 3
        h = [0.0] * H
        c = [0.0] * H
        outs = []
        for t in range(T):
            z = [0.0] * (4 * H)
            for j in range(4 * H):
                acc = layer.b[j]
                for k in range(2):
                    acc += x[0, t, k] * layer.Wx[k, j]
                for k in range(H):
                    acc += h[k] * layer.Wh[k, j]
                z[j] = acc
            h_new, c_new = [0.0] * H, [0.0] * H
            for j in range(H):
                i_g = sig(z[j])
                f_g = sig(z[H + j])
                g_g = math.tanh(z[2 * H + j])
                o_g = sig(z[3 * H + j])
                c_new[j] = f_g * c[j] + i_g * g_g
                h_new[j] = o_g * math.tanh(c_new[j])
            h, c = h_new, c_new
            outs.append(list(h))
        got = layer.forward(x)
        assert np.allclose(got[0], np.array(outs), atol=1e-10)


class TestGradients:
    CASES = [
        ("dense", NetworkSpec(3, ("dense(4, tanh)",), seed=3), (6, 3), "mse"),
        ("dense_relu", NetworkSpec(3, ("dense(4, relu)",), seed=4), (6, 3), "mse"),
        ("lstm", NetworkSpec(2, ("lstm(3)",), seed=5), (4, 5, 2), "mse"),
        ("layernorm", NetworkSpec(4, ("layernorm",), seed=6), (5, 4), "mse"),
        ("softmax", NetworkSpec(3, ("dense(3)", "softmax"), seed=7), (5, 3), "cross_entropy"),
        (
            "composed",
            NetworkSpec(2, ("lstm(3)", "layernorm", "dense(3, relu)", "dense(2)", "softmax"), seed=8),
            (4, 5, 2),
            "cross_entropy",
        ),
    ]

    @pytest.mark.parametrize("name,spec,xshape,loss", CASES, ids=[c[0] for c in CASES])
    def test_finite_difference_agreement(self, name, spec, xshape, loss):
        rng = np.random.default_rng(11)
        net = Network(spec)
        x = rng.normal(size=xshape)
        out = net.forward(x)
        if loss == "cross_entropy":
            y = np.zeros_like(out)
            y[np.arange(len(y)), rng.integers(0, y.shape[1], size=len(y))] = 1.0
        else:
            y = rng.normal(size=out.shape)
        assert max_relative_error(net, x, y, loss_name=loss) < 1e-4

    def test_sgd_step_reduces_convex_quadratic(self):
        net = Network(NetworkSpec(2, ("dense(1)",), seed=0))
        rng = np.random.default_rng(2)
        X = rng.normal(size=(32, 2))
        y = X @ np.array([[1.5], [-2.0]]) + 0.3
        loss_fn = get_loss("mse")
        before, _ = loss_fn(net.forward(X), y)
        backward_and_step(net, X, y, "mse", Sgd(0.01))
        after, _ = loss_fn(net.forward(X), y)
        assert after < before

    def test_mae_subgradient_zero_at_zero_residual(self):
        _, grad = get_loss("mae")(np.zeros((3, 1)), np.zeros((3, 1)))
        assert np.all(grad == 0.0)

    def test_nan_loss_raises(self):
        net = Network(NetworkSpec(2, ("dense(1)",), seed=0))
        X = np.array([[np.inf, 0.0]])
        with pytest.raises(NaNLossError):
            backward_and_step(net, X, np.zeros((1, 1)), "mse", Sgd(0.01))


class TestRidge:
    def test_noise_free_slope(self):
        x = np.linspace(-1, 1, 20).reshape(-1, 1)
        w = fit_ridge(x, 2.0 * x.ravel(), 0.0)
        assert abs(w[0] - 2.0) < 1e-9

    def test_large_penalty_shrinks_to_zero(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(30, 4))
        y = rng.normal(size=30)
        w = fit_ridge(X, y, 1e12)
        assert np.all(np.abs(w) < 1e-6)

    def test_matches_normal_equations_oracle(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(50, 5))
        y = rng.normal(size=50)
        lam = 0.7
        oracle = np.linalg.inv(X.T @ X + lam * np.eye(5)) @ X.T @ y
        assert np.allclose(fit_ridge(X, y, lam), oracle, atol=1e-8)

    def test_singular_raises(self):
        X = np.ones((10, 2))  # duplicated column
        with pytest.raises(SingularMatrixError):
            fit_ridge(X, np.ones(10), 0.0)


class TestMetrics:
    def test_perfect_predictions(self):
        y = np.array([0.1, 0.5, -0.2, 0.9])
        r = evaluate(y, y)
        assert r.mae == 0.0 and r.mse == 0.0
        assert r.r2 == 1.0 and r.exp == 1.0

    def test_mean_predictor_r2_zero(self):
        y = np.array([1.0, 2.0, 3.0, 4.0])
        r = evaluate(np.full_like(y, y.mean()), y)
        assert abs(r.r2) < 1e-12

    def test_constant_offset_splits_exp_and_r2(self):
        y = np.array([0.0, 1.0, 2.0, 3.0])
        r = evaluate(y + 0.5, y)
        assert abs(r.exp - 1.0) < 1e-12
        assert r.r2 < 1.0

    def test_zero_target_variance_raises(self):
        with pytest.raises(ZeroTargetVarianceError):
            evaluate(np.array([1.0, 2.0]), np.array([3.0, 3.0]))


def _toy_problem(n=160, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 3))
    y = (X @ np.array([0.5, -1.0, 0.25])).reshape(-1, 1) + 0.05 * rng.normal(size=(n, 1))
    return X, y


class TestTrainingLoop:
    def test_fixed_seed_is_bit_reproducible(self):
        X, y = _toy_problem()
        runs = []
        for _ in range(2):
            net = Network(NetworkSpec(3, ("dense(8, tanh)", "dense(1)"), seed=5))
            fit(net, X, y, TrainConfig(learning_rate=1e-3, batch_size=32, epochs=5, seed=5))
            runs.append(net.get_weights())
        for a, b in zip(*runs):
            assert np.array_equal(a, b)

    def test_best_epoch_selection_not_worse_than_final(self):
        X, y = _toy_problem(seed=1)
        Xv, yv = _toy_problem(n=60, seed=2)
        cfg = dict(learning_rate=5e-3, batch_size=16, epochs=30, seed=3)
        selected = Network(NetworkSpec(3, ("dense(8, tanh)", "dense(1)"), seed=3))
        fit(selected, X, y, TrainConfig(select_best_weights=True, **cfg), Xv, yv)
        final = Network(NetworkSpec(3, ("dense(8, tanh)", "dense(1)"), seed=3))
        h = fit(final, X, y, TrainConfig(select_best_weights=False, **cfg), Xv, yv)
        from tactilebench.learning import evaluate_loss

        assert evaluate_loss(selected, Xv, yv, "mae") <= h["val_loss"][-1] + 1e-12

    def test_softmax_outputs_are_a_distribution(self):
        net = Network(NetworkSpec(4, ("dense(5)", "softmax"), seed=9))
        x = np.random.default_rng(10).normal(size=(20, 4), scale=3.0)
        p = net.forward(x)
        assert np.all(p > 0.0)
        assert np.allclose(p.sum(axis=1), 1.0, atol=1e-9)

    def test_weights_json_roundtrip(self):
        net = Network(NetworkSpec(3, ("lstm(4)", "layernorm", "dense(2)"), seed=12))
        doc = weights_to_document(net)
        restored = network_from_document(doc)
        x = np.random.default_rng(13).normal(size=(3, 5, 3))
        assert np.array_equal(net.forward(x), restored.forward(x))
