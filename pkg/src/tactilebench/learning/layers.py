"""Neural-network layers with hand-written forward/backward passes.

All layers operate on float64 numpy arrays. Dense layers expect ``(B, F)``
inputs, recurrent layers ``(B, T, F)``. Parameters and their gradient
buffers are exposed positionally so optimizers can walk them in lockstep.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeMismatchError


def _sigmoid(x):
    # tanh form: stable for large |x| and fast on full arrays
    return 0.5 * (np.tanh(0.5 * x) + 1.0)


_ACTIVATIONS = {
    "linear": (lambda x: x, lambda x, y: np.ones_like(y)),
    "relu": (lambda x: np.maximum(x, 0.0), lambda x, y: (x > 0).astype(float)),
    "tanh": (np.tanh, lambda x, y: 1.0 - y * y),
    "sigmoid": (_sigmoid, lambda x, y: y * (1.0 - y)),
}


def xavier_uniform(rng, shape):
    fan_in, fan_out = shape[0], shape[-1]
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Layer:
    """Base layer: parameter-less, shape-preserving by default."""

    out_is_sequence = False

    def forward(self, x, train=True):
        raise NotImplementedError

    def backward(self, grad_out):
        raise NotImplementedError

    def params(self):
        return []

    def grads(self):
        return []

    def zero_grads(self):
        for g in self.grads():
            g[...] = 0.0


class Dense(Layer):
    """Fully connected layer ``y = act(x W + b)``."""

    def __init__(self, in_width, units, activation="linear", rng=None):
        if activation not in _ACTIVATIONS:
            raise ValueError(f"unknown activation {activation!r}")
        rng = rng or np.random.default_rng()
        self.in_width = in_width
        self.units = units
        self.activation = activation
        self.W = xavier_uniform(rng, (in_width, units))
        self.b = np.zeros(units)
        self.dW = np.zeros_like(self.W)
        self.db = np.zeros_like(self.b)
        self._cache = None

    def forward(self, x, train=True):
        if x.shape[-1] != self.in_width:
            raise ShapeMismatchError(
                f"dense expects width {self.in_width}, got {x.shape[-1]}"
            )
        z = x @ self.W + self.b
        act, _ = _ACTIVATIONS[self.activation]
        y = act(z)
        if train:
            self._cache = (x, z, y)
        return y

    def backward(self, grad_out):
        x, z, y = self._cache
        _, dact = _ACTIVATIONS[self.activation]
        dz = grad_out * dact(z, y)
        self.dW += x.T @ dz
        self.db += dz.sum(axis=0)
        return dz @ self.W.T

    def params(self):
        return [self.W, self.b]

    def grads(self):
        return [self.dW, self.db]


class Lstm(Layer):
    """Single LSTM layer over ``(B, T, F)``, returning the full sequence.

    Gates share one fused pre-activation ``z = x Wx + h Wh + b`` split as
    (input, forget, cell, output). Backpropagation runs through all T
    steps. Forget-gate bias starts at 1 so early training retains state.
    """

    out_is_sequence = True

    def __init__(self, in_width, units, rng=None):
        rng = rng or np.random.default_rng()
        self.in_width = in_width
        self.units = units
        self.Wx = xavier_uniform(rng, (in_width, 4 * units))
        self.Wh = xavier_uniform(rng, (units, 4 * units))
        self.b = np.zeros(4 * units)
        self.b[units : 2 * units] = 1.0
        self.dWx = np.zeros_like(self.Wx)
        self.dWh = np.zeros_like(self.Wh)
        self.db = np.zeros_like(self.b)
        self._cache = None

    def forward(self, x, train=True):
        if x.ndim != 3:
            raise ShapeMismatchError(f"lstm expects (B, T, F), got {x.shape}")
        if x.shape[-1] != self.in_width:
            raise ShapeMismatchError(
                f"lstm expects width {self.in_width}, got {x.shape[-1]}"
            )
        B, T, _ = x.shape
        H = self.units
        # input contribution for every timestep in one matmul
        zx = (x.reshape(B * T, -1) @ self.Wx + self.b).reshape(B, T, 4 * H)
        h = np.zeros((B, H))
        c = np.zeros((B, H))
        hs = np.empty((B, T, H))
        steps = []
        for t in range(T):
            z = zx[:, t, :] + h @ self.Wh
            i = _sigmoid(z[:, :H])
            f = _sigmoid(z[:, H : 2 * H])
            g = np.tanh(z[:, 2 * H : 3 * H])
            o = _sigmoid(z[:, 3 * H :])
            c_new = f * c + i * g
            tc = np.tanh(c_new)
            h_new = o * tc
            if train:
                steps.append((h, c, i, f, g, o, tc))
            h, c = h_new, c_new
            hs[:, t, :] = h
        if train:
            self._cache = (x, steps)
        return hs

    def backward(self, grad_out):
        x, steps = self._cache
        B, T, F = x.shape
        H = self.units
        dz_all = np.empty((B, T, 4 * H))
        dh_next = np.zeros((B, H))
        dc_next = np.zeros((B, H))
        dz = np.empty((B, 4 * H))
        for t in range(T - 1, -1, -1):
            h_prev, c_prev, i, f, g, o, tc = steps[t]
            dh = grad_out[:, t, :] + dh_next
            do = dh * tc
            dc = dc_next + dh * o * (1.0 - tc * tc)
            dz[:, :H] = dc * g * i * (1.0 - i)
            dz[:, H : 2 * H] = dc * c_prev * f * (1.0 - f)
            dz[:, 2 * H : 3 * H] = dc * i * (1.0 - g * g)
            dz[:, 3 * H :] = do * o * (1.0 - o)
            dz_all[:, t, :] = dz
            self.dWh += h_prev.T @ dz
            dh_next = dz @ self.Wh.T
            dc_next = dc * f
        # weight/input gradients for the non-recurrent path, batched
        flat_dz = dz_all.reshape(B * T, 4 * H)
        self.dWx += x.reshape(B * T, F).T @ flat_dz
        self.db += flat_dz.sum(axis=0)
        return (flat_dz @ self.Wx.T).reshape(B, T, F)

    def params(self):
        return [self.Wx, self.Wh, self.b]

    def grads(self):
        return [self.dWx, self.dWh, self.db]


class LayerNorm(Layer):
    """Normalization over the feature (last) axis with learnable scale/shift."""

    def __init__(self, width, eps=1e-5):
        self.width = width
        self.eps = eps
        self.gamma = np.ones(width)
        self.beta = np.zeros(width)
        self.dgamma = np.zeros_like(self.gamma)
        self.dbeta = np.zeros_like(self.beta)
        self._cache = None

    def forward(self, x, train=True):
        if x.shape[-1] != self.width:
            raise ShapeMismatchError(
                f"layernorm expects width {self.width}, got {x.shape[-1]}"
            )
        mu = x.mean(axis=-1, keepdims=True)
        var = x.var(axis=-1, keepdims=True)
        inv = 1.0 / np.sqrt(var + self.eps)
        xhat = (x - mu) * inv
        if train:
            self._cache = (xhat, inv)
        return self.gamma * xhat + self.beta

    def backward(self, grad_out):
        xhat, inv = self._cache
        reduce_axes = tuple(range(grad_out.ndim - 1))
        self.dgamma += (grad_out * xhat).sum(axis=reduce_axes)
        self.dbeta += grad_out.sum(axis=reduce_axes)
        dxhat = grad_out * self.gamma
        m1 = dxhat.mean(axis=-1, keepdims=True)
        m2 = (dxhat * xhat).mean(axis=-1, keepdims=True)
        return inv * (dxhat - m1 - xhat * m2)

    def params(self):
        return [self.gamma, self.beta]

    def grads(self):
        return [self.dgamma, self.dbeta]


class Softmax(Layer):
    """Softmax over the last axis; outputs strictly positive, summing to 1."""

    def forward(self, x, train=True):
        shifted = x - x.max(axis=-1, keepdims=True)
        e = np.exp(shifted)
        y = e / e.sum(axis=-1, keepdims=True)
        if train:
            self._cache = y
        return y

    def backward(self, grad_out):
        y = self._cache
        inner = (grad_out * y).sum(axis=-1, keepdims=True)
        return y * (grad_out - inner)


class LastStep(Layer):
    """Slice the final timestep of a sequence: ``(B, T, H) -> (B, H)``."""

    def forward(self, x, train=True):
        if train:
            self._shape = x.shape
        return x[:, -1, :]

    def backward(self, grad_out):
        dx = np.zeros(self._shape)
        dx[:, -1, :] = grad_out
        return dx
