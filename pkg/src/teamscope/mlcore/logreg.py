"""Binary logistic regression trained by full-batch gradient descent.

The objective is the mean cross-entropy plus an L2 penalty on the weights
(bias excluded), scaled by 1/N so the penalty strength is independent of
dataset size:

    loss(w, b) = mean_i[ log(1 + exp(z_i)) - y_i * z_i ] + l2 / (2N) * ||w||^2

with z = X w + b. Weights start at zero, so training is deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import DataError


@dataclass
class LogisticModel:
    weights: np.ndarray
    bias: float
    l2_lambda: float

    def to_dict(self) -> dict:
        return {
            "weights": [float(w) for w in self.weights],
            "bias": float(self.bias),
            "l2_lambda": float(self.l2_lambda),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "LogisticModel":
        return cls(
            weights=np.asarray(raw["weights"], dtype=np.float64),
            bias=float(raw["bias"]),
            l2_lambda=float(raw["l2_lambda"]),
        )


def sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    # exp(z - log(1 + e^z)) is stable for any sign of z
    return np.exp(z - np.logaddexp(0.0, z))


def logistic_loss_and_grad(
    weights: np.ndarray,
    bias: float,
    X: np.ndarray,
    y: np.ndarray,
    l2_lambda: float,
) -> tuple[float, np.ndarray, float]:
    """Return (loss, d_loss/d_weights, d_loss/d_bias) for the objective above."""
    n = X.shape[0]
    z = X @ weights + bias
    # log(1 + e^z) - y z, computed stably via logaddexp
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
    loss += l2_lambda / (2.0 * n) * float(weights @ weights)
    p = sigmoid(z)
    residual = p - y
    grad_w = (X.T @ residual + l2_lambda * weights) / n
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def train_logreg(
    X,
    y,
    l2_lambda: float = 1.0,
    learning_rate: float = 0.1,
    max_iters: int = 1000,
    tol: float = 1e-6,
) -> LogisticModel:
    """Gradient-descend the regularized cross-entropy until flat or exhausted."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    if X.ndim != 2:
        raise DataError(f"X must be 2-D, got shape {X.shape}")
    if X.shape[0] != y.shape[0]:
        raise DataError(f"{X.shape[0]} rows of X but {y.shape[0]} labels")
    if X.shape[0] == 0:
        raise DataError("cannot train on zero samples")
    if not np.all((y == 0.0) | (y == 1.0)):
        raise DataError("labels must be boolean (0/1)")
    if len(np.unique(y)) < 2:
        warnings.warn("training labels contain a single class", stacklevel=2)

    n = X.shape[0]
    XT = np.ascontiguousarray(X.T)
    weights = np.zeros(X.shape[1], dtype=np.float64)
    bias = 0.0
    ridge = l2_lambda / (2.0 * n)
    decay = 1.0 - learning_rate * l2_lambda / n
    step = learning_rate / n
    prev_loss = np.inf
    for _ in range(max_iters):
        z = X @ weights
        z += bias
        za = np.logaddexp(0.0, z)
        loss = za.mean() - (y @ z) / n + ridge * (weights @ weights)
        if prev_loss - loss < tol:
            break
        prev_loss = loss
        # z becomes sigmoid(z) = exp(z - log(1 + e^z)), then the residual p - y
        np.subtract(z, za, out=z)
        np.exp(z, out=z)
        z -= y
        grad = XT @ z
        weights *= decay
        grad *= step
        weights -= grad
        bias -= learning_rate * (z.mean())
    return LogisticModel(weights=weights, bias=bias, l2_lambda=l2_lambda)


def predict_proba(model: LogisticModel, x):
    """P(positive) for one feature vector or a matrix of them."""
    x = np.asarray(x, dtype=np.float64)
    z = x @ model.weights + model.bias
    p = sigmoid(z)
    return float(p) if p.ndim == 0 else p


def predict(model: LogisticModel, x):
    """Positive iff P(positive) >= 0.5."""
    return predict_proba(model, x) >= 0.5
