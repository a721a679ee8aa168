import numpy as np
import pytest

from teamscope.errors import DataError
from teamscope.mlcore import (
    LogisticModel,
    logistic_loss_and_grad,
    predict,
    predict_proba,
    train_logreg,
)


def numerical_gradient(weights, bias, X, y, l2, eps=1e-6):
    """Central finite differences of the training objective (test oracle)."""

    def loss_at(w, b):
        return logistic_loss_and_grad(w, b, X, y, l2)[0]

    grad_w = np.zeros_like(weights)
    for j in range(len(weights)):
        up = weights.copy()
        down = weights.copy()
        up[j] += eps
        down[j] -= eps
        grad_w[j] = (loss_at(up, bias) - loss_at(down, bias)) / (2 * eps)
    grad_b = (loss_at(weights, bias + eps) - loss_at(weights, bias - eps)) / (2 * eps)
    return grad_w, grad_b


def test_zero_weight_model_predicts_half():
    model = LogisticModel(weights=np.zeros(3), bias=0.0, l2_lambda=0.0)
    assert predict_proba(model, np.zeros(3)) == pytest.approx(0.5)
    assert predict(model, np.zeros(3)) is True  # >= 0.5 rule


def test_separable_1d_reaches_perfect_training_accuracy():
    X = np.array([[-2.0], [-1.0], [-0.5], [0.5], [1.0], [2.0]])
    y = np.array([0, 0, 0, 1, 1, 1])
    model = train_logreg(X, y, l2_lambda=0.01, learning_rate=0.5, max_iters=2000)
    assert np.all(predict(model, X) == y.astype(bool))


def test_analytic_gradient_matches_finite_differences():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(5, 3))
    y = rng.integers(0, 2, size=5).astype(float)
    w = rng.normal(size=3)
    b = float(rng.normal())
    _, grad_w, grad_b = logistic_loss_and_grad(w, b, X, y, l2_lambda=0.7)
    num_w, num_b = numerical_gradient(w, b, X, y, l2=0.7)
    scale = np.maximum(np.abs(num_w), 1e-8)
    assert np.max(np.abs(grad_w - num_w) / scale) < 1e-4
    assert abs(grad_b - num_b) / max(abs(num_b), 1e-8) < 1e-4


def test_loss_monotone_decrease_at_small_lr():
    rng = np.random.default_rng(11)
    X = rng.normal(size=(40, 4))
    y = (X[:, 0] + 0.3 * rng.normal(size=40) > 0).astype(float)
    losses = []
    for iters in range(1, 30):
        model = train_logreg(X, y, l2_lambda=1.0, learning_rate=0.01, max_iters=iters, tol=0.0)
        losses.append(logistic_loss_and_grad(model.weights, model.bias, X, y, 1.0)[0])
    assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))


def test_large_positive_margin_probability():
    model = LogisticModel(weights=np.array([10.0]), bias=0.0, l2_lambda=0.0)
    assert predict_proba(model, np.array([1.0])) > 0.99


def test_sign_flip_maps_p_to_one_minus_p():
    rng = np.random.default_rng(3)
    w = rng.normal(size=4)
    b = 0.37
    x = rng.normal(size=4)
    model = LogisticModel(weights=w, bias=b, l2_lambda=0.0)
    flipped = LogisticModel(weights=-w, bias=-b, l2_lambda=0.0)
    assert predict_proba(flipped, x) == pytest.approx(1.0 - predict_proba(model, x))


def test_dimension_mismatch_errors():
    with pytest.raises(DataError):
        train_logreg(np.zeros((3, 2)), np.array([0, 1]))
    with pytest.raises(DataError):
        train_logreg(np.zeros((0, 2)), np.array([]))


def test_non_boolean_labels_rejected():
    with pytest.raises(DataError, match="boolean"):
        train_logreg(np.zeros((2, 1)), np.array([0.0, 0.5]))


def test_single_class_warns():
    with pytest.warns(UserWarning, match="single class"):
        train_logreg(np.ones((3, 1)), np.array([1, 1, 1]), max_iters=2)


def test_training_is_deterministic():
    rng = np.random.default_rng(9)
    X = rng.normal(size=(30, 5))
    y = rng.integers(0, 2, size=30)
    a = train_logreg(X, y)
    b = train_logreg(X, y)
    assert np.array_equal(a.weights, b.weights) and a.bias == b.bias


def test_batch_predict_proba_shape():
    model = LogisticModel(weights=np.array([1.0, -1.0]), bias=0.0, l2_lambda=0.0)
    probs = predict_proba(model, np.array([[1.0, 0.0], [0.0, 1.0]]))
    assert probs.shape == (2,)
    assert probs[0] > 0.5 > probs[1]
