"""Recursive feature elimination driven by logistic-regression weights."""

from __future__ import annotations

import numpy as np

from .logreg import train_logreg


def rfe_select(
    X,
    y,
    target_k: int,
    l2_lambda: float = 1.0,
    learning_rate: float = 0.1,
    max_iters: int = 1000,
    tol: float = 1e-6,
) -> list[int]:
    """Drop the weakest-|weight| feature one at a time until ``target_k`` remain.

    Ties on |weight| drop the feature with the larger original index. The
    surviving original indices are returned in ascending order.
    """
    X = np.asarray(X, dtype=np.float64)
    d = X.shape[1]
    if target_k < 1:
        raise ValueError("target_k must be >= 1")
    if target_k > d:
        raise ValueError(f"target_k={target_k} exceeds feature count {d}")

    surviving = list(range(d))
    while len(surviving) > target_k:
        model = train_logreg(
            X[:, surviving],
            y,
            l2_lambda=l2_lambda,
            learning_rate=learning_rate,
            max_iters=max_iters,
            tol=tol,
        )
        magnitudes = np.abs(model.weights)
        weakest = magnitudes.min()
        # last position among the minima = largest original index
        drop_pos = int(np.flatnonzero(magnitudes == weakest)[-1])
        surviving.pop(drop_pos)
    return surviving
