"""Random forest of Gini-split decision trees, deterministic per seed.

Every tree draws its bootstrap sample and per-node feature subsets from a
generator seeded by (seed, tree index), so forests are pure functions of
(X, y, hyperparameters, seed) and trees could be built in parallel without
changing the result. Leaves store class counts; tree and forest predictions
are majority votes with ties going to the smaller class index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from ..errors import DataError

_U64 = 2**64 - 1


@dataclass
class ForestModel:
    trees: list[dict]
    classes: list[Any]
    n_trees: int
    seed: int
    max_depth: int | None
    min_leaf: int
    n_features: int
    importances_raw: np.ndarray = field(repr=False, default_factory=lambda: np.zeros(0))

    def to_dict(self) -> dict:
        return {
            "trees": self.trees,
            "classes": list(self.classes),
            "n_trees": self.n_trees,
            "seed": self.seed,
            "max_depth": self.max_depth,
            "min_leaf": self.min_leaf,
            "n_features": self.n_features,
            "importances_raw": [float(v) for v in self.importances_raw],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ForestModel":
        return cls(
            trees=raw["trees"],
            classes=raw["classes"],
            n_trees=int(raw["n_trees"]),
            seed=int(raw["seed"]),
            max_depth=raw["max_depth"],
            min_leaf=int(raw["min_leaf"]),
            n_features=int(raw["n_features"]),
            importances_raw=np.asarray(raw["importances_raw"], dtype=np.float64),
        )


def _gini(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - (p * p).sum())


def _best_split(X, y_onehot, samples, features, min_leaf):
    """Best (weighted-Gini, feature, threshold) over the given features.

    Ties resolve to the lowest feature index, then the lowest threshold,
    because features are scanned in ascending order and only strictly better
    scores replace the incumbent.
    """
    n = len(samples)
    Y = y_onehot[samples]
    node_counts = Y.sum(axis=0)
    # cut i puts the first i sorted samples on the left, i = 1 .. n-1
    sizes_left = np.arange(1, n, dtype=np.float64)
    sizes_right = n - sizes_left
    best = None  # (score, feature, threshold)
    for f in features:
        vals = X[samples, f]
        order = np.argsort(vals, kind="stable")
        sorted_vals = vals[order]
        valid = sorted_vals[1:] != sorted_vals[:-1]
        if min_leaf > 1:
            valid = valid & (sizes_left >= min_leaf) & (sizes_right >= min_leaf)
        if not valid.any():
            continue
        left = np.cumsum(Y[order[:-1]], axis=0)
        right = node_counts - left
        gini_left = 1.0 - ((left / sizes_left[:, None]) ** 2).sum(axis=1)
        gini_right = 1.0 - ((right / sizes_right[:, None]) ** 2).sum(axis=1)
        score = np.where(
            valid, (sizes_left * gini_left + sizes_right * gini_right) / n, np.inf
        )
        cut = int(np.argmin(score))
        cut_score = float(score[cut])
        if np.isfinite(cut_score) and (best is None or cut_score < best[0]):
            threshold = float((sorted_vals[cut] + sorted_vals[cut + 1]) / 2.0)
            best = (cut_score, int(f), threshold)
    return best


def _build_tree(X, y_onehot, samples, depth, max_depth, min_leaf, k_features, rng, imp, n_root):
    counts = y_onehot[samples].sum(axis=0)
    node_gini = _gini(counts)
    if (
        node_gini == 0.0
        or (max_depth is not None and depth >= max_depth)
        or len(samples) < 2 * min_leaf
    ):
        return {"counts": [int(c) for c in counts]}

    d = X.shape[1]
    features = np.sort(rng.choice(d, size=k_features, replace=False))
    best = _best_split(X, y_onehot, samples, features, min_leaf)
    if best is None:
        return {"counts": [int(c) for c in counts]}

    _, feat, threshold = best
    mask = X[samples, feat] <= threshold
    left_samples = samples[mask]
    right_samples = samples[~mask]
    n = len(samples)
    left_gini = _gini(y_onehot[left_samples].sum(axis=0))
    right_gini = _gini(y_onehot[right_samples].sum(axis=0))
    imp[feat] += (
        n * node_gini - len(left_samples) * left_gini - len(right_samples) * right_gini
    ) / n_root

    return {
        "f": feat,
        "t": threshold,
        "l": _build_tree(X, y_onehot, left_samples, depth + 1, max_depth, min_leaf, k_features, rng, imp, n_root),
        "r": _build_tree(X, y_onehot, right_samples, depth + 1, max_depth, min_leaf, k_features, rng, imp, n_root),
    }


def train_forest(
    X,
    y: Sequence,
    n_trees: int = 100,
    seed: int = 0,
    max_depth: int | None = None,
    min_leaf: int = 1,
) -> ForestModel:
    """Fit ``n_trees`` trees on bootstrap samples of (X, y)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise DataError(f"X must be a non-empty 2-D matrix, got shape {X.shape}")
    y = [label.item() if isinstance(label, np.generic) else label for label in y]
    if len(y) != X.shape[0]:
        raise DataError(f"{X.shape[0]} rows of X but {len(y)} labels")
    if n_trees < 1:
        raise ValueError("n_trees must be >= 1")

    classes = sorted(set(y))
    class_index = {c: i for i, c in enumerate(classes)}
    y_onehot = np.zeros((len(y), len(classes)), dtype=np.int64)
    for i, label in enumerate(y):
        y_onehot[i, class_index[label]] = 1

    n, d = X.shape
    k_features = max(1, int(math.isqrt(d)))
    seed_entropy = int(seed) & _U64

    trees = []
    importance_sum = np.zeros(d, dtype=np.float64)
    for t in range(n_trees):
        rng = np.random.default_rng(np.random.SeedSequence([seed_entropy, t]))
        samples = rng.integers(0, n, size=n)
        imp = np.zeros(d, dtype=np.float64)
        tree = _build_tree(
            X, y_onehot, samples, 0, max_depth, min_leaf, k_features, rng, imp, n_root=n
        )
        trees.append(tree)
        total = imp.sum()
        if total > 0:
            importance_sum += imp / total

    return ForestModel(
        trees=trees,
        classes=classes,
        n_trees=n_trees,
        seed=int(seed),
        max_depth=max_depth,
        min_leaf=min_leaf,
        n_features=d,
        importances_raw=importance_sum / n_trees,
    )


def _tree_vote(tree: dict, x: np.ndarray) -> int:
    node = tree
    while "counts" not in node:
        node = node["l"] if x[node["f"]] <= node["t"] else node["r"]
    counts = node["counts"]
    return int(np.argmax(counts))  # argmax takes the first max: smaller index wins


def forest_votes(model: ForestModel, x) -> np.ndarray:
    """Per-class vote counts across trees for one feature vector."""
    x = np.asarray(x, dtype=np.float64)
    votes = np.zeros(len(model.classes), dtype=np.int64)
    for tree in model.trees:
        votes[_tree_vote(tree, x)] += 1
    return votes


def forest_predict(model: ForestModel, x):
    """Majority-vote class label (tie -> smaller class index)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 2:
        return [model.classes[int(np.argmax(forest_votes(model, row)))] for row in x]
    return model.classes[int(np.argmax(forest_votes(model, x)))]


def forest_vote_share(model: ForestModel, x, label) -> float:
    """Fraction of trees voting for ``label``."""
    votes = forest_votes(model, x)
    return float(votes[model.classes.index(label)]) / model.n_trees


def feature_importances(model: ForestModel) -> np.ndarray:
    """Mean decrease in Gini impurity, normalized to sum to 1 (zeros if no splits)."""
    raw = model.importances_raw
    total = raw.sum()
    if total <= 0:
        return np.zeros_like(raw)
    return raw / total
