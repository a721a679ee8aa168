"""Cross-validation folds, precision/recall/F1, Cohen's kappa, z-scoring."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import DataError

_U64 = 2**64 - 1
STD_EPS = 1e-12


@dataclass
class EvalReport:
    """Precision/recall/F1 for one positive class, optionally per fold."""

    precision: float
    recall: float
    f1: float
    support: int
    folds: list["EvalReport"] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": self.support,
        }
        if self.folds:
            out["folds"] = [f.to_dict() for f in self.folds]
        return out


def prf1(y_true: Sequence, y_pred: Sequence, positive_class) -> EvalReport:
    """Binary precision/recall/F1 with zero-division mapped to 0."""
    if len(y_true) != len(y_pred):
        raise DataError(f"{len(y_true)} true labels but {len(y_pred)} predictions")
    tp = fp = fn = 0
    for t, p in zip(y_true, y_pred):
        t_pos = t == positive_class
        p_pos = p == positive_class
        if t_pos and p_pos:
            tp += 1
        elif p_pos:
            fp += 1
        elif t_pos:
            fn += 1
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalReport(precision=precision, recall=recall, f1=f1, support=tp + fn)


def mean_report(folds: Sequence[EvalReport]) -> EvalReport:
    """Average fold metrics (keeping the folds as the breakdown)."""
    if not folds:
        raise ValueError("no folds to average")
    k = len(folds)
    return EvalReport(
        precision=sum(f.precision for f in folds) / k,
        recall=sum(f.recall for f in folds) / k,
        f1=sum(f.f1 for f in folds) / k,
        support=sum(f.support for f in folds),
        folds=list(folds),
    )


def stratified_kfold(labels: Sequence, k: int, seed: int = 0) -> list[list[int]]:
    """Split indices into k folds with per-class counts balanced within 1.

    Deterministic per seed: classes are dealt round-robin in sorted order
    after a seeded shuffle, with the starting fold rotating so fold sizes
    stay balanced too.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    labels = list(labels)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & _U64]))
    folds: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for cls in sorted(set(labels), key=repr):
        indices = np.array([i for i, l in enumerate(labels) if l == cls])
        rng.shuffle(indices)
        for j, idx in enumerate(indices):
            folds[(offset + j) % k].append(int(idx))
        offset = (offset + len(indices)) % k
    return [sorted(f) for f in folds]


def cohens_kappa(a: Sequence, b: Sequence) -> float:
    """Chance-corrected agreement between two labelings of the same items."""
    if len(a) != len(b):
        raise DataError(f"labelings differ in length: {len(a)} vs {len(b)}")
    n = len(a)
    if n == 0:
        raise DataError("cannot compute kappa on empty labelings")
    observed = sum(1 for x, y in zip(a, b) if x == y) / n
    counts_a: dict = {}
    counts_b: dict = {}
    for x in a:
        counts_a[x] = counts_a.get(x, 0) + 1
    for y in b:
        counts_b[y] = counts_b.get(y, 0) + 1
    # summation in sorted label order keeps the float result process-independent
    expected = sum(
        (counts_a.get(label, 0) / n) * (counts_b.get(label, 0) / n)
        for label in sorted(set(counts_a) | set(counts_b), key=repr)
    )
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)


def standardize_fit(X) -> tuple[np.ndarray, np.ndarray]:
    """Per-column mean and population standard deviation."""
    X = np.asarray(X, dtype=np.float64)
    return X.mean(axis=0), X.std(axis=0)


def standardize_apply(X, means: np.ndarray, stds: np.ndarray) -> np.ndarray:
    """Z-score columns; near-constant columns (std < 1e-12) map to zero."""
    X = np.asarray(X, dtype=np.float64)
    safe = np.where(stds < STD_EPS, 1.0, stds)
    return np.where(stds < STD_EPS, 0.0, (X - means) / safe)
