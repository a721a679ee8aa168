"""Team work-style labeling and prediction.

A rubric oracle turns labeled commits into Collaborative / Cooperative /
Solo-submit ground truth: a team is Collaborative when both members carry a
30-70% churn share in at least two sufficiently active project parts,
Solo-submit when user 0's whole-project churn share falls below a floor,
and Cooperative otherwise. Predictive models are cascades of one-vs-rest
binary classifiers (random forest, or logistic regression with RFE feature
selection) over the standardized team feature matrix; evaluation refits
standardization and feature selection inside every fold so nothing leaks
from test rows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .commitcls import CommitCategory, LabeledCommit
from .errors import DataError, InsufficientActivityError
from .ingest import TeamRecord
from .mlcore import (
    EvalReport,
    ForestModel,
    LogisticModel,
    feature_importances,
    forest_predict,
    forest_vote_share,
    mean_report,
    predict_proba,
    prf1,
    rfe_select,
    standardize_apply,
    standardize_fit,
    stratified_kfold,
    train_forest,
    train_logreg,
)
from .teamfeat import REGISTRY_VERSION, TeamFeatureVector, order_users

_U64 = 2**64 - 1


class TeamStyle(str, enum.Enum):
    COLLABORATIVE = "Collaborative"
    COOPERATIVE = "Cooperative"
    SOLO_SUBMIT = "SoloSubmit"

    def __str__(self) -> str:
        return self.value


STYLES = list(TeamStyle)

# parts that count toward the collaboration rubric (merge/other churn is
# mostly automatic or junk and says little about the division of labor)
RUBRIC_PARTS = (
    CommitCategory.IMPLEMENTATION,
    CommitCategory.TEST,
    CommitCategory.BUGFIX,
    CommitCategory.DOCUMENTATION,
    CommitCategory.STYLE,
)

DEFAULT_MIN_PART_CHURN = 30
DEFAULT_COLLAB_BAND = (0.30, 0.70)
DEFAULT_SOLO_SHARE = 0.20
DEFAULT_STAGE_ORDER = (TeamStyle.SOLO_SUBMIT, TeamStyle.COOPERATIVE, TeamStyle.COLLABORATIVE)
FALLBACK_STYLE = TeamStyle.COLLABORATIVE

FOREST_DEFAULT_K = 12
LOGISTIC_DEFAULT_K = 26


def oracle_label(
    team: TeamRecord,
    labeled: Sequence[LabeledCommit],
    min_part_churn: int = DEFAULT_MIN_PART_CHURN,
    collab_band: tuple[float, float] = DEFAULT_COLLAB_BAND,
    solo_share: float = DEFAULT_SOLO_SHARE,
) -> TeamStyle:
    """Apply the contribution-share rubric to one team's labeled commits."""
    ordering = order_users(team, labeled)
    part_churn = {part: {0: 0, 1: 0} for part in RUBRIC_PARTS}
    whole = {0: 0, 1: 0}
    for item in labeled:
        user = 0 if item.commit.author_id == ordering.user0 else 1
        whole[user] += item.commit.churn
        if item.category in part_churn:
            part_churn[item.category][user] += item.commit.churn

    active = {
        part: churn
        for part, churn in part_churn.items()
        if churn[0] + churn[1] >= min_part_churn
    }
    if not active:
        raise InsufficientActivityError(
            f"team {team.team_id!r}: no project part reaches {min_part_churn} "
            "churned lines; the style rubric does not apply"
        )

    low, high = collab_band
    balanced = sum(
        1
        for churn in active.values()
        if low <= churn[0] / (churn[0] + churn[1]) <= high
    )
    if balanced >= 2:
        return TeamStyle.COLLABORATIVE
    whole_total = whole[0] + whole[1]
    if whole_total > 0 and whole[0] / whole_total < solo_share:
        return TeamStyle.SOLO_SUBMIT
    return TeamStyle.COOPERATIVE


@dataclass
class TeamStyleConfig:
    n_trees: int = 100
    max_depth: int | None = None
    min_leaf: int = 1
    l2_lambda: float = 1.0
    learning_rate: float = 0.1
    max_iters: int = 1000
    tol: float = 1e-6
    # RFE only ranks weights, so its interim fits get a smaller budget than
    # the final stage model (which trains with max_iters above)
    selection_max_iters: int = 250
    stage_order: tuple[TeamStyle, ...] = DEFAULT_STAGE_ORDER
    fallback: TeamStyle = FALLBACK_STYLE


@dataclass
class StyleStage:
    style: TeamStyle
    selected: list[int]
    model: ForestModel | LogisticModel

    def score(self, z: np.ndarray) -> float:
        x = z[self.selected]
        if isinstance(self.model, ForestModel):
            return forest_vote_share(self.model, x, 1) if 1 in self.model.classes else 0.0
        return predict_proba(self.model, x)

    def fires(self, z: np.ndarray) -> bool:
        x = z[self.selected]
        if isinstance(self.model, ForestModel):
            return forest_predict(self.model, x) == 1
        return predict_proba(self.model, x) >= 0.5


@dataclass
class TeamStyleModel:
    algorithm: str  # "forest" | "logistic_rfe"
    stages: list[StyleStage]
    means: np.ndarray
    stds: np.ndarray
    registry_version: str = REGISTRY_VERSION
    fallback: TeamStyle = FALLBACK_STYLE

    def standardize(self, x_raw: np.ndarray) -> np.ndarray:
        return standardize_apply(np.asarray(x_raw, dtype=np.float64), self.means, self.stds)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "registry_version": self.registry_version,
            "fallback": self.fallback.value,
            "means": [float(v) for v in self.means],
            "stds": [float(v) for v in self.stds],
            "stages": [
                {
                    "style": s.style.value,
                    "selected": list(s.selected),
                    "model_type": "forest" if isinstance(s.model, ForestModel) else "logistic",
                    "model": s.model.to_dict(),
                }
                for s in self.stages
            ],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "TeamStyleModel":
        stages = []
        for s in raw["stages"]:
            model_cls = ForestModel if s["model_type"] == "forest" else LogisticModel
            stages.append(
                StyleStage(
                    style=TeamStyle(s["style"]),
                    selected=[int(i) for i in s["selected"]],
                    model=model_cls.from_dict(s["model"]),
                )
            )
        return cls(
            algorithm=raw["algorithm"],
            stages=stages,
            means=np.asarray(raw["means"], dtype=np.float64),
            stds=np.asarray(raw["stds"], dtype=np.float64),
            registry_version=raw["registry_version"],
            fallback=TeamStyle(raw["fallback"]),
        )


def _select_forest(Xs, y, k, seed, config) -> list[int]:
    selector = train_forest(
        Xs, y, n_trees=config.n_trees, seed=seed,
        max_depth=config.max_depth, min_leaf=config.min_leaf,
    )
    importances = feature_importances(selector)
    ranked = sorted(range(len(importances)), key=lambda i: (-importances[i], i))
    return sorted(ranked[:k])


def train_team_model(
    X_raw,
    labels: Sequence[TeamStyle],
    algorithm: str = "forest",
    k_features: int | None = None,
    seed: int = 0,
    config: TeamStyleConfig | None = None,
) -> TeamStyleModel:
    """Fit one binary one-vs-rest stage per style on selected features.

    The forest path picks the top-k features by impurity importance; the
    logistic path selects by recursive feature elimination. Standardization
    parameters are fit here and stored for inference.
    """
    config = config or TeamStyleConfig()
    if algorithm not in ("forest", "logistic_rfe"):
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if len(set(config.stage_order)) != len(config.stage_order):
        raise ValueError(f"duplicate style in stage order {config.stage_order}")
    X_raw = np.asarray(X_raw, dtype=np.float64)
    labels = list(labels)
    if X_raw.shape[0] != len(labels):
        raise DataError(f"{X_raw.shape[0]} rows but {len(labels)} labels")
    present = set(labels)
    missing = [s.value for s in STYLES if s not in present]
    if missing:
        raise DataError(f"styles absent from training labels: {missing}")
    if k_features is None:
        k_features = FOREST_DEFAULT_K if algorithm == "forest" else LOGISTIC_DEFAULT_K
    if k_features < 1:
        raise ValueError("k_features must be >= 1")
    k_features = min(k_features, X_raw.shape[1])

    means, stds = standardize_fit(X_raw)
    Xs = standardize_apply(X_raw, means, stds)
    seed_entropy = int(seed) & _U64

    stages = []
    for stage_idx, style in enumerate(config.stage_order):
        y = np.array([1 if l == style else 0 for l in labels], dtype=np.int64)
        if algorithm == "forest":
            select_seed = np.random.SeedSequence([seed_entropy, stage_idx, 0]).generate_state(1)[0]
            fit_seed = np.random.SeedSequence([seed_entropy, stage_idx, 1]).generate_state(1)[0]
            selected = _select_forest(Xs, y, k_features, int(select_seed), config)
            model = train_forest(
                Xs[:, selected], y, n_trees=config.n_trees, seed=int(fit_seed),
                max_depth=config.max_depth, min_leaf=config.min_leaf,
            )
        else:
            selected = rfe_select(
                Xs, y, k_features,
                l2_lambda=config.l2_lambda, learning_rate=config.learning_rate,
                max_iters=config.selection_max_iters, tol=config.tol,
            )
            model = train_logreg(
                Xs[:, selected], y,
                l2_lambda=config.l2_lambda, learning_rate=config.learning_rate,
                max_iters=config.max_iters, tol=config.tol,
            )
        stages.append(StyleStage(style=style, selected=selected, model=model))

    return TeamStyleModel(
        algorithm=algorithm, stages=stages, means=means, stds=stds,
        fallback=config.fallback,
    )


def predict_style(model: TeamStyleModel, x_raw) -> TeamStyle:
    """First stage that fires wins; none firing falls back to the majority class."""
    return predict_style_with_confidence(model, x_raw)[0]


def predict_style_with_confidence(model: TeamStyleModel, x_raw) -> tuple[TeamStyle, float]:
    z = model.standardize(x_raw)
    scores = []
    for stage in model.stages:
        score = stage.score(z)
        if stage.fires(z):
            return stage.style, score
        scores.append(score)
    return model.fallback, (1.0 - max(scores)) if scores else 1.0


@dataclass
class TeamEvalResult:
    """Per-style fold-averaged metrics plus the full-data model's features."""

    reports: dict[str, EvalReport]
    macro_f1: float
    selected_features: dict[str, list[str]]
    algorithm: str


def evaluate_team_model(
    X_raw,
    labels: Sequence[TeamStyle],
    algorithm: str = "forest",
    k: int = 5,
    seed: int = 0,
    k_features: int | None = None,
    registry: Sequence[str] | None = None,
    config: TeamStyleConfig | None = None,
) -> TeamEvalResult:
    """Stratified k-fold evaluation with fold-internal selection and scaling."""
    X_raw = np.asarray(X_raw, dtype=np.float64)
    labels = list(labels)
    folds = stratified_kfold(labels, k, seed)
    per_style: dict[TeamStyle, list[EvalReport]] = {s: [] for s in STYLES}

    for test_idx in folds:
        test_set = set(test_idx)
        train_rows = [i for i in range(len(labels)) if i not in test_set]
        fold_model = train_team_model(
            X_raw[train_rows],
            [labels[i] for i in train_rows],
            algorithm=algorithm,
            k_features=k_features,
            seed=seed,
            config=config,
        )
        y_true = [labels[i] for i in test_idx]
        y_pred = [predict_style(fold_model, X_raw[i]) for i in test_idx]
        for style in STYLES:
            per_style[style].append(prf1(y_true, y_pred, style))

    reports = {
        style.value: mean_report(fold_reports)
        for style, fold_reports in per_style.items()
    }
    macro_f1 = sum(r.f1 for r in reports.values()) / len(reports)

    full_model = train_team_model(
        X_raw, labels, algorithm=algorithm, k_features=k_features, seed=seed, config=config
    )
    names = list(registry) if registry is not None else None
    selected_features = {
        stage.style.value: [names[i] if names else str(i) for i in stage.selected]
        for stage in full_model.stages
    }
    return TeamEvalResult(
        reports=reports,
        macro_f1=macro_f1,
        selected_features=selected_features,
        algorithm=algorithm,
    )


@dataclass
class SoloFlag:
    team_id: str
    style: TeamStyle
    confidence: float
    features: list[tuple[str, float]]  # (registry name, standardized value)


def flag_solo_submitters(
    model: TeamStyleModel, vectors: Sequence[TeamFeatureVector]
) -> list[SoloFlag]:
    """Teams predicted Solo-submit, most confident first, with stage features."""
    solo_stage = next(
        (s for s in model.stages if s.style == TeamStyle.SOLO_SUBMIT), None
    )
    flags = []
    for vec in vectors:
        style, confidence = predict_style_with_confidence(model, vec.values)
        if style != TeamStyle.SOLO_SUBMIT:
            continue
        z = model.standardize(vec.values)
        features = [
            (vec.registry[i], float(z[i])) for i in (solo_stage.selected if solo_stage else [])
        ]
        flags.append(
            SoloFlag(team_id=vec.team_id, style=style, confidence=confidence, features=features)
        )
    flags.sort(key=lambda f: (-f.confidence, f.team_id))
    return flags
