"""From-scratch statistical machinery shared by the classification stages."""

from .evaluation import (
    EvalReport,
    cohens_kappa,
    mean_report,
    prf1,
    standardize_apply,
    standardize_fit,
    stratified_kfold,
)
from .forest import (
    ForestModel,
    feature_importances,
    forest_predict,
    forest_vote_share,
    forest_votes,
    train_forest,
)
from .logreg import (
    LogisticModel,
    logistic_loss_and_grad,
    predict,
    predict_proba,
    sigmoid,
    train_logreg,
)
from .rfe import rfe_select
from .serialize import canonical_json, dumps_model, load_model, save_model
from .tfidf import TfidfModel, fit_tfidf, iter_ngrams, tfidf_transform, tfidf_transform_many

__all__ = [
    "EvalReport",
    "ForestModel",
    "LogisticModel",
    "TfidfModel",
    "canonical_json",
    "cohens_kappa",
    "dumps_model",
    "feature_importances",
    "fit_tfidf",
    "forest_predict",
    "forest_vote_share",
    "forest_votes",
    "iter_ngrams",
    "load_model",
    "logistic_loss_and_grad",
    "mean_report",
    "predict",
    "predict_proba",
    "prf1",
    "rfe_select",
    "save_model",
    "sigmoid",
    "standardize_apply",
    "standardize_fit",
    "stratified_kfold",
    "tfidf_transform",
    "tfidf_transform_many",
    "train_forest",
    "train_logreg",
]
