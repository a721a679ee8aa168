import numpy as np
import pytest

from teamscope.errors import DataError
from teamscope.mlcore import (
    dumps_model,
    feature_importances,
    forest_predict,
    forest_vote_share,
    train_forest,
)


def test_pure_single_class_input_predicts_that_class():
    X = np.arange(12.0).reshape(6, 2)
    model = train_forest(X, ["only"] * 6, n_trees=5, seed=1)
    assert forest_predict(model, X) == ["only"] * 6


def test_separable_1d_single_stump_is_perfect():
    X = np.array([[-2.0], [-1.5], [-1.0], [1.0], [1.5], [2.0]])
    y = [0, 0, 0, 1, 1, 1]
    model = train_forest(X, y, n_trees=1, seed=3, max_depth=1)
    assert forest_predict(model, X) == y


def test_same_seed_serializes_byte_equal():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(40, 6))
    y = (X[:, 1] > 0).astype(int)
    a = train_forest(X, y, n_trees=10, seed=99)
    b = train_forest(X, y, n_trees=10, seed=99)
    assert dumps_model("forest", a.to_dict()) == dumps_model("forest", b.to_dict())


def test_different_seeds_differ():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(40, 6))
    y = (X[:, 1] > 0).astype(int)
    a = train_forest(X, y, n_trees=10, seed=1)
    b = train_forest(X, y, n_trees=10, seed=2)
    assert dumps_model("forest", a.to_dict()) != dumps_model("forest", b.to_dict())


def test_empty_input_errors():
    with pytest.raises(DataError):
        train_forest(np.zeros((0, 3)), [])


def test_importances_all_on_single_split_feature():
    # feature 3 is the only informative column; stumps must all use it
    rng = np.random.default_rng(0)
    X = np.zeros((50, 5))
    X[:, 3] = np.linspace(-1, 1, 50)
    y = (X[:, 3] > 0).astype(int)
    model = train_forest(X, y, n_trees=20, seed=5, max_depth=1)
    imp = feature_importances(model)
    assert imp[3] == pytest.approx(1.0)
    assert np.sum(imp) == pytest.approx(1.0, abs=1e-9)


def test_importances_zero_when_no_splits():
    X = np.ones((4, 3))  # constant features leave nothing to split on
    model = train_forest(X, [0, 1, 0, 1], n_trees=5, seed=2)
    assert np.all(feature_importances(model) == 0.0)


def test_importances_rank_informative_over_noise():
    rng = np.random.default_rng(12)
    X = np.column_stack([np.repeat([0.0, 1.0], 30), rng.normal(size=60)])
    y = (X[:, 0] > 0.5).astype(int)
    model = train_forest(X, y, n_trees=30, seed=8)
    imp = feature_importances(model)
    assert imp[0] > imp[1]
    assert imp.sum() == pytest.approx(1.0, abs=1e-9)


def test_majority_vote_tie_goes_to_smaller_class_index():
    # force two stumps that disagree by training on opposite labelings
    X = np.array([[0.0], [1.0]])
    a = train_forest(X, [0, 1], n_trees=1, seed=1, max_depth=1)
    b = train_forest(X, [1, 0], n_trees=1, seed=1, max_depth=1)
    combined = train_forest(X, [0, 1], n_trees=2, seed=1, max_depth=1)
    combined.trees = [a.trees[0], b.trees[0]]
    # votes split 1-1 for class indices 0 and 1 -> class 0 wins
    assert forest_predict(combined, np.array([0.0])) == 0
    assert forest_vote_share(combined, np.array([0.0]), 1) == pytest.approx(0.5)


def test_min_leaf_respected():
    X = np.arange(10.0).reshape(-1, 1)
    y = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
    model = train_forest(X, y, n_trees=5, seed=4, min_leaf=3)

    def leaves(node):
        if "counts" in node:
            yield sum(node["counts"])
        else:
            yield from leaves(node["l"])
            yield from leaves(node["r"])

    for tree in model.trees:
        assert all(n >= 3 for n in leaves(tree))


def test_bootstrap_per_tree_differs():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(30, 3))
    y = (X[:, 0] > 0).astype(int)
    model = train_forest(X, y, n_trees=2, seed=42)
    assert model.trees[0] != model.trees[1]


def test_tree_randomness_is_per_tree_not_sequential():
    # tree t depends only on (seed, t): a smaller forest is a prefix of a larger
    # one, which is what makes parallel tree training equivalent to serial
    rng = np.random.default_rng(6)
    X = rng.normal(size=(30, 4))
    y = (X[:, 2] > 0).astype(int)
    small = train_forest(X, y, n_trees=3, seed=17)
    large = train_forest(X, y, n_trees=6, seed=17)
    assert large.trees[:3] == small.trees


def test_string_labels_round_trip():
    X = np.array([[-1.0], [-0.5], [0.5], [1.0]])
    y = ["no", "no", "yes", "yes"]
    model = train_forest(X, y, n_trees=3, seed=0)
    assert set(forest_predict(model, X)) <= {"no", "yes"}
    assert model.classes == ["no", "yes"]
