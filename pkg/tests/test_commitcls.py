import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamscope import textnorm
from teamscope.commitcls import (
    CascadeConfig,
    CascadeModel,
    CommitCategory,
    LabeledCommit,
    MlStage,
    category_distribution,
    classify,
    default_keywords,
    detect_pair_programming,
    evaluate_cascade,
    is_gibberish,
    label_commit,
    match_documentation,
    match_merge,
    match_style,
    train_cascade,
)
from teamscope.errors import DataError
from teamscope.ingest import CommitRecord
from teamscope.mlcore import LogisticModel, TfidfModel

KW = default_keywords()


@pytest.fixture(scope="module")
def lexicon():
    return textnorm.default_lexicon()


@pytest.fixture(scope="module")
def trained_cascade(tagged_sample):
    return train_cascade(tagged_sample)


@pytest.fixture(scope="module")
def tagged_sample():
    from teamscope.synthgen import GenConfig, generate_corpus

    teams, truth = generate_corpus(GenConfig(seed=11, n_teams=12, noise_rate=0.05))
    return [
        (c.message, truth.commit_categories[c.sha]) for t in teams for c in t.commits
    ]


def test_match_merge_examples():
    assert match_merge(["merge", "branch", "master", "of"], KW["merge"])
    assert match_merge(["fix", "merge", "conflict"], KW["merge"])
    assert not match_merge(["fix", "logout"], KW["merge"])


def test_match_documentation_examples():
    assert match_documentation(["add", "javadoc", "class"], KW["documentation"])
    assert match_documentation(["update", "documentation"], KW["documentation"])
    assert not match_documentation(["more", "test", "case"], KW["documentation"])


def test_match_style_examples():
    assert match_style(["fix", "pmd", "error"], KW["style"])
    assert match_style(["checkstyle"], KW["style"])
    assert not match_style(["add", "constructor"], KW["style"])


def test_is_gibberish_examples(lexicon):
    assert is_gibberish(["asdf"], lexicon)
    assert not is_gibberish(["fix", "logout"], lexicon)
    assert is_gibberish([], lexicon)


def test_gibberish_threshold_boundary(lexicon):
    # 1 meaningful of 3 tokens = 0.333... < 0.34 -> gibberish
    assert is_gibberish(["fix", "zxq", "qzx"], lexicon)
    # 1 of 2 = 0.5 -> fine
    assert not is_gibberish(["fix", "zxq"], lexicon)


def test_detect_pair_programming_whole_word():
    assert detect_pair_programming(["pp", "with", "john"])
    assert detect_pair_programming(["pair", "programming", "on", "gui"])
    assert not detect_pair_programming(["apply", "patch"])
    assert not detect_pair_programming(["apple", "support"])


def test_pair_detection_through_lemmas(lexicon):
    tokens = textnorm.normalize("Paired on the GUI today", lexicon)
    assert detect_pair_programming(tokens)


def _stub_cascade(lexicon, always_fire_category=None):
    """Cascade whose single ML stage fires on everything (bias-only model)."""
    stages = []
    if always_fire_category is not None:
        tfidf = TfidfModel(vocabulary={"x": 0}, idf=np.ones(1), max_features=1, ngram_min=1, ngram_max=1)
        logreg = LogisticModel(weights=np.zeros(1), bias=5.0, l2_lambda=0.0)
        stages = [MlStage(category=always_fire_category, tfidf=tfidf, logreg=logreg)]
    return CascadeModel(
        lexicon=lexicon,
        lemma_exceptions=textnorm.default_lemma_exceptions(),
        keywords=KW,
        gibberish_threshold=0.34,
        stages=stages,
    )


def test_classify_static_precedence_beats_ml(lexicon):
    cascade = _stub_cascade(lexicon, always_fire_category=CommitCategory.IMPLEMENTATION)
    assert classify(cascade, "Added Javadoc to the class") == CommitCategory.DOCUMENTATION
    assert classify(cascade, "Merge branch 'master' of x") == CommitCategory.MERGE
    assert classify(cascade, "Fixing PMD errors") == CommitCategory.STYLE
    assert classify(cascade, "asdf") == CommitCategory.OTHER


def test_classify_residual_other_when_no_stage_fires(lexicon):
    cascade = _stub_cascade(lexicon)  # no ML stages at all
    assert classify(cascade, "added linked list methods") == CommitCategory.OTHER


def test_classify_merge_precedence_property(lexicon):
    cascade = _stub_cascade(lexicon, always_fire_category=CommitCategory.TEST)
    for message in ("merge it all", "before merge after", "test merge test"):
        assert classify(cascade, message) == CommitCategory.MERGE


def test_classify_is_deterministic(trained_cascade, tagged_sample):
    messages = [m for m, _ in tagged_sample[:100]]
    first = [classify(trained_cascade, m) for m in messages]
    second = [classify(trained_cascade, m) for m in messages]
    assert first == second


def test_classify_partition_on_training_inputs(trained_cascade, tagged_sample):
    for message, _ in tagged_sample:
        got = classify(trained_cascade, message)
        assert isinstance(got, CommitCategory)


def test_monotone_cascade_removing_later_stage(lexicon, trained_cascade):
    truncated = CascadeModel(
        lexicon=trained_cascade.lexicon,
        lemma_exceptions=trained_cascade.lemma_exceptions,
        keywords=trained_cascade.keywords,
        gibberish_threshold=trained_cascade.gibberish_threshold,
        stages=trained_cascade.stages[:1],
    )
    for message in ("Merge branch 'master'", "Added Javadoc to the class", "asdf"):
        assert classify(truncated, message) == classify(trained_cascade, message)


@pytest.mark.filterwarnings("ignore:training labels contain a single class")
def test_train_cascade_errors_on_missing_positive_category():
    tagged = [
        ("added the main menu", CommitCategory.IMPLEMENTATION),
        ("more test cases", CommitCategory.TEST),
    ] * 3
    with pytest.raises(DataError, match="Bugfix"):
        train_cascade(tagged)


def test_train_cascade_test_stage_vocabulary_contains_test(trained_cascade):
    test_stage = next(
        s for s in trained_cascade.stages if s.category == CommitCategory.TEST
    )
    assert "test" in test_stage.tfidf.vocabulary


def test_train_cascade_stage_order_configurable(tagged_sample):
    config = CascadeConfig(
        ml_order=(CommitCategory.BUGFIX, CommitCategory.TEST, CommitCategory.IMPLEMENTATION)
    )
    cascade = train_cascade(tagged_sample, config)
    assert [s.category for s in cascade.stages] == list(config.ml_order)


def test_label_commit_carries_pair_flag(trained_cascade):
    record = CommitRecord(
        sha="e" * 40,
        author_key="a",
        timestamp=10,
        message="fixed logout pp",
        files=(),
        is_merge_shape=True,
    )
    labeled = label_commit(trained_cascade, record)
    assert labeled.pair_programming
    assert labeled.category == CommitCategory.BUGFIX


def test_evaluate_cascade_reports_other_twice(tagged_sample):
    reports = evaluate_cascade(tagged_sample, k=3, seed=5)
    assert "Other(static)" in reports and "Other(residual)" in reports
    assert reports["Other(residual)"].recall == pytest.approx(1.0)
    for key, report in reports.items():
        assert 0.0 <= report.f1 <= 1.0
        assert len(report.folds) == 3


@pytest.mark.filterwarnings("ignore:training labels contain a single class")
def test_residual_other_recall_one_on_static_only_corpus():
    tagged = (
        [("Merge branch 'master'", CommitCategory.MERGE)] * 4
        + [("Added Javadoc to the class", CommitCategory.DOCUMENTATION)] * 4
        + [("Fixing PMD errors", CommitCategory.STYLE)] * 4
        + [("asdf", CommitCategory.OTHER)] * 4
        + [("added the main menu screen", CommitCategory.IMPLEMENTATION)] * 4
        + [("more test cases for roster", CommitCategory.TEST)] * 4
        + [("fixed logout bug", CommitCategory.BUGFIX)] * 4
    )
    reports = evaluate_cascade(tagged, k=2, seed=1)
    assert reports["Other(residual)"].recall == pytest.approx(1.0)


def test_category_distribution_counts_and_ratios(trained_cascade):
    record = CommitRecord(sha="f" * 40, author_key="a", timestamp=5, message="x", files=())
    labeled = [
        LabeledCommit(record, CommitCategory.MERGE, False),
        LabeledCommit(record, CommitCategory.MERGE, False),
        LabeledCommit(record, CommitCategory.OTHER, False),
        LabeledCommit(record, CommitCategory.TEST, True),
    ]
    dist = category_distribution(labeled)
    assert dist["Merge"] == (2, 0.5)
    assert dist["Test"] == (1, 0.25)
    assert dist["Implementation"] == (0, 0.0)


@settings(max_examples=30, deadline=None)
@given(st.text(max_size=60))
def test_classify_total_function_fuzz(message):
    lexicon = textnorm.default_lexicon()
    cascade = _stub_cascade(lexicon)
    assert classify(cascade, message) in list(CommitCategory)


def test_serialization_round_trip_preserves_predictions(trained_cascade, tagged_sample):
    clone = CascadeModel.from_dict(trained_cascade.to_dict())
    for message, _ in tagged_sample[:120]:
        assert classify(clone, message) == classify(trained_cascade, message)


def test_four_hundred_message_benchmark_per_category():
    from teamscope.synthgen import GenConfig, generate_corpus

    teams, truth = generate_corpus(
        GenConfig(seed=7, n_teams=8, commits_per_team=(50, 50), noise_rate=0.1)
    )
    tagged = [
        (c.message, truth.commit_categories[c.sha]) for t in teams for c in t.commits
    ]
    assert len(tagged) == 400
    reports = evaluate_cascade(tagged, k=5, seed=7)
    for key in ("Merge", "Style", "Documentation", "Implementation", "Test", "Bugfix"):
        assert reports[key].f1 >= 0.9, f"{key}: {reports[key].f1:.3f}"
