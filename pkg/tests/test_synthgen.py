import json

import pytest

from teamscope import textnorm
from teamscope.commitcls import CommitCategory, default_keywords
from teamscope.errors import DataError
from teamscope.ingest import build_teams, load_commits_jsonl, load_roster
from teamscope.synthgen import (
    GenConfig,
    generate_corpus,
    template_pools,
    truth_labeled_commits,
    write_corpus,
)
from teamscope.teamstyle import TeamStyle, oracle_label


def _corpus_fingerprint(teams, truth):
    blob = {
        "teams": [
            {
                "id": t.team_id,
                "members": [
                    (m.member_id, m.exam1_grade, m.project1_grade, m.author_keys)
                    for m in t.members
                ],
                "selected": t.selected,
                "commits": [
                    (c.sha, c.author_key, c.timestamp, c.message,
                     [(f.path, f.additions, f.deletions, f.binary) for f in c.files])
                    for c in t.commits
                ],
            }
            for t in teams
        ],
        "styles": {k: v.value for k, v in truth.team_styles.items()},
        "categories": {k: v.value for k, v in truth.commit_categories.items()},
    }
    return json.dumps(blob, sort_keys=True)


def test_same_seed_is_byte_identical():
    config = GenConfig(seed=7, n_teams=8, noise_rate=0.1)
    a = _corpus_fingerprint(*generate_corpus(config))
    b = _corpus_fingerprint(*generate_corpus(config))
    assert a == b


def test_different_seed_differs():
    a = _corpus_fingerprint(*generate_corpus(GenConfig(seed=1, n_teams=4)))
    b = _corpus_fingerprint(*generate_corpus(GenConfig(seed=2, n_teams=4)))
    assert a != b


def test_all_solo_mix_verifies_with_oracle():
    teams, truth = generate_corpus(
        GenConfig(seed=13, n_teams=10, style_mix=(0.0, 0.0, 1.0), noise_rate=0.1)
    )
    for team in teams:
        labeled = truth_labeled_commits(team, truth)
        assert oracle_label(team, labeled) == TeamStyle.SOLO_SUBMIT


def test_oracle_matches_intended_style_for_every_team():
    teams, truth = generate_corpus(
        GenConfig(seed=14, n_teams=15, style_mix=(0.4, 0.4, 0.2), noise_rate=0.2)
    )
    for team in teams:
        labeled = truth_labeled_commits(team, truth)
        assert oracle_label(team, labeled) == truth.team_styles[team.team_id]


def test_zero_noise_messages_match_templates_exactly():
    pools = template_pools()
    teams, truth = generate_corpus(GenConfig(seed=15, n_teams=6, noise_rate=0.0))
    for team in teams:
        for commit in team.commits:
            category = truth.commit_categories[commit.sha]
            assert commit.message in pools[category.value]


def test_static_stages_recover_merge_doc_style():
    keywords = default_keywords()
    lexicon = textnorm.default_lexicon()
    teams, truth = generate_corpus(GenConfig(seed=16, n_teams=10, noise_rate=0.3))
    static_map = {
        CommitCategory.MERGE: keywords["merge"],
        CommitCategory.DOCUMENTATION: keywords["documentation"],
        CommitCategory.STYLE: keywords["style"],
    }
    for team in teams:
        for commit in team.commits:
            category = truth.commit_categories[commit.sha]
            if category not in static_map:
                continue
            tokens = set(textnorm.normalize(commit.message, lexicon))
            assert tokens & static_map[category], commit.message
            # earlier cascade stages must not steal the commit
            if category != CommitCategory.MERGE:
                assert not (tokens & keywords["merge"])
            if category == CommitCategory.STYLE:
                assert not (tokens & keywords["documentation"])


def test_style_mix_counts_follow_largest_remainder():
    teams, truth = generate_corpus(
        GenConfig(seed=17, n_teams=10, style_mix=(0.57, 0.29, 0.14), noise_rate=0.0)
    )
    styles = list(truth.team_styles.values())
    assert styles.count(TeamStyle.COLLABORATIVE) == 6
    assert styles.count(TeamStyle.COOPERATIVE) == 3
    assert styles.count(TeamStyle.SOLO_SUBMIT) == 1


def test_config_validation():
    with pytest.raises(ValueError, match="sum to 1"):
        GenConfig(style_mix=(0.5, 0.5, 0.5))
    with pytest.raises(ValueError, match="commits_per_team"):
        GenConfig(commits_per_team=(10, 5))
    with pytest.raises(ValueError, match="noise_rate"):
        GenConfig(noise_rate=1.5)
    with pytest.raises(ValueError, match="churn range"):
        GenConfig(churn_ranges={CommitCategory.TEST: (5, 1, 0, 0)})


def test_written_corpus_round_trips_through_ingest(tmp_path):
    teams, truth = generate_corpus(GenConfig(seed=18, n_teams=5, noise_rate=0.1))
    write_corpus(teams, truth, tmp_path)

    commits = load_commits_jsonl(tmp_path / "commits.jsonl")
    roster = load_roster(tmp_path / "roster.csv")
    assembly = build_teams(commits, roster)
    assert assembly.unmatched == 0
    by_id = {t.team_id: t for t in assembly.teams}
    for team in teams:
        reloaded = by_id[team.team_id]
        assert [c.sha for c in reloaded.commits] == [c.sha for c in team.commits]
        assert all(
            a.author_id == b.author_id and a.files == b.files and a.message == b.message
            for a, b in zip(reloaded.commits, team.commits)
        )

    truth_rows = (tmp_path / "truth_teams.csv").read_text().splitlines()
    assert truth_rows[0] == "team_id,style"
    assert len(truth_rows) == 1 + len(teams)
    commit_rows = (tmp_path / "truth_commits.csv").read_text().splitlines()
    assert commit_rows[0] == "sha,category"
    assert len(commit_rows) == 1 + sum(len(t.commits) for t in teams)


def test_unsatisfiable_config_raises_data_error():
    # zero-churn everything makes every style plan fail its rubric re-check
    ranges = {cat: (0, 0, 0, 0) for cat in CommitCategory}
    config = GenConfig(seed=19, n_teams=2, churn_ranges=ranges, max_retries=3)
    with pytest.raises(DataError, match="attempts"):
        generate_corpus(config)


def test_pair_programming_mentions_appear_with_noise():
    teams, truth = generate_corpus(
        GenConfig(seed=20, n_teams=12, noise_rate=0.1, pair_rate=0.3,
                  style_mix=(1.0, 0.0, 0.0))
    )
    lexicon = textnorm.default_lexicon()
    from teamscope.commitcls import detect_pair_programming

    found = sum(
        detect_pair_programming(textnorm.normalize(c.message, lexicon))
        for t in teams
        for c in t.commits
    )
    assert found > 0
