"""Independent brute-force recount of the team feature registry.

Used by tests as the oracle for feature extraction: every registry column
is computed by a fresh pass over the commit list, driven only by the
feature's name, sharing no accumulators with the production path.
"""

from __future__ import annotations

RISK_CUTOFF = 60.0

_SCOPE_NAMES = [
    "whole",
    "implementation",
    "test",
    "bugfix",
    "documentation",
    "style",
    "merge",
    "other",
]


def _ordered_member_ids(team, labeled):
    def key(member_id):
        additions = sum(
            l.commit.additions for l in labeled if l.commit.author_id == member_id
        )
        count = sum(1 for l in labeled if l.commit.author_id == member_id)
        return (additions, count, member_id)

    return sorted((m.member_id for m in team.members), key=key)


def _in_scope(item, scope):
    return scope == "whole" or item.category.value.lower() == scope


def _user_commits(labeled, member_id, scope):
    return [
        l for l in labeled if l.commit.author_id == member_id and _in_scope(l, scope)
    ]


def _metric_total(commits, metric):
    if metric == "commits":
        return len(commits)
    if metric == "additions":
        return sum(l.commit.additions for l in commits)
    if metric == "deletions":
        return sum(l.commit.deletions for l in commits)
    if metric == "files_changed":
        return sum(l.commit.files_changed for l in commits)
    if metric == "churn":
        return sum(l.commit.additions + l.commit.deletions for l in commits)
    if metric == "msg_len_total":
        return sum(len(l.commit.message) for l in commits)
    raise KeyError(metric)


def brute_force_feature(name, team, labeled):
    """Value of one registry column, recomputed from scratch."""
    users = _ordered_member_ids(team, labeled)
    members = {m.member_id: m for m in team.members}

    if name in ("team_pair_commits",):
        return float(sum(1 for l in labeled if l.pair_programming))
    if name == "team_any_risk":
        return float(
            any(
                members[u].exam1_grade < RISK_CUTOFF
                or members[u].project1_grade < RISK_CUTOFF
                for u in users
            )
        )
    if name == "team_selected":
        return float(team.selected)

    assert name.startswith(("u0_", "u1_"))
    user = users[int(name[1])]
    rest = name[3:]

    if rest == "pair_commits":
        return float(
            sum(1 for l in labeled if l.commit.author_id == user and l.pair_programming)
        )
    if rest == "exam1_grade":
        return float(members[user].exam1_grade)
    if rest == "project1_grade":
        return float(members[user].project1_grade)
    if rest == "exam1_risk":
        return float(members[user].exam1_grade < RISK_CUTOFF)
    if rest == "project1_risk":
        return float(members[user].project1_grade < RISK_CUTOFF)

    metric, scope = rest.rsplit("_", 1)
    assert scope in _SCOPE_NAMES, name
    mine = _user_commits(labeled, user, scope)

    if metric in ("commits", "additions", "deletions", "files_changed", "churn", "msg_len_total"):
        return float(_metric_total(mine, metric))
    if metric.startswith("avg_") or metric == "msg_len_avg":
        base = "msg_len_total" if metric == "msg_len_avg" else metric[4:]
        if not mine:
            return 0.0
        return _metric_total(mine, base) / len(mine)
    if metric.endswith("_share"):
        base = metric[: -len("_share")]
        base = "commits" if base == "commit" else base
        team_commits = [l for l in labeled if _in_scope(l, scope)]
        total = _metric_total(team_commits, base)
        if total == 0:
            return 0.0
        return _metric_total(mine, base) / total
    raise KeyError(name)


def brute_force_vector(team, labeled, registry):
    return [brute_force_feature(name, team, labeled) for name in registry]
