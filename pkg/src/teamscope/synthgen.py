"""Seeded generator of synthetic teams, commits, and ground truth.

Teams are planned style-first: per project part, user 0 is given a target
churn share matching the intended work style (balanced shares in common
parts for collaborative teams, near-exclusive part ownership for
cooperative ones, a tiny share everywhere for solo-submit), commit sizes
are drawn per category, and commits are dealt to the two users by a greedy
fill that tracks the target. Every finished team is re-checked against the
style rubric and regenerated with a fresh derived seed on mismatch, so
emitted ground truth is consistent by construction. Messages come from
per-category template pools; the noise rate controls appended filler,
cross-category, and gibberish tokens (never touching the keyword that makes
merge/documentation/style templates statically recoverable).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import textnorm
from .commitcls import CommitCategory, LabeledCommit, detect_pair_programming
from .errors import DataError
from .ingest import CommitRecord, FileStat, RosterMember, TeamRecord, dump_commits_jsonl, dump_roster
from .teamstyle import TeamStyle, oracle_label

_U64 = 2**64 - 1

RUBRIC_CATEGORIES = (
    CommitCategory.IMPLEMENTATION,
    CommitCategory.TEST,
    CommitCategory.BUGFIX,
    CommitCategory.DOCUMENTATION,
    CommitCategory.STYLE,
)

# fraction of a team's commits per category, loosely shaped like real course data
CATEGORY_MIX = {
    CommitCategory.IMPLEMENTATION: 0.33,
    CommitCategory.BUGFIX: 0.27,
    CommitCategory.TEST: 0.14,
    CommitCategory.DOCUMENTATION: 0.06,
    CommitCategory.STYLE: 0.05,
    CommitCategory.MERGE: 0.06,
    CommitCategory.OTHER: 0.09,
}

# (add_lo, add_hi, del_lo, del_hi) lines per commit
DEFAULT_CHURN_RANGES = {
    CommitCategory.IMPLEMENTATION: (20, 120, 0, 30),
    CommitCategory.TEST: (15, 80, 0, 20),
    CommitCategory.BUGFIX: (2, 30, 1, 20),
    CommitCategory.DOCUMENTATION: (3, 30, 0, 8),
    CommitCategory.STYLE: (1, 15, 1, 15),
    CommitCategory.MERGE: (0, 0, 0, 0),
    CommitCategory.OTHER: (0, 8, 0, 4),
}

_PATH_POOLS = {
    "src": [
        "src/Main.java",
        "src/Scheduler.java",
        "src/CourseRoster.java",
        "src/ActivityList.java",
        "src/ui/MainGUI.java",
        "src/util/SortedList.java",
        "src/model/Course.java",
        "src/model/Event.java",
    ],
    "test": [
        "test/SchedulerTest.java",
        "test/CourseRosterTest.java",
        "test/ActivityListTest.java",
        "test/util/SortedListTest.java",
    ],
    "doc": ["README.md", "doc/design.md", "doc/javadoc/index.html"],
}
_BINARY_PATHS = ["img/logo.png", "lib/junit.jar"]

_CROSS_BLEED = {
    CommitCategory.IMPLEMENTATION: ["added", "implement", "method", "class"],
    CommitCategory.TEST: ["test", "coverage", "cases"],
    CommitCategory.BUGFIX: ["fixed", "bug", "issue"],
}

_GIBBERISH_LETTERS = "bcdfghjklmnpqrstvwxz"
_BASE_TIMESTAMP = 1443657600  # fall-semester epoch for synthetic histories


@dataclass
class GenConfig:
    seed: int = 0
    n_teams: int = 150
    style_mix: tuple[float, float, float] = (0.57, 0.29, 0.14)  # collab, coop, solo
    commits_per_team: tuple[int, int] = (35, 75)
    churn_ranges: dict = field(default_factory=lambda: dict(DEFAULT_CHURN_RANGES))
    noise_rate: float = 0.1
    pair_rate: float = 0.05
    project_id: str = "P2"
    max_retries: int = 50

    def __post_init__(self):
        if abs(sum(self.style_mix) - 1.0) > 1e-9:
            raise ValueError(f"style_mix must sum to 1, got {self.style_mix}")
        if any(m < 0 for m in self.style_mix):
            raise ValueError("style_mix entries must be non-negative")
        lo, hi = self.commits_per_team
        if not (0 < lo <= hi):
            raise ValueError(f"empty commits_per_team range {self.commits_per_team}")
        if not 0.0 <= self.noise_rate <= 1.0:
            raise ValueError("noise_rate must be within [0, 1]")
        merged = dict(DEFAULT_CHURN_RANGES)
        merged.update(self.churn_ranges)
        self.churn_ranges = merged
        for cat, rng_tuple in self.churn_ranges.items():
            add_lo, add_hi, del_lo, del_hi = rng_tuple
            if add_lo > add_hi or del_lo > del_hi:
                raise ValueError(f"empty churn range for {cat}")


@dataclass
class GroundTruth:
    team_styles: dict[str, TeamStyle]
    commit_categories: dict[str, CommitCategory]


def _largest_remainder(weights: Sequence[float], total: int) -> list[int]:
    raw = [w * total for w in weights]
    counts = [int(r) for r in raw]
    shortfall = total - sum(counts)
    order = sorted(range(len(raw)), key=lambda i: (-(raw[i] - counts[i]), i))
    for i in order[:shortfall]:
        counts[i] += 1
    return counts


@dataclass
class _TemplatePools:
    by_category: dict[CommitCategory, list[str]]
    fillers: list[str]

    @classmethod
    def load(cls) -> "_TemplatePools":
        data = Path(textnorm._data_dir())
        by_category = {}
        for cat in CommitCategory:
            lines = [
                l
                for l in (data / f"templates_{cat.value.lower()}.txt")
                .read_text(encoding="utf-8")
                .splitlines()
                if l.strip() and not l.startswith("#")
            ]
            by_category[cat] = lines
        fillers = [
            l
            for l in (data / "noise_fillers.txt").read_text(encoding="utf-8").splitlines()
            if l.strip() and not l.startswith("#")
        ]
        return cls(by_category=by_category, fillers=fillers)


def template_pools() -> dict[str, list[str]]:
    """Public view of the bundled message templates, keyed by category name."""
    pools = _TemplatePools.load()
    return {cat.value: list(lines) for cat, lines in pools.by_category.items()}


def _gibberish_token(rng: np.random.Generator, veto: frozenset[str]) -> str:
    for _ in range(100):
        length = int(rng.integers(4, 8))
        token = "".join(
            _GIBBERISH_LETTERS[int(i)]
            for i in rng.integers(0, len(_GIBBERISH_LETTERS), size=length)
        )
        if token not in veto:
            return token
    raise RuntimeError("could not draw a non-word gibberish token")


class _TeamPlanError(Exception):
    """Internal: a sampled team failed the rubric re-check; retry."""


def generate_corpus(config: GenConfig) -> tuple[list[TeamRecord], GroundTruth]:
    """Generate ``n_teams`` teams with commits and consistent ground truth."""
    pools = _TemplatePools.load()
    lexicon = textnorm.default_lexicon()
    veto = lexicon.meaningful_words | lexicon.stopwords
    seed_entropy = int(config.seed) & _U64

    style_counts = _largest_remainder(config.style_mix, config.n_teams)
    styles = (
        [TeamStyle.COLLABORATIVE] * style_counts[0]
        + [TeamStyle.COOPERATIVE] * style_counts[1]
        + [TeamStyle.SOLO_SUBMIT] * style_counts[2]
    )
    corpus_rng = np.random.default_rng(np.random.SeedSequence([seed_entropy]))
    styles = [styles[i] for i in corpus_rng.permutation(len(styles))]

    teams: list[TeamRecord] = []
    truth_styles: dict[str, TeamStyle] = {}
    truth_categories: dict[str, CommitCategory] = {}

    for team_idx, intended in enumerate(styles):
        for attempt in range(config.max_retries):
            rng = np.random.default_rng(
                np.random.SeedSequence([seed_entropy, team_idx, attempt])
            )
            try:
                team, categories = _generate_team(
                    config, pools, veto, rng, team_idx, attempt, intended
                )
            except _TeamPlanError:
                continue
            teams.append(team)
            truth_styles[team.team_id] = intended
            truth_categories.update(categories)
            break
        else:
            raise DataError(
                f"team {team_idx}: {config.max_retries} attempts failed to "
                f"satisfy the {intended.value} rubric"
            )

    return teams, GroundTruth(team_styles=truth_styles, commit_categories=truth_categories)


def _generate_team(config, pools, veto, rng, team_idx, attempt, intended):
    team_id = f"t{team_idx:03d}"
    member_ids = (f"s{team_idx:03d}a", f"s{team_idx:03d}b")
    members = tuple(
        RosterMember(
            member_id=mid,
            exam1_grade=round(float(rng.uniform(45, 100)), 1),
            project1_grade=round(float(rng.uniform(45, 100)), 1),
            author_keys=(mid, f"{mid}@example.edu"),
        )
        for mid in member_ids
    )
    selected = bool(rng.random() < 0.6)

    n_commits = int(rng.integers(config.commits_per_team[0], config.commits_per_team[1] + 1))
    cats = list(CATEGORY_MIX)
    counts = dict(zip(cats, _largest_remainder([CATEGORY_MIX[c] for c in cats], n_commits)))
    for cat in RUBRIC_CATEGORIES[:3]:  # implementation/test/bugfix always present
        if counts[cat] < 2:
            counts[cat] += 2

    shares = _plan_shares(rng, intended)

    # user index -> list of (category, additions, deletions)
    commit_specs: list[tuple[int, CommitCategory, int, int]] = []
    for cat in RUBRIC_CATEGORIES:
        specs = _sized_commits(rng, config.churn_ranges[cat], counts[cat])
        commit_specs.extend(
            (user, cat, add, dele)
            for user, (add, dele) in _deal_to_users(specs, shares[cat])
        )
    solo = intended == TeamStyle.SOLO_SUBMIT
    for cat in (CommitCategory.MERGE, CommitCategory.OTHER):
        for add, dele in _sized_commits(rng, config.churn_ranges[cat], counts[cat]):
            user = 0 if rng.random() < (0.05 if solo else 0.5) else 1
            commit_specs.append((user, cat, add, dele))
    if solo and not any(user == 0 for user, *_ in commit_specs):
        # the quiet member still pokes at the repo once
        commit_specs.append((0, CommitCategory.BUGFIX, 1, 1))

    order = rng.permutation(len(commit_specs))
    timestamp = _BASE_TIMESTAMP + team_idx * 7 * 86400
    commits: list[CommitRecord] = []
    categories: dict[str, CommitCategory] = {}
    for seq, spec_idx in enumerate(order):
        user, cat, add, dele = commit_specs[int(spec_idx)]
        timestamp += int(rng.integers(180, 14401))
        sha = hashlib.sha1(
            f"{config.seed}:{team_id}:{attempt}:{seq}".encode()
        ).hexdigest()
        message = _render_message(rng, pools, veto, config, cat, intended)
        member = members[user]
        key = member.author_keys[int(rng.integers(0, len(member.author_keys)))]
        commits.append(
            CommitRecord(
                sha=sha,
                author_key=key,
                author_id=member.member_id,
                timestamp=timestamp,
                message=message,
                files=_render_files(rng, cat, add, dele),
                is_merge_shape=cat == CommitCategory.MERGE,
            )
        )
        categories[sha] = cat

    team = TeamRecord(
        team_id=team_id,
        project_id=config.project_id,
        members=members,
        selected=selected,
        commits=tuple(commits),
    )

    labeled = [
        LabeledCommit(commit=c, category=categories[c.sha], pair_programming=False)
        for c in commits
    ]
    try:
        verdict = oracle_label(team, labeled)
    except DataError:
        raise _TeamPlanError
    if verdict != intended:
        raise _TeamPlanError
    return team, categories


def _plan_shares(rng, intended) -> dict[CommitCategory, float]:
    """Target user-0 churn share per rubric part for the intended style."""
    parts = list(RUBRIC_CATEGORIES)
    if intended == TeamStyle.COLLABORATIVE:
        n_common = int(rng.integers(2, 5))
        common = set(int(i) for i in rng.choice(len(parts), size=n_common, replace=False))
        return {
            part: float(rng.uniform(0.40, 0.60))
            if i in common
            else float(rng.uniform(0.05, 0.15))
            for i, part in enumerate(parts)
        }
    if intended == TeamStyle.COOPERATIVE:
        owners = [0, 0, 1, 1, rng.integers(0, 2)]
        owners = [int(owners[int(i)]) for i in rng.permutation(len(owners))]
        return {
            part: float(rng.uniform(0.85, 0.95)) if owner == 0 else float(rng.uniform(0.05, 0.15))
            for part, owner in zip(parts, owners)
        }
    return {part: float(rng.uniform(0.01, 0.06)) for part in parts}


def _sized_commits(rng, churn_range, count) -> list[tuple[int, int]]:
    add_lo, add_hi, del_lo, del_hi = churn_range
    return [
        (int(rng.integers(add_lo, add_hi + 1)), int(rng.integers(del_lo, del_hi + 1)))
        for _ in range(count)
    ]


def _deal_to_users(specs, user0_share):
    """Greedy churn split tracking user 0's target share, biggest commits first."""
    total = sum(add + dele for add, dele in specs)
    target0 = user0_share * total
    target1 = total - target0
    got0 = got1 = 0
    dealt = []
    for add, dele in sorted(specs, key=lambda s: -(s[0] + s[1])):
        churn = add + dele
        if target0 - got0 > target1 - got1:
            dealt.append((0, (add, dele)))
            got0 += churn
        else:
            dealt.append((1, (add, dele)))
            got1 += churn
    return dealt


def _render_message(rng, pools, veto, config, cat, intended) -> str:
    pool = pools.by_category[cat]
    message = pool[int(rng.integers(0, len(pool)))]
    if config.noise_rate <= 0:
        return message
    extras: list[str] = []
    if cat == CommitCategory.OTHER:
        if rng.random() < config.noise_rate:
            extras.append(_gibberish_token(rng, veto))
    else:
        if rng.random() < config.noise_rate:
            extras.append(pools.fillers[int(rng.integers(0, len(pools.fillers)))])
        if cat in _CROSS_BLEED and rng.random() < config.noise_rate / 2:
            others = [c for c in _CROSS_BLEED if c != cat]
            donor = others[int(rng.integers(0, len(others)))]
            bleed = _CROSS_BLEED[donor]
            extras.append(bleed[int(rng.integers(0, len(bleed)))])
        if rng.random() < config.noise_rate / 2:
            extras.append(_gibberish_token(rng, veto))
        pair_p = config.pair_rate * {
            TeamStyle.COLLABORATIVE: 1.0,
            TeamStyle.COOPERATIVE: 0.4,
            TeamStyle.SOLO_SUBMIT: 0.0,
        }[intended]
        if cat in _CROSS_BLEED and rng.random() < pair_p:
            extras.append("pair programming" if rng.random() < 0.5 else "pp")
    if not extras:
        return message
    return message + " " + " ".join(extras)


def _render_files(rng, cat, add, dele) -> tuple[FileStat, ...]:
    if cat == CommitCategory.MERGE:
        return ()
    if cat == CommitCategory.TEST:
        pool = _PATH_POOLS["test"]
    elif cat == CommitCategory.DOCUMENTATION:
        pool = _PATH_POOLS["doc"]
    else:
        pool = _PATH_POOLS["src"]
    n_files = 1 + int(rng.random() < 0.45) + int(rng.random() < 0.15)
    n_files = min(n_files, len(pool))
    chosen = sorted(int(i) for i in rng.choice(len(pool), size=n_files, replace=False))
    adds = _split_lines(rng, add, n_files)
    dels = _split_lines(rng, dele, n_files)
    files = [
        FileStat(path=pool[i], additions=a, deletions=d)
        for i, a, d in zip(chosen, adds, dels)
    ]
    if rng.random() < 0.04:
        files.append(
            FileStat(
                path=_BINARY_PATHS[int(rng.integers(0, len(_BINARY_PATHS)))],
                additions=0,
                deletions=0,
                binary=True,
            )
        )
    return tuple(files)


def _split_lines(rng, total, parts) -> list[int]:
    if parts == 1:
        return [total]
    cuts = sorted(int(c) for c in rng.integers(0, total + 1, size=parts - 1))
    bounds = [0] + cuts + [total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def truth_labeled_commits(team: TeamRecord, truth: GroundTruth) -> list[LabeledCommit]:
    """Labeled commits using ground-truth categories and detected pair flags."""
    lexicon = textnorm.default_lexicon()
    out = []
    for c in team.commits:
        tokens = textnorm.normalize(c.message, lexicon)
        out.append(
            LabeledCommit(
                commit=c,
                category=truth.commit_categories[c.sha],
                pair_programming=detect_pair_programming(tokens),
            )
        )
    return out


def write_corpus(teams: Sequence[TeamRecord], truth: GroundTruth, outdir) -> None:
    """Emit the ingest-facing dataset files plus ground-truth CSVs."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    all_commits = [c for team in teams for c in team.commits]
    dump_commits_jsonl(all_commits, outdir / "commits.jsonl")
    dump_roster(teams, outdir / "roster.csv")
    with open(outdir / "truth_commits.csv", "w", encoding="utf-8") as fh:
        fh.write("sha,category\n")
        for c in all_commits:
            fh.write(f"{c.sha},{truth.commit_categories[c.sha].value}\n")
    with open(outdir / "truth_teams.csv", "w", encoding="utf-8") as fh:
        fh.write("team_id,style\n")
        for team in teams:
            fh.write(f"{team.team_id},{truth.team_styles[team.team_id].value}\n")
