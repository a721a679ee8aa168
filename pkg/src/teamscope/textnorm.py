"""Commit-message normalization: tokens, stopwords, lemmas, meaningfulness.

Commit messages are short and full of course jargon, so normalization is a
small rule table rather than a full NLP stack: lowercase alphanumeric
tokens, a bundled stopword list, an exception-map-plus-suffix lemmatizer,
and a meaningfulness test against an English-plus-domain lexicon. All word
lists ship as plain-text data files (one lowercase word per line) and can be
swapped out via :func:`load_lexicon`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")

REQUIRED_DOMAIN_WORDS = frozenset(
    {"bbtp", "ts", "javadoc", "pmd", "checkstyle", "spotbugs", "gui", "todo"}
)


@dataclass(frozen=True)
class Lexicon:
    """Word sets backing stopword removal and the meaningfulness test."""

    english_words: frozenset[str]
    domain_words: frozenset[str]
    stopwords: frozenset[str]

    def __post_init__(self):
        missing = REQUIRED_DOMAIN_WORDS - self.domain_words
        if missing:
            raise ValueError(f"domain word list is missing {sorted(missing)}")
        for name in ("english_words", "domain_words", "stopwords"):
            words = getattr(self, name)
            bad = [w for w in words if w != w.lower() or not w]
            if bad:
                raise ValueError(f"{name} must be non-empty lowercase: {bad[:5]}")

    @property
    def meaningful_words(self) -> frozenset[str]:
        return self.english_words | self.domain_words


def tokenize(message: str) -> list[str]:
    """Lowercase and split on any non-alphanumeric run; digits are kept."""
    return [t for t in _TOKEN_SPLIT.split(message.lower()) if t]


def remove_stopwords(tokens: list[str], lexicon: Lexicon) -> list[str]:
    return [t for t in tokens if t not in lexicon.stopwords]


def lemmatize(tokens: list[str], exceptions: dict[str, str] | None = None) -> list[str]:
    """Map each token through the exception table, then one suffix rule.

    Suffix rules, in order: ``ies -> y``; ``sses -> ss``; ``ing`` dropped
    when the stem keeps >= 3 chars; ``ed`` dropped likewise; a trailing
    ``s`` dropped when the stem keeps >= 3 chars and the token does not end
    in ``ss``. At most one rule fires per token.
    """
    if exceptions is None:
        exceptions = default_lemma_exceptions()
    return [_lemma(t, exceptions) for t in tokens]


def _lemma(token: str, exceptions: dict[str, str]) -> str:
    hit = exceptions.get(token)
    if hit is not None:
        return hit
    if token.endswith("ies"):
        return token[:-3] + "y"
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith("ing") and len(token) >= 6:
        return token[:-3]
    if token.endswith("ed") and len(token) >= 5:
        return token[:-2]
    if token.endswith("s") and not token.endswith("ss") and len(token) >= 4:
        return token[:-1]
    return token


def meaningful_ratio(tokens: list[str], lexicon: Lexicon) -> float:
    """Fraction of tokens found in the English-plus-domain word sets."""
    if not tokens:
        return 0.0
    words = lexicon.meaningful_words
    return sum(1 for t in tokens if t in words) / len(tokens)


def normalize(message: str, lexicon: Lexicon, exceptions: dict[str, str] | None = None) -> list[str]:
    """Full preprocessing chain: tokenize, drop stopwords, lemmatize."""
    return lemmatize(remove_stopwords(tokenize(message), lexicon), exceptions)


# ---------------------------------------------------------------------------
# bundled word lists


def _read_words(path: Path) -> frozenset[str]:
    out = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        word = line.strip()
        if word and not word.startswith("#"):
            out.add(word)
    return frozenset(out)


def _data_dir() -> Path:
    return Path(resources.files("teamscope") / "data")


def load_lexicon(
    english_path=None, domain_path=None, stopword_path=None
) -> Lexicon:
    """Build a lexicon from word-list files, bundled ones by default."""
    data = _data_dir()
    return Lexicon(
        english_words=_read_words(Path(english_path) if english_path else data / "english_words.txt"),
        domain_words=_read_words(Path(domain_path) if domain_path else data / "domain_words.txt"),
        stopwords=_read_words(Path(stopword_path) if stopword_path else data / "stopwords.txt"),
    )


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    return load_lexicon()


def load_lemma_exceptions(path=None) -> dict[str, str]:
    """Read the surface-form -> lemma table (two words per line)."""
    target = Path(path) if path else _data_dir() / "lemma_exceptions.txt"
    table: dict[str, str] = {}
    for line_no, line in enumerate(target.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise ValueError(f"{target}:{line_no}: expected 'surface lemma', got {line!r}")
        table[parts[0]] = parts[1]
    return table


@lru_cache(maxsize=1)
def default_lemma_exceptions() -> dict[str, str]:
    return load_lemma_exceptions()
