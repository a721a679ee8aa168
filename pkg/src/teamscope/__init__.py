"""teamscope: mine student team git histories for work-style signals.

The pipeline runs in two stages: commit messages are classified into
project-part categories by a keyword-plus-TF-IDF cascade, and per-team
contribution features computed from those labels feed classifiers that
predict each team's work style (Collaborative / Cooperative / Solo-submit).
"""

__version__ = "0.1.0"
