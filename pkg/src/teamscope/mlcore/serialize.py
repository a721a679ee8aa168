"""Versioned JSON envelopes for fitted models.

Every model file is ``{"format": "teamscope-model", "version": 1, "kind":
<kind>, "model": <payload>}`` dumped with sorted keys, so identical models
serialize to identical bytes and reloading reproduces bit-identical
predictions (JSON round-trips Python floats exactly).
"""

from __future__ import annotations

import json

from ..errors import SchemaError

FORMAT_NAME = "teamscope-model"
FORMAT_VERSION = 1


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=1, ensure_ascii=False)


def dumps_model(kind: str, payload: dict) -> str:
    return canonical_json(
        {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "kind": kind,
            "model": payload,
        }
    )


def save_model(path, kind: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(kind, payload))
        fh.write("\n")


def load_model(path, expected_kind: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or raw.get("format") != FORMAT_NAME:
        raise SchemaError(f"{path}: not a {FORMAT_NAME} file")
    if raw.get("version") != FORMAT_VERSION:
        raise SchemaError(f"{path}: unsupported model version {raw.get('version')!r}")
    if raw.get("kind") != expected_kind:
        raise SchemaError(
            f"{path}: expected a {expected_kind!r} model, found {raw.get('kind')!r}"
        )
    return raw["model"]
