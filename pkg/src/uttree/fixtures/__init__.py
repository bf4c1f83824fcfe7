"""Bundled corpora: the probability-theory corpus and the CLT definition set."""

from __future__ import annotations

import json
from importlib import resources

from ..corpus import Corpus, load_corpus

FIXTURE_NAMES = ("table1", "table2_clt")


def fixture_json(name: str) -> dict:
    """Raw JSON mapping of a bundled corpus fixture."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    text = resources.files(__package__).joinpath(f"{name}.json").read_text("utf-8")
    return json.loads(text)


def fixture_corpus(name: str) -> Corpus:
    """A bundled corpus, mentions already extracted."""
    return load_corpus(fixture_json(name))
