"""Plain-file persistence: lexicon, corpus, session log, tree cache, state.

Layout under one directory:

    lexicon.json  — knowledge point array
    corpus.json   — documents and stop phrases
    sessions.jsonl — append-only learning session log, one JSON object per line
    trees.json    — cached understanding trees, keyed by corpus content hash
    state.json    — engine configuration plus the last saved state snapshot

Writes are atomic (write-temp-then-rename); the session log is the only
append-path.  One writer at a time; readers always see a complete file.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Iterator, Mapping

from .core import (
    CompensationConfig,
    KnowledgeState,
    LearningSession,
    RetentionConfig,
    ThresholdConfig,
    format_timestamp,
    parse_timestamp,
)
from .corpus import Corpus, corpus_hash, load_corpus
from .errors import ConflictError, CorruptionError, NotInitializedError
from .tree import UnderstandingTree

LEXICON_FILE = "lexicon.json"
CORPUS_FILE = "corpus.json"
SESSIONS_FILE = "sessions.jsonl"
TREES_FILE = "trees.json"
STATE_FILE = "state.json"


@dataclass(frozen=True)
class EngineConfig:
    """Tunables persisted in state.json."""

    retention: RetentionConfig = field(default_factory=RetentionConfig)
    threshold: ThresholdConfig = field(default_factory=ThresholdConfig)
    compensation: CompensationConfig = field(default_factory=CompensationConfig)

    def to_json_dict(self) -> dict:
        return {
            "stability_hours": self.retention.stability_hours,
            "retention_model": self.retention.model,
            "threshold": self.threshold.threshold,
            "compensation": {
                "k": self.compensation.k_coefficient,
                "sibling_groups": [sorted(g) for g in self.compensation.sibling_groups],
            },
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "EngineConfig":
        comp = data.get("compensation", {})
        return cls(
            retention=RetentionConfig(
                stability_hours=data.get("stability_hours", RetentionConfig().stability_hours),
                model=data.get("retention_model", "exponential"),
            ),
            threshold=ThresholdConfig(
                threshold=data.get("threshold", ThresholdConfig().threshold)
            ),
            compensation=CompensationConfig(
                k_coefficient=comp.get("k", CompensationConfig().k_coefficient),
                sibling_groups=tuple(
                    frozenset(group) for group in comp.get("sibling_groups", ())
                ),
            ),
        )


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=str(path.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    finally:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)


class Store:
    """Single-directory file store; one writer, any number of readers."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    # -- paths ------------------------------------------------------------
    @property
    def lexicon_path(self) -> Path:
        return self.root / LEXICON_FILE

    @property
    def corpus_path(self) -> Path:
        return self.root / CORPUS_FILE

    @property
    def sessions_path(self) -> Path:
        return self.root / SESSIONS_FILE

    @property
    def trees_path(self) -> Path:
        return self.root / TREES_FILE

    @property
    def state_path(self) -> Path:
        return self.root / STATE_FILE

    # -- lifecycle ---------------------------------------------------------
    @classmethod
    def initialize(cls, root: str | Path, config: EngineConfig | None = None) -> "Store":
        store = cls(root)
        store.root.mkdir(parents=True, exist_ok=True)
        store.save_config(config or EngineConfig())
        store.sessions_path.touch()
        return store

    def is_initialized(self) -> bool:
        return self.state_path.exists()

    def require_initialized(self) -> None:
        if not self.is_initialized():
            raise NotInitializedError(
                f"store at {self.root} is not initialized (run init first)"
            )

    # -- config and snapshot -------------------------------------------------
    def _read_state_file(self) -> dict:
        if not self.state_path.exists():
            raise NotInitializedError(f"no {STATE_FILE} in {self.root}")
        try:
            return json.loads(self.state_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CorruptionError(self.state_path, exc.lineno, exc.msg) from exc

    def load_config(self) -> EngineConfig:
        return EngineConfig.from_json_dict(self._read_state_file().get("config", {}))

    def save_config(self, config: EngineConfig) -> None:
        data = {"config": config.to_json_dict(), "snapshot": None}
        if self.state_path.exists():
            data["snapshot"] = self._read_state_file().get("snapshot")
        _atomic_write(self.state_path, json.dumps(data, sort_keys=True, indent=2))

    def save_snapshot(self, state: KnowledgeState) -> None:
        data = self._read_state_file()
        data["snapshot"] = {
            "as_of": format_timestamp(state.as_of),
            "familiarity": dict(sorted(state.familiarity.items())),
            "threshold": state.threshold_config.threshold,
        }
        _atomic_write(self.state_path, json.dumps(data, sort_keys=True, indent=2))

    def load_snapshot(self) -> KnowledgeState:
        data = self._read_state_file()
        snapshot = data.get("snapshot")
        if snapshot is None:
            raise NotInitializedError(f"no snapshot saved in {self.state_path}")
        return KnowledgeState(
            as_of=parse_timestamp(snapshot["as_of"]),
            familiarity=snapshot["familiarity"],
            threshold_config=ThresholdConfig(threshold=snapshot["threshold"]),
        )

    # -- corpus -----------------------------------------------------------
    def save_corpus(self, corpus_data: Mapping) -> Corpus:
        """Validate and persist a corpus JSON mapping; stale tree caches are dropped."""
        corpus = load_corpus(corpus_data)
        _atomic_write(
            self.lexicon_path,
            json.dumps(list(corpus_data.get("lexicon", ())), indent=2, ensure_ascii=False),
        )
        _atomic_write(
            self.corpus_path,
            json.dumps(
                {
                    "documents": list(corpus_data.get("documents", ())),
                    "stop_phrases": list(corpus_data.get("stop_phrases", ())),
                },
                indent=2,
                ensure_ascii=False,
            ),
        )
        if self.trees_path.exists():
            cached = self._read_json(self.trees_path)
            if cached.get("corpus_hash") != corpus.content_hash:
                self.trees_path.unlink()
        return corpus

    def _read_json(self, path: Path) -> dict:
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CorruptionError(path, exc.lineno, exc.msg) from exc

    def load_corpus(self) -> Corpus:
        if not self.lexicon_path.exists() or not self.corpus_path.exists():
            raise NotInitializedError(f"no corpus ingested in {self.root}")
        lexicon = self._read_json(self.lexicon_path)
        body = self._read_json(self.corpus_path)
        return load_corpus(
            {
                "lexicon": lexicon,
                "documents": body.get("documents", ()),
                "stop_phrases": body.get("stop_phrases", ()),
            }
        )

    def corpus_content_hash(self) -> str:
        lexicon = self._read_json(self.lexicon_path)
        body = self._read_json(self.corpus_path)
        return corpus_hash(
            {
                "lexicon": lexicon,
                "documents": body.get("documents", ()),
                "stop_phrases": body.get("stop_phrases", ()),
            }
        )

    # -- sessions -----------------------------------------------------------
    def iter_sessions(self) -> Iterator[LearningSession]:
        if not self.sessions_path.exists():
            return
        with self.sessions_path.open("r", encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                text = line.strip()
                if not text:
                    continue
                try:
                    payload = json.loads(text)
                except json.JSONDecodeError as exc:
                    raise CorruptionError(self.sessions_path, line_number, exc.msg) from exc
                yield LearningSession.from_json_dict(payload)

    def load_sessions(self) -> list[LearningSession]:
        return list(self.iter_sessions())

    def append_session(self, session: LearningSession) -> None:
        self.require_initialized()
        existing = {s.session_id for s in self.iter_sessions()}
        if session.session_id in existing:
            raise ConflictError(f"session {session.session_id!r} already recorded")
        with self.sessions_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(session.to_json_dict(), sort_keys=True) + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    # -- tree cache ---------------------------------------------------------
    def load_trees(self, expected_hash: str) -> dict[str, UnderstandingTree] | None:
        if not self.trees_path.exists():
            return None
        data = self._read_json(self.trees_path)
        if data.get("corpus_hash") != expected_hash:
            return None
        return {
            kp: UnderstandingTree.from_json_dict(entry)
            for kp, entry in data.get("trees", {}).items()
        }

    def save_trees(self, corpus_hash_value: str, trees: Mapping[str, UnderstandingTree]) -> None:
        data = {
            "corpus_hash": corpus_hash_value,
            "trees": {kp: tree.to_json_dict() for kp, tree in sorted(trees.items())},
        }
        _atomic_write(self.trees_path, json.dumps(data, sort_keys=True, indent=2))


def default_evaluation_time(at: str | datetime | None) -> datetime:
    """Resolve an optional evaluation instant, defaulting to the current UTC time."""
    if at is None:
        return parse_timestamp(datetime.now().astimezone())
    return parse_timestamp(at)
