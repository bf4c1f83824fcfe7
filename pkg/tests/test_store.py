from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone

import pytest

from uttree.core import (
    CompensationConfig,
    KnowledgeState,
    LearningSession,
    RetentionConfig,
    ThresholdConfig,
)
from uttree.errors import ConflictError, CorruptionError, NotInitializedError
from uttree.store import EngineConfig, Store
from uttree.tree import build_tree

T0 = datetime(2025, 3, 1, 12, 0, tzinfo=timezone.utc)


def make_session(i, shares=None):
    return LearningSession(
        session_id=f"s{i:04d}",
        cessation_time=T0 + timedelta(minutes=i),
        duration_min=5.0 + i,
        shares=shares or {"X": 0.5},
    )


@pytest.fixture
def store(tmp_path):
    return Store.initialize(tmp_path / "store")


class TestLifecycle:
    def test_initialize_creates_files(self, store):
        assert store.is_initialized()
        assert store.sessions_path.exists()

    def test_uninitialized_store_rejects_use(self, tmp_path):
        bare = Store(tmp_path / "nothing")
        with pytest.raises(NotInitializedError):
            bare.require_initialized()
        with pytest.raises(NotInitializedError):
            bare.load_config()

    def test_config_round_trip(self, tmp_path):
        config = EngineConfig(
            retention=RetentionConfig(stability_hours=24.0),
            threshold=ThresholdConfig(threshold=50.0),
            compensation=CompensationConfig(
                k_coefficient=5.0, sibling_groups=(frozenset({"RaV", "RV"}),)
            ),
        )
        store = Store.initialize(tmp_path / "store", config)
        assert Store(store.root).load_config() == config


class TestSessions:
    def test_append_then_read_back(self, store):
        session = make_session(1)
        store.append_session(session)
        assert store.load_sessions()[-1] == session

    def test_duplicate_id_conflicts(self, store):
        store.append_session(make_session(1))
        with pytest.raises(ConflictError):
            store.append_session(make_session(1))

    def test_thousand_sessions_keep_order(self, store):
        sessions = [make_session(i) for i in range(1000)]
        for session in sessions:
            store.append_session(session)
        loaded = store.load_sessions()
        assert len(loaded) == 1000
        assert loaded == sessions

    def test_corruption_reports_line_number(self, store):
        store.append_session(make_session(1))
        with store.sessions_path.open("a", encoding="utf-8") as handle:
            handle.write("{not json\n")
        with pytest.raises(CorruptionError) as err:
            store.load_sessions()
        assert err.value.line_number == 2


class TestSnapshot:
    def state(self):
        return KnowledgeState(
            as_of=T0,
            familiarity={"A": 12.345678901234, "B": 0.0},
            threshold_config=ThresholdConfig(100.0),
        )

    def test_round_trip_identity(self, store):
        state = self.state()
        store.save_snapshot(state)
        loaded = store.load_snapshot()
        assert loaded.as_of == state.as_of
        for kp, value in state.familiarity.items():
            assert loaded.familiarity[kp] == pytest.approx(value, abs=1e-12)
        assert loaded.threshold_config == state.threshold_config

    def test_load_without_snapshot_fails(self, store):
        with pytest.raises(NotInitializedError):
            store.load_snapshot()

    def test_load_on_empty_directory_fails(self, tmp_path):
        with pytest.raises(NotInitializedError):
            Store(tmp_path / "empty").load_snapshot()

    def test_leftover_temp_file_does_not_break_load(self, store):
        state = self.state()
        store.save_snapshot(state)
        # Simulate an interrupted save: a temp file exists but was never renamed.
        (store.root / ".state.json.interrupted").write_text("{\"half\":", encoding="utf-8")
        loaded = store.load_snapshot()
        assert loaded.familiarity["A"] == pytest.approx(state.familiarity["A"], abs=1e-12)


class TestCorpusAndTrees:
    def test_corpus_round_trip(self, store, table1_json):
        saved = store.save_corpus(table1_json)
        loaded = store.load_corpus()
        assert loaded.content_hash == saved.content_hash
        assert [d.doc_id for d in loaded.documents] == [d.doc_id for d in saved.documents]
        assert loaded.lexicon.keys() == saved.lexicon.keys()
        for doc_a, doc_b in zip(loaded.documents, saved.documents):
            assert doc_a.mention_counts == doc_b.mention_counts

    def test_tree_cache_round_trip(self, store, table1_json):
        corpus = store.save_corpus(table1_json)
        trees = {"SSP": build_tree("SSP", corpus), "PM": build_tree("PM", corpus)}
        store.save_trees(corpus.content_hash, trees)
        loaded = store.load_trees(corpus.content_hash)
        assert loaded is not None
        assert loaded["SSP"].node_set == trees["SSP"].node_set
        assert loaded["PM"].edges == trees["PM"].edges

    def test_tree_cache_invalidated_by_hash(self, store, table1_json):
        corpus = store.save_corpus(table1_json)
        store.save_trees(corpus.content_hash, {"PM": build_tree("PM", corpus)})
        assert store.load_trees("different-hash") is None

    def test_reingesting_changed_corpus_drops_cache(self, store, table1_json):
        corpus = store.save_corpus(table1_json)
        store.save_trees(corpus.content_hash, {"PM": build_tree("PM", corpus)})
        edited = dict(table1_json)
        edited["documents"] = table1_json["documents"][:-1]
        store.save_corpus(edited)
        assert not store.trees_path.exists()

    def test_corrupt_corpus_file_reported(self, store, table1_json):
        store.save_corpus(table1_json)
        store.corpus_path.write_text("{broken", encoding="utf-8")
        with pytest.raises(CorruptionError):
            store.load_corpus()

    def test_missing_corpus_is_not_initialized(self, store):
        with pytest.raises(NotInitializedError):
            store.load_corpus()

    def test_state_file_is_valid_json_after_writes(self, store):
        store.save_snapshot(self_state())
        data = json.loads(store.state_path.read_text(encoding="utf-8"))
        assert "config" in data and "snapshot" in data


def self_state():
    return KnowledgeState(as_of=T0, familiarity={"A": 1.0}, threshold_config=ThresholdConfig())
