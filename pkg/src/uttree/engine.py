"""Facade wiring the store to the familiarity, tree and recommendation layers.

All computation is pure; the engine only adds store-backed caching of
understanding trees (keyed by corpus content hash) and convenience
assembly of knowledge states from the session log.
"""

from __future__ import annotations

from datetime import datetime

from .core import (
    KnowledgeState,
    LearningSession,
    RetentionConfig,
    ThresholdConfig,
    compensate,
    familiarity,
)
from .corpus import Corpus
from .recommend import (
    POLICY_MIN_COUNT,
    POLICY_PUD,
    SimulationResult,
    SimulationState,
    document_understanding,
    initial_state,
    recommend_by_pud,
    recommend_min_count,
    simulate,
)
from .store import EngineConfig, Store, default_evaluation_time
from .tree import (
    BKP_POLICY_ASSUMED,
    ReverseTree,
    UnderstandingAssessment,
    UnderstandingTree,
    assess,
    build_tree,
    reverse_dependents,
)
from .errors import InvalidArgumentError


class Engine:
    """One learner's knowledge-state engine over a store directory."""

    def __init__(self, store: Store):
        store.require_initialized()
        self.store = store
        self.config: EngineConfig = store.load_config()
        self._corpus: Corpus | None = None
        self._trees: dict[str, UnderstandingTree] | None = None

    # -- corpus and trees ---------------------------------------------------
    @property
    def corpus(self) -> Corpus:
        if self._corpus is None:
            self._corpus = self.store.load_corpus()
        return self._corpus

    def _tree_cache(self) -> dict[str, UnderstandingTree]:
        if self._trees is None:
            cached = self.store.load_trees(self.corpus.content_hash)
            self._trees = cached if cached is not None else {}
        return self._trees

    def tree(self, kp_id: str) -> UnderstandingTree:
        cache = self._tree_cache()
        if kp_id not in cache:
            cache[kp_id] = build_tree(kp_id, self.corpus)
            self.store.save_trees(self.corpus.content_hash, cache)
        return cache[kp_id]

    def reverse(self, kp_id: str) -> ReverseTree:
        return reverse_dependents(kp_id, self.corpus)

    # -- familiarity --------------------------------------------------------
    def add_session(self, session: LearningSession) -> None:
        self.store.append_session(session)

    def familiarity_of(
        self,
        kp_id: str,
        at: datetime | str | None = None,
        retention: RetentionConfig | None = None,
    ) -> float:
        at = default_evaluation_time(at)
        retention = retention or self.config.retention
        return familiarity(self.store.load_sessions(), kp_id, at, retention)

    def knowledge_state(
        self,
        at: datetime | str | None = None,
        retention: RetentionConfig | None = None,
        threshold: ThresholdConfig | None = None,
    ) -> KnowledgeState:
        """Familiarity of every lexicon KP at the instant, from the session log."""
        at = default_evaluation_time(at)
        retention = retention or self.config.retention
        sessions = self.store.load_sessions()
        values = {
            kp_id: familiarity(sessions, kp_id, at, retention)
            for kp_id in self.corpus.lexicon
        }
        return KnowledgeState(
            as_of=at,
            familiarity=values,
            threshold_config=threshold or self.config.threshold,
        )

    def compensated_state(self, at: datetime | str | None = None) -> KnowledgeState:
        return compensate(self.knowledge_state(at), self.config.compensation)

    # -- understanding ------------------------------------------------------
    def assessment(
        self,
        kp_id: str,
        at: datetime | str | None = None,
        bkp_policy: str = BKP_POLICY_ASSUMED,
        state: KnowledgeState | None = None,
    ) -> UnderstandingAssessment:
        if state is None:
            state = self.knowledge_state(at)
        return assess(kp_id, self.tree(kp_id), state, bkp_policy)

    def kp_assessments(
        self,
        at: datetime | str | None = None,
        bkp_policy: str = BKP_POLICY_ASSUMED,
    ) -> dict[str, float]:
        """Percentage of understanding for every lexicon knowledge point."""
        state = self.knowledge_state(at)
        return {
            kp_id: self.assessment(kp_id, bkp_policy=bkp_policy, state=state).pu
            for kp_id in self.corpus.lexicon
        }

    # -- recommendation -----------------------------------------------------
    def understood_state(self, at: datetime | str | None = None) -> SimulationState:
        """Boolean learner state derived from the live assessments.

        A knowledge point is understood when its percentage of
        understanding reaches 1; BKPs are assumed understood throughout.
        """
        assessments = self.kp_assessments(at)
        understood = {kp_id for kp_id, pu in assessments.items() if pu == 1.0}
        state = initial_state(self.corpus)
        state.understood |= understood
        return state

    def recommend(
        self,
        policy: str = POLICY_MIN_COUNT,
        at: datetime | str | None = None,
    ) -> dict:
        if policy == POLICY_MIN_COUNT:
            documents = recommend_min_count(
                self.corpus, self.understood_state(at), self._tree_cache_full()
            )
            return {"policy": policy, "documents": documents}
        if policy == POLICY_PUD:
            assessments = self.kp_assessments(at)
            choice = recommend_by_pud(self.corpus, assessments)
            puds = {
                doc.doc_id: document_understanding(doc, assessments).pud
                for doc in self.corpus.documents
            }
            return {"policy": policy, "document": choice, "puds": puds}
        raise InvalidArgumentError(f"unknown policy {policy!r}")

    def document_pud(self, doc_id: str, at: datetime | str | None = None) -> dict:
        doc = self.corpus.document(doc_id)
        assessments = self.kp_assessments(at)
        return document_understanding(doc, assessments).to_json_dict()

    def run_simulation(
        self,
        policy: str = POLICY_MIN_COUNT,
        tie_break: str = "ascending-id",
        sequence: list[str] | None = None,
    ) -> SimulationResult:
        return simulate(
            self.corpus,
            policy=policy,
            tie_break=tie_break,
            sequence=sequence,
            trees=self._tree_cache_full(),
        )

    def _tree_cache_full(self) -> dict[str, UnderstandingTree]:
        # Recommendation and simulation touch every non-BKP tree; build the
        # full index once so the store cache is written a single time.
        cache = self._tree_cache()
        missing = [
            kp_id
            for kp_id in self.corpus.lexicon
            if kp_id not in cache and kp_id not in self.corpus.bkp_ids
        ]
        if missing:
            for kp_id in missing:
                cache[kp_id] = build_tree(kp_id, self.corpus)
            self.store.save_trees(self.corpus.content_hash, cache)
        return cache
