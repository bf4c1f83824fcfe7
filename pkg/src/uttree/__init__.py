"""Knowledge-state engine: familiarity decay, understanding trees, and
meaningful-learning document recommendation."""

from .core import (
    CompensationConfig,
    KnowledgePoint,
    KnowledgeState,
    LearningSession,
    RetentionConfig,
    ThresholdConfig,
    compensate,
    familiarity,
    percentage_of_familiarity,
    retention,
)
from .corpus import Corpus, DocumentRecord, document_kps, extract_mentions, load_corpus, shares
from .engine import Engine
from .recommend import (
    DocumentUnderstanding,
    SimulationResult,
    SimulationState,
    closure,
    document_understanding,
    initial_state,
    not_understood_count,
    pud,
    recommend_by_pud,
    recommend_min_count,
    simulate,
)
from .store import EngineConfig, Store
from .tree import (
    ReverseTree,
    UnderstandingAssessment,
    UnderstandingTree,
    assess,
    build_tree,
    complexity,
    reverse_dependents,
    select_children,
    standardize,
)

__version__ = "0.1.0"

__all__ = [
    "CompensationConfig",
    "Corpus",
    "DocumentRecord",
    "DocumentUnderstanding",
    "Engine",
    "EngineConfig",
    "KnowledgePoint",
    "KnowledgeState",
    "LearningSession",
    "RetentionConfig",
    "ReverseTree",
    "SimulationResult",
    "SimulationState",
    "Store",
    "ThresholdConfig",
    "UnderstandingAssessment",
    "UnderstandingTree",
    "assess",
    "build_tree",
    "closure",
    "compensate",
    "complexity",
    "document_kps",
    "document_understanding",
    "extract_mentions",
    "familiarity",
    "initial_state",
    "load_corpus",
    "not_understood_count",
    "percentage_of_familiarity",
    "pud",
    "recommend_by_pud",
    "recommend_min_count",
    "retention",
    "reverse_dependents",
    "select_children",
    "shares",
    "simulate",
    "standardize",
]
