"""Greedy next-document recommendation and the deterministic replay simulator.

A document is easiest to learn when it carries the fewest knowledge
points the learner has not yet understood, where "understood" is
transitive: a knowledge point counts only when its whole prerequisite
set is understood.  The simulator replays a learning sequence over a
corpus, emitting the per-step count matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .corpus import Corpus, DocumentRecord, shares
from .errors import InvalidArgumentError, InvalidDocumentError, SequenceInvalidError
from .tree import UnderstandingTree, build_tree

POLICY_MIN_COUNT = "min-count"
POLICY_PUD = "pud"
TIE_BREAK_ASCENDING = "ascending-id"
TIE_BREAK_GIVEN = "given-sequence"

INITIAL_ROW_LABEL = "initial"


@dataclass(frozen=True)
class DocumentUnderstanding:
    """Continuous, share-weighted understanding of one document."""

    doc_id: str
    pud: float
    per_kp: Mapping[str, tuple[float, float]]  # kp -> (share, pu)
    not_understood: frozenset[str]

    @property
    def count(self) -> int:
        return len(self.not_understood)

    def to_json_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "pud": self.pud,
            "per_kp": {
                kp: {"share": share, "pu": pu}
                for kp, (share, pu) in sorted(self.per_kp.items())
            },
            "not_understood": sorted(self.not_understood),
            "count": self.count,
        }


@dataclass
class SimulationState:
    """Boolean learner state threaded through a replay."""

    understood: set[str]
    step: int = 0
    history: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)


@dataclass(frozen=True)
class SimulationResult:
    """Per-step count matrix plus the realized learning order."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, tuple[int, ...]], ...]  # (label, counts per column)
    learning_order: tuple[str, ...]
    ineffective: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": [{"label": label, "counts": list(counts)} for label, counts in self.rows],
            "learning_order": list(self.learning_order),
            "ineffective": list(self.ineffective),
        }

    def to_table(self) -> str:
        """Aligned text table: one row per step, one column per document."""
        label_width = max(len("sequence"), *(len(label) for label, _ in self.rows))
        widths = [max(len(col), 2) for col in self.columns]
        header = "sequence".ljust(label_width) + "  " + "  ".join(
            col.rjust(w) for col, w in zip(self.columns, widths)
        )
        lines = [header]
        for label, counts in self.rows:
            lines.append(
                label.ljust(label_width)
                + "  "
                + "  ".join(str(c).rjust(w) for c, w in zip(counts, widths))
            )
        return "\n".join(lines)


def _tree_index(corpus: Corpus, trees: Mapping[str, UnderstandingTree] | None) -> dict:
    index = dict(trees) if trees else {}

    def get(kp_id: str) -> UnderstandingTree:
        if kp_id not in index:
            index[kp_id] = build_tree(kp_id, corpus)
        return index[kp_id]

    return {"get": get}


def closure(
    doc: DocumentRecord,
    corpus: Corpus,
    trees: Mapping[str, UnderstandingTree] | None = None,
) -> frozenset[str]:
    """Transitive set of non-BKP knowledge points required by ``doc``.

    Union of each extracted non-BKP knowledge point with the non-BKP
    nodes of its understanding tree.
    """
    bkps = corpus.bkp_ids
    index = _tree_index(corpus, trees)
    required: set[str] = set()
    for kp_id in doc.extracted_kps:
        if kp_id in bkps:
            continue
        tree = index["get"](kp_id)
        required.update(node for node in tree.node_set if node not in bkps)
    return frozenset(required)


def initial_state(corpus: Corpus) -> SimulationState:
    """Fresh learner state: the BKPs are assumed understood up front."""
    return SimulationState(understood=set(corpus.bkp_ids))


def not_understood_count(
    doc: DocumentRecord,
    sim: SimulationState,
    corpus: Corpus,
    trees: Mapping[str, UnderstandingTree] | None = None,
) -> int:
    """How many knowledge points in the document's closure are still missing."""
    return len(closure(doc, corpus, trees) - sim.understood)


def recommend_min_count(
    corpus: Corpus,
    sim: SimulationState,
    trees: Mapping[str, UnderstandingTree] | None = None,
) -> list[str]:
    """Document ids with the fewest missing knowledge points, ascending id.

    Documents whose knowledge points are all understood are excluded;
    the result is empty once everything is understood.
    """
    if not corpus.documents:
        raise InvalidArgumentError("corpus has no documents to recommend")
    counts = {
        doc.doc_id: not_understood_count(doc, sim, corpus, trees)
        for doc in corpus.documents
    }
    pending = {doc_id: n for doc_id, n in counts.items() if n > 0}
    if not pending:
        return []
    best = min(pending.values())
    return sorted(doc_id for doc_id, n in pending.items() if n == best)


def document_understanding(
    doc: DocumentRecord,
    kp_assessments: Mapping[str, float],
    doc_shares: Mapping[str, float] | None = None,
) -> DocumentUnderstanding:
    """Share-weighted percentage of understanding of a document.

    ``kp_assessments`` maps each knowledge point to its percentage of
    understanding; missing entries count as 0.
    """
    if doc_shares is None:
        doc_shares = shares(doc)
    weighted = {kp: share for kp, share in doc_shares.items() if share > 0}
    total_share = sum(weighted.values())
    if not weighted or total_share <= 0:
        raise InvalidDocumentError(f"document {doc.doc_id!r} has no positive shares")
    per_kp = {kp: (share, float(kp_assessments.get(kp, 0.0))) for kp, share in weighted.items()}
    value = sum(share * pu for share, pu in per_kp.values()) / total_share
    return DocumentUnderstanding(
        doc_id=doc.doc_id,
        pud=min(max(value, 0.0), 1.0),
        per_kp=per_kp,
        not_understood=frozenset(kp for kp, (_, pu) in per_kp.items() if pu < 1.0),
    )


def pud(
    doc: DocumentRecord,
    kp_assessments: Mapping[str, float],
    doc_shares: Mapping[str, float] | None = None,
) -> float:
    return document_understanding(doc, kp_assessments, doc_shares).pud


def recommend_by_pud(
    corpus: Corpus,
    kp_assessments: Mapping[str, float],
) -> str | None:
    """The almost-understood document: highest understanding strictly below 1.

    Returns None when every document is fully understood (decay can later
    pull one below 1 again).  Ties break toward the ascending document id.
    """
    best_id: str | None = None
    best_value = -1.0
    for doc in sorted(corpus.documents, key=lambda d: d.doc_id):
        value = document_understanding(doc, kp_assessments).pud
        if value < 1.0 and value > best_value:
            best_id, best_value = doc.doc_id, value
    return best_id


def _boolean_assessments(corpus: Corpus, sim: SimulationState) -> dict[str, float]:
    # In replay state a KP is fully understood or not at all; membership in
    # `understood` already implies the whole prerequisite set is covered.
    return {
        kp_id: 1.0 if (kp_id in sim.understood or kp_id in corpus.bkp_ids) else 0.0
        for kp_id in corpus.lexicon
    }


def simulate(
    corpus: Corpus,
    policy: str = POLICY_MIN_COUNT,
    tie_break: str = TIE_BREAK_ASCENDING,
    sequence: Sequence[str] | None = None,
    trees: Mapping[str, UnderstandingTree] | None = None,
) -> SimulationResult:
    """Replay a learning run over the corpus and collect the count matrix.

    With ``given-sequence`` every listed document must sit in the
    min-count recommendation set at its turn, otherwise the sequence is
    rejected.  Learning a document yields understanding of its subject
    only when at most one knowledge point was missing; a step that
    changes nothing ends a greedy run.
    """
    if policy not in (POLICY_MIN_COUNT, POLICY_PUD):
        raise InvalidArgumentError(f"unknown policy {policy!r}")
    if sequence is not None:
        tie_break = TIE_BREAK_GIVEN
    if tie_break == TIE_BREAK_GIVEN and sequence is None:
        raise InvalidArgumentError("given-sequence tie-break requires a sequence")
    if tie_break not in (TIE_BREAK_ASCENDING, TIE_BREAK_GIVEN):
        raise InvalidArgumentError(f"unknown tie-break {tie_break!r}")
    if not corpus.documents:
        raise InvalidArgumentError("corpus has no documents to simulate")

    columns = tuple(sorted(doc.doc_id for doc in corpus.documents))
    docs = {doc.doc_id: doc for doc in corpus.documents}
    doc_closures = {doc_id: closure(docs[doc_id], corpus, trees) for doc_id in columns}

    sim = initial_state(corpus)

    def counts_row() -> tuple[int, ...]:
        return tuple(len(doc_closures[doc_id] - sim.understood) for doc_id in columns)

    rows: list[tuple[str, tuple[int, ...]]] = [(INITIAL_ROW_LABEL, counts_row())]
    learning_order: list[str] = []
    ineffective: list[str] = []

    def next_document() -> str | None:
        if sequence is not None:
            if sim.step >= len(sequence):
                return None
            candidate = sequence[sim.step]
            optimal = recommend_min_count(corpus, sim, trees)
            if candidate not in optimal:
                raise SequenceInvalidError(sim.step + 1, candidate, optimal)
            return candidate
        if policy == POLICY_MIN_COUNT:
            optimal = recommend_min_count(corpus, sim, trees)
            return optimal[0] if optimal else None
        assessments = _boolean_assessments(corpus, sim)
        return recommend_by_pud(corpus, assessments)

    while True:
        choice = next_document()
        if choice is None:
            break
        if choice not in docs:
            raise SequenceInvalidError(sim.step + 1, choice, sorted(docs))
        pre_count = len(doc_closures[choice] - sim.understood)
        effective = pre_count <= 1
        if effective:
            sim.understood.add(docs[choice].subject_kp)
        else:
            ineffective.append(choice)
        sim.step += 1
        learning_order.append(choice)
        row = (choice, counts_row())
        rows.append(row)
        sim.history.append(row)
        if not effective and sequence is None:
            break  # greedy state is unchanged; a retry would loop forever

    return SimulationResult(
        columns=columns,
        rows=tuple(rows),
        learning_order=tuple(learning_order),
        ineffective=tuple(ineffective),
    )
