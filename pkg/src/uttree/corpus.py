"""Definitional document corpus and knowledge-point mention extraction.

Extraction is pure surface matching: the longest known phrase wins at
each position, matches never overlap, and comparison is case-insensitive
on word boundaries.  No stemming, embeddings or topic modelling.  A
corpus may carry *stop phrases*: longer phrases (e.g. field-of-study
names such as "probability theory") that are recognised and consumed by
the scan but yield no mention, keeping a bare alias from firing inside
them.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .core import KnowledgePoint
from .errors import (
    ConfigurationError,
    InvalidDocumentError,
    UnknownDocumentError,
    UnknownKnowledgePointError,
)


def build_lexicon(points: Iterable[KnowledgePoint]) -> dict[str, KnowledgePoint]:
    """Index knowledge points by id, enforcing id uniqueness and alias disjointness."""
    lexicon: dict[str, KnowledgePoint] = {}
    owner: dict[str, str] = {}
    for kp in points:
        if kp.id in lexicon:
            raise ConfigurationError(f"duplicate knowledge point id {kp.id!r}")
        lexicon[kp.id] = kp
        for form in kp.surface_forms():
            folded = form.casefold()
            if folded in owner and owner[folded] != kp.id:
                raise ConfigurationError(
                    f"surface form {form!r} is claimed by both "
                    f"{owner[folded]!r} and {kp.id!r}"
                )
            owner[folded] = kp.id
    return lexicon


def _phrase_pattern(phrase: str) -> str:
    # Whitespace-insensitive, bounded on alphanumerics so "(SSP)" matches "SSP"
    # while "SSP" never matches inside "SSPX".
    tokens = [re.escape(tok) for tok in phrase.split()]
    return r"\s+".join(tokens)


class MentionScanner:
    """Compiled longest-match-first scanner over a lexicon's surface forms."""

    def __init__(self, lexicon: Mapping[str, KnowledgePoint], stop_phrases: Sequence[str] = ()):
        vocab: dict[str, str | None] = {}
        for kp in lexicon.values():
            for form in kp.surface_forms():
                vocab[form.casefold()] = kp.id
        for phrase in stop_phrases:
            folded = phrase.casefold()
            if vocab.get(folded) is not None:
                raise ConfigurationError(
                    f"stop phrase {phrase!r} collides with an alias of {vocab[folded]!r}"
                )
            vocab[folded] = None
        self._vocab = vocab
        if vocab:
            # Longest alternative first => the longest phrase wins at each position.
            ordered = sorted(vocab, key=lambda p: (-len(p), p))
            alternation = "|".join(_phrase_pattern(p) for p in ordered)
            self._regex = re.compile(
                rf"(?<![A-Za-z0-9])(?:{alternation})(?![A-Za-z0-9])",
                re.IGNORECASE,
            )
        else:
            self._regex = None

    def mentions(self, text: str) -> dict[str, int]:
        """Count non-overlapping mentions per KP id, keyed in first-occurrence order."""
        counts: dict[str, int] = {}
        if not text or self._regex is None:
            return counts
        for match in self._regex.finditer(text):
            phrase = " ".join(match.group(0).casefold().split())
            kp_id = self._vocab[phrase]
            if kp_id is not None:
                counts[kp_id] = counts.get(kp_id, 0) + 1
        return counts


def extract_mentions(
    text: str,
    lexicon: Mapping[str, KnowledgePoint] | Iterable[KnowledgePoint],
    stop_phrases: Sequence[str] = (),
) -> dict[str, int]:
    """Count occurrences of any alias or display name of any lexicon KP in ``text``."""
    if not isinstance(lexicon, Mapping):
        lexicon = build_lexicon(lexicon)
    return MentionScanner(lexicon, stop_phrases).mentions(text)


def document_kps(
    text: str,
    lexicon: Mapping[str, KnowledgePoint] | Iterable[KnowledgePoint],
    stop_phrases: Sequence[str] = (),
) -> set[str]:
    """The set of knowledge points mentioned in ``text``."""
    return set(extract_mentions(text, lexicon, stop_phrases))


@dataclass(frozen=True)
class DocumentRecord:
    """A corpus document defining ``subject_kp``, with its extracted mentions.

    ``extracted_kps`` preserves first-occurrence order; its set equals the
    key set of ``mention_counts``.
    """

    doc_id: str
    subject_kp: str
    text: str
    extracted_kps: tuple[str, ...]
    mention_counts: Mapping[str, int]

    def __post_init__(self):
        counts = dict(self.mention_counts)
        object.__setattr__(self, "extracted_kps", tuple(self.extracted_kps))
        object.__setattr__(self, "mention_counts", counts)
        if not counts:
            raise InvalidDocumentError(f"document {self.doc_id!r} mentions no knowledge point")
        if set(self.extracted_kps) != set(counts):
            raise InvalidDocumentError(
                f"document {self.doc_id!r}: extracted KPs disagree with mention counts"
            )
        if self.subject_kp not in counts:
            raise InvalidDocumentError(
                f"document {self.doc_id!r} never mentions its subject {self.subject_kp!r}"
            )

    def shares(self) -> dict[str, float]:
        return shares(self)


def shares(doc: DocumentRecord) -> dict[str, float]:
    """Mention-frequency share of each KP in the document; values sum to 1.

    Stands in for a topic-model share analysis; swap this function's
    backend to change how shares are attributed.
    """
    total = sum(doc.mention_counts.values())
    if total <= 0:
        raise InvalidDocumentError(f"document {doc.doc_id!r} has no countable mentions")
    return {kp: count / total for kp, count in doc.mention_counts.items()}


@dataclass(frozen=True)
class Corpus:
    """An immutable set of definition documents over a shared lexicon."""

    documents: tuple[DocumentRecord, ...]
    lexicon: Mapping[str, KnowledgePoint]
    stop_phrases: tuple[str, ...] = ()
    content_hash: str = ""

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        object.__setattr__(self, "stop_phrases", tuple(self.stop_phrases))
        seen: set[str] = set()
        for doc in self.documents:
            if doc.doc_id in seen:
                raise InvalidDocumentError(f"duplicate document id {doc.doc_id!r}")
            seen.add(doc.doc_id)
            for kp_id in doc.extracted_kps:
                if kp_id not in self.lexicon:
                    raise UnknownKnowledgePointError(kp_id)

    @property
    def bkp_ids(self) -> frozenset[str]:
        return frozenset(kp.id for kp in self.lexicon.values() if kp.is_bkp)

    def knowledge_point(self, kp_id: str) -> KnowledgePoint:
        try:
            return self.lexicon[kp_id]
        except KeyError:
            raise UnknownKnowledgePointError(kp_id) from None

    def document(self, doc_id: str) -> DocumentRecord:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        raise UnknownDocumentError(doc_id)

    def definitions_of(self, kp_id: str) -> list[DocumentRecord]:
        """All documents whose subject is ``kp_id``, in corpus order."""
        return [doc for doc in self.documents if doc.subject_kp == kp_id]


def load_corpus(source: Mapping | str | Path) -> Corpus:
    """Build a corpus from its JSON form (path, JSON text, or parsed mapping).

    Expected shape: ``{"lexicon": [{id, name, aliases, bkp}, ...],
    "documents": [{doc_id, subject_kp, text}, ...], "stop_phrases": [...]}``.
    Mentions are extracted here so downstream code never re-scans text.
    """
    if isinstance(source, Path):
        raw = source.read_text(encoding="utf-8")
        data = json.loads(raw)
    elif isinstance(source, str):
        data = json.loads(source)
    else:
        data = source

    points = [
        KnowledgePoint(
            id=entry["id"],
            display_name=entry.get("name", ""),
            aliases=frozenset(entry.get("aliases", ())),
            is_bkp=bool(entry.get("bkp", False)),
        )
        for entry in data.get("lexicon", ())
    ]
    lexicon = build_lexicon(points)
    stop_phrases = tuple(data.get("stop_phrases", ()))
    scanner = MentionScanner(lexicon, stop_phrases)

    documents = []
    for entry in data.get("documents", ()):
        doc_id = entry["doc_id"]
        subject = entry["subject_kp"]
        if subject not in lexicon:
            raise UnknownKnowledgePointError(subject)
        text = entry["text"]
        counts = scanner.mentions(text)
        documents.append(
            DocumentRecord(
                doc_id=doc_id,
                subject_kp=subject,
                text=text,
                extracted_kps=tuple(counts),
                mention_counts=counts,
            )
        )

    return Corpus(
        documents=tuple(documents),
        lexicon=lexicon,
        stop_phrases=stop_phrases,
        content_hash=corpus_hash(data),
    )


def corpus_hash(data: Mapping) -> str:
    """Stable content hash of a corpus JSON mapping (for tree-cache invalidation)."""
    canonical = json.dumps(
        {
            "lexicon": data.get("lexicon", ()),
            "documents": data.get("documents", ()),
            "stop_phrases": list(data.get("stop_phrases", ())),
        },
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def corpus_to_json_dict(corpus: Corpus) -> dict:
    """Serialize a corpus back to its JSON form (texts only; mentions re-derived)."""
    return {
        "lexicon": [
            {
                "id": kp.id,
                "name": kp.display_name,
                "aliases": sorted(kp.aliases),
                "bkp": kp.is_bkp,
            }
            for kp in corpus.lexicon.values()
        ],
        "documents": [
            {"doc_id": doc.doc_id, "subject_kp": doc.subject_kp, "text": doc.text}
            for doc in corpus.documents
        ],
        "stop_phrases": list(corpus.stop_phrases),
    }
