"""Exception hierarchy shared by the engine, store, CLI and HTTP service."""

from __future__ import annotations


class UttreeError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class InvalidArgumentError(UttreeError):
    """An argument violates an operation's precondition (e.g. negative elapsed time)."""

    code = "invalid_argument"


class ConfigurationError(UttreeError):
    """A configuration value is inconsistent (e.g. sibling group naming an unknown KP)."""

    code = "configuration_error"


class MissingDefinitionError(UttreeError):
    """A non-basic knowledge point has no defining document in the corpus."""

    code = "missing_definition"

    def __init__(self, kp_id: str):
        super().__init__(f"no definition document for knowledge point {kp_id!r}")
        self.kp_id = kp_id


class UnknownKnowledgePointError(UttreeError):
    """A knowledge point id is not present in the lexicon."""

    code = "unknown_kp"

    def __init__(self, kp_id: str):
        super().__init__(f"unknown knowledge point {kp_id!r}")
        self.kp_id = kp_id


class UnknownDocumentError(UttreeError):
    """A document id is not present in the corpus."""

    code = "unknown_document"

    def __init__(self, doc_id: str):
        super().__init__(f"unknown document {doc_id!r}")
        self.doc_id = doc_id


class InvalidDocumentError(UttreeError):
    """A document record is malformed (e.g. no mentions, all-zero shares)."""

    code = "invalid_document"


class SequenceInvalidError(UttreeError):
    """A replay sequence names a document outside the optimal set at some step."""

    code = "sequence_invalid"

    def __init__(self, step: int, doc_id: str, optimal: list[str]):
        super().__init__(
            f"step {step}: {doc_id!r} is not among the optimal documents {optimal}"
        )
        self.step = step
        self.doc_id = doc_id
        self.optimal = optimal


class ConflictError(UttreeError):
    """A write conflicts with existing state (e.g. duplicate session id)."""

    code = "conflict"


class CorruptionError(UttreeError):
    """A store file failed to parse."""

    code = "corruption"

    def __init__(self, path, line_number: int | None, reason: str):
        location = f"{path}:{line_number}" if line_number is not None else str(path)
        super().__init__(f"corrupt store file {location}: {reason}")
        self.path = path
        self.line_number = line_number


class NotInitializedError(UttreeError):
    """The store directory has not been initialized."""

    code = "not_initialized"
