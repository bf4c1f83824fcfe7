"""Temporal familiarity model.

A learner's exposure to a knowledge point accumulates over learning
sessions and decays with time.  The familiarity measure of knowledge
point ``k`` at instant ``t`` is the sum over sessions of

    duration * share_of_k * retention(t - cessation_time)

with retention following an exponential forgetting curve
``exp(-elapsed / stability)``.  Familiarity is expressed in
minutes-equivalent so the default understanding threshold of 100 is
meaningful out of the box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Mapping

from .errors import ConfigurationError, InvalidArgumentError

DEFAULT_STABILITY_HOURS = 72.0
DEFAULT_THRESHOLD = 100.0
DEFAULT_COMPENSATION_K = 10.0

_SHARE_SUM_TOLERANCE = 1e-9


def parse_timestamp(value: str | datetime) -> datetime:
    """Parse an ISO-8601 timestamp into a timezone-aware UTC datetime.

    Naive timestamps are taken to be UTC; a trailing ``Z`` is accepted.
    """
    if isinstance(value, datetime):
        ts = value
    else:
        try:
            ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
        except ValueError as exc:
            raise InvalidArgumentError(f"invalid ISO-8601 timestamp {value!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def format_timestamp(ts: datetime) -> str:
    return parse_timestamp(ts).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class KnowledgePoint:
    """An explicitly defined unit of knowledge; node of every structure.

    ``is_bkp`` marks a basic knowledge point: one simple enough that no
    other knowledge point is needed to interpret it, hence a leaf of
    every understanding tree.
    """

    id: str
    display_name: str = ""
    aliases: frozenset[str] = frozenset()
    is_bkp: bool = False

    def __post_init__(self):
        if not self.id:
            raise InvalidArgumentError("knowledge point id must be non-empty")
        if not self.display_name:
            object.__setattr__(self, "display_name", self.id)
        object.__setattr__(self, "aliases", frozenset(self.aliases))

    def surface_forms(self) -> frozenset[str]:
        """All matchable strings: aliases plus the display name."""
        return self.aliases | {self.display_name}


@dataclass(frozen=True)
class LearningSession:
    """One timestamped learning event with per-KP content shares."""

    session_id: str
    cessation_time: datetime
    duration_min: float
    shares: Mapping[str, float]

    def __post_init__(self):
        if not self.session_id:
            raise InvalidArgumentError("session_id must be non-empty")
        object.__setattr__(self, "cessation_time", parse_timestamp(self.cessation_time))
        if not self.duration_min > 0:
            raise InvalidArgumentError(
                f"session {self.session_id!r}: duration must be strictly positive"
            )
        shares = dict(self.shares)
        for kp, share in shares.items():
            if not 0 < share <= 1:
                raise InvalidArgumentError(
                    f"session {self.session_id!r}: share for {kp!r} must be in (0, 1]"
                )
        if sum(shares.values()) > 1 + _SHARE_SUM_TOLERANCE:
            raise InvalidArgumentError(
                f"session {self.session_id!r}: shares sum to more than 1"
            )
        object.__setattr__(self, "shares", shares)

    def to_json_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "cessation_time": format_timestamp(self.cessation_time),
            "duration_min": self.duration_min,
            "shares": dict(self.shares),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LearningSession":
        return cls(
            session_id=data["session_id"],
            cessation_time=parse_timestamp(data["cessation_time"]),
            duration_min=data["duration_min"],
            shares=data["shares"],
        )


@dataclass(frozen=True)
class RetentionConfig:
    """Forgetting-curve parameterization.

    Only the exponential model is implemented; ``stability_hours`` is the
    decay scale (retention drops to 1/e after that many hours).
    """

    stability_hours: float = DEFAULT_STABILITY_HOURS
    model: str = "exponential"

    def __post_init__(self):
        if not self.stability_hours > 0:
            raise ConfigurationError("stability must be strictly positive")
        if self.model != "exponential":
            raise ConfigurationError(f"unsupported retention model {self.model!r}")


@dataclass(frozen=True)
class ThresholdConfig:
    """Familiarity level (minutes-equivalent) above which a KP counts as fully familiar."""

    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if not self.threshold > 0:
            raise ConfigurationError("threshold must be strictly positive")


@dataclass(frozen=True)
class CompensationConfig:
    """Cross-compensation between near-identical knowledge points.

    Each member of a sibling group contributes ``1/k`` of its familiarity
    to every other member of the same group.
    """

    k_coefficient: float = DEFAULT_COMPENSATION_K
    sibling_groups: tuple[frozenset[str], ...] = ()

    def __post_init__(self):
        if not self.k_coefficient > 0:
            raise ConfigurationError("k coefficient must be strictly positive")
        groups = tuple(frozenset(g) for g in self.sibling_groups)
        seen: set[str] = set()
        for group in groups:
            overlap = seen & group
            if overlap:
                raise ConfigurationError(
                    f"sibling groups must be pairwise disjoint; {sorted(overlap)} repeated"
                )
            seen |= group
        object.__setattr__(self, "sibling_groups", groups)


@dataclass(frozen=True)
class KnowledgeState:
    """Per-KP familiarity measures at one instant, plus the threshold in force."""

    as_of: datetime
    familiarity: Mapping[str, float]
    threshold_config: ThresholdConfig = field(default_factory=ThresholdConfig)

    def __post_init__(self):
        object.__setattr__(self, "as_of", parse_timestamp(self.as_of))
        values = dict(self.familiarity)
        for kp, value in values.items():
            if value < 0:
                raise InvalidArgumentError(f"familiarity of {kp!r} must be non-negative")
        object.__setattr__(self, "familiarity", values)

    def percentage(self, kp_id: str) -> float:
        return percentage_of_familiarity(self.familiarity.get(kp_id, 0.0), self.threshold_config)


def retention(elapsed_hours: float, config: RetentionConfig = RetentionConfig()) -> float:
    """Fraction of a session's effect surviving memory decay after ``elapsed_hours``."""
    if elapsed_hours < 0:
        raise InvalidArgumentError(
            f"elapsed time must be non-negative, got {elapsed_hours}"
        )
    return math.exp(-elapsed_hours / config.stability_hours)


def familiarity(
    sessions: Iterable[LearningSession],
    kp_id: str,
    at: datetime,
    config: RetentionConfig = RetentionConfig(),
) -> float:
    """Accumulated, decay-weighted exposure to ``kp_id`` across ``sessions``.

    Every session must end at or before ``at``; a session dated after the
    evaluation instant is rejected to surface clock errors.
    """
    at = parse_timestamp(at)
    total = 0.0
    for session in sessions:
        elapsed_hours = (at - session.cessation_time).total_seconds() / 3600.0
        if elapsed_hours < 0:
            raise InvalidArgumentError(
                f"session {session.session_id!r} ends after the evaluation time"
            )
        share = session.shares.get(kp_id)
        if share:
            total += session.duration_min * share * retention(elapsed_hours, config)
    return total


def percentage_of_familiarity(
    value: float, config: ThresholdConfig = ThresholdConfig()
) -> float:
    """Familiarity as a fraction of the threshold, clamped to 1."""
    if value < 0:
        raise InvalidArgumentError(f"familiarity must be non-negative, got {value}")
    return min(value / config.threshold, 1.0)


def compensate(state: KnowledgeState, config: CompensationConfig) -> KnowledgeState:
    """Apply sibling compensation, returning a new state.

    All contributions are computed from the pre-update snapshot, so the
    result does not depend on member order within a group.
    """
    old = dict(state.familiarity)
    for group in config.sibling_groups:
        unknown = [kp for kp in group if kp not in old]
        if unknown:
            raise ConfigurationError(
                f"sibling group references unknown knowledge points {sorted(unknown)}"
            )
    new = dict(old)
    for group in config.sibling_groups:
        for kp in group:
            contribution = sum(old[other] for other in group if other != kp)
            new[kp] = old[kp] + contribution / config.k_coefficient
    return KnowledgeState(
        as_of=state.as_of, familiarity=new, threshold_config=state.threshold_config
    )
