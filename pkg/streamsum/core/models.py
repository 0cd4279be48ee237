"""Domain types shared by ingestion, detection, selection and evaluation.

Every type here is an immutable pydantic model, so values can be handed
between threads and encode to / decode from their external formats.
"""

import unicodedata
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from streamsum.core.constants import (
    DEFAULT_WARMUP_SECONDS,
    SECONDS_PER_MINUTE,
    UNDETERMINED_LANGUAGE,
)


class DetectorMethod(str, Enum):
    """Sub-event detection methods."""

    INCREASE = "increase"
    OUTLIERS = "outliers"


class SelectorMethod(str, Enum):
    """Term weighting methods used to rank tweets."""

    TF = "tf"
    KLD = "kld"


class AnnotationKind(str, Enum):
    """Kinds of sub-events found in live reports."""

    GOAL = "goal"
    PENALTY = "penalty"
    RED_CARD = "red_card"
    DISALLOWED_GOAL = "disallowed_goal"
    GAME_START = "game_start"
    GAME_END = "game_end"
    STOP_OR_RESUMPTION = "stop_or_resumption"


class Tweet(BaseModel):
    """One timestamped message of the stream.

    The wire name of ``timestamp`` is ``ts``.
    """

    model_config = ConfigDict(
        frozen=True,
        populate_by_name=True,
        extra="ignore",
        coerce_numbers_to_str=True,
    )

    id: str = Field(min_length=1)
    timestamp: int = Field(alias="ts", ge=0)
    text: str
    lang: str
    user: str

    @field_validator("id")
    @classmethod
    def validate_id(cls, v: str) -> str:
        """Reject blank identifiers."""
        if not v.strip():
            raise ValueError("id is empty")
        return v

    @field_validator("text")
    @classmethod
    def validate_text(cls, v: str) -> str:
        """Normalize to NFC and reject texts with no visible content."""
        normalized = unicodedata.normalize("NFC", v)
        if not normalized.strip():
            raise ValueError("text is empty")
        return normalized

    @field_validator("lang")
    @classmethod
    def validate_lang(cls, v: str) -> str:
        """Lowercase the language tag; missing tags become 'und'."""
        code = v.strip().lower()
        return code or UNDETERMINED_LANGUAGE

    def to_json_line(self) -> str:
        """Encode as one tweet JSONL record (without the newline)."""
        return self.model_dump_json(by_alias=True)


class EventSchedule(BaseModel):
    """When an event starts and how long its audience is observed beforehand.

    ``end_time`` of None means the event runs until the stream is exhausted.
    """

    model_config = ConfigDict(frozen=True)

    event_id: str = "event"
    start_time: int = Field(ge=0)
    warmup_seconds: int = Field(default=DEFAULT_WARMUP_SECONDS, gt=0)
    end_time: int | None = None

    @model_validator(mode="after")
    def validate_end_time(self) -> "EventSchedule":
        """End time, when given, must come after the start."""
        if self.end_time is not None and self.end_time <= self.start_time:
            raise ValueError("end_time must be later than start_time")
        return self

    @property
    def origin(self) -> int:
        """Start of the first observed frame.

        The warm-up is rounded up to whole minutes so that frame and minute
        boundaries coincide with the start time.
        """
        warmup_minutes = -(-self.warmup_seconds // SECONDS_PER_MINUTE)
        return self.start_time - warmup_minutes * SECONDS_PER_MINUTE

    def minute_of(self, timestamp: int) -> int:
        """Minutes since the start, rounded down (negative during warm-up)."""
        return (timestamp - self.start_time) // SECONDS_PER_MINUTE


class SubEvent(BaseModel):
    """A detected moment of the event, rounded down to its minute.

    ``frame_start``, ``rate`` and ``period`` describe the firing frame (the
    earliest one when several frames of the same minute fired); ``tweets``
    holds the ids of every tweet of the minute in arrival order.
    """

    model_config = ConfigDict(frozen=True)

    minute: int = Field(ge=0)
    frame_start: int
    rate: int = Field(ge=0)
    period: int = Field(gt=0)
    detector: DetectorMethod
    tweets: tuple[str, ...] = ()


class SummaryRecord(BaseModel):
    """One line of the summary JSONL output."""

    model_config = ConfigDict(frozen=True)

    minute: int = Field(ge=0)
    frame_start: int
    rate: int = Field(ge=0)
    lang: str
    tweet_id: str
    text: str
    score: float
    detector: DetectorMethod
    selector: SelectorMethod


class SummaryEntry(BaseModel):
    """The representative tweet of a sub-event in one language."""

    model_config = ConfigDict(frozen=True)

    sub_event: SubEvent
    lang: str
    tweet_id: str
    text: str
    score: float
    method: SelectorMethod

    def to_record(self) -> SummaryRecord:
        """Flatten into the self-contained JSONL record."""
        return SummaryRecord(
            minute=self.sub_event.minute,
            frame_start=self.sub_event.frame_start,
            rate=self.sub_event.rate,
            lang=self.lang,
            tweet_id=self.tweet_id,
            text=self.text,
            score=self.score,
            detector=self.sub_event.detector,
            selector=self.method,
        )


class ReferenceAnnotation(BaseModel):
    """A ground-truth sub-event taken from a live report."""

    model_config = ConfigDict(frozen=True)

    minute: int = Field(ge=0)
    kind: AnnotationKind
    note: str | None = None
