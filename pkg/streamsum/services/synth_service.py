"""Synthetic event streams with planted sub-events.

Tweets arrive as a Poisson process whose per-minute rate follows an audience
curve and is multiplied at planted minutes. Texts are drawn from a Zipf
weighted background vocabulary; a planted burst term is injected into a
share of the tweets of its minute.
"""

import io
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from streamsum.config.logging_config import get_logger
from streamsum.core.constants import SECONDS_PER_MINUTE
from streamsum.core.models import AnnotationKind, EventSchedule, ReferenceAnnotation, Tweet
from streamsum.services.ingestion_service import write_reference, write_tweets

logger = get_logger(__name__)

DEFAULT_START_TIME = 1310000000
DEFAULT_LANGUAGE_SHARES = {"es": 0.84, "pt": 0.09, "en": 0.07}
DEFAULT_VOCABULARY = (
    "partido", "game", "jogo", "argentina", "uruguay", "brasil", "chile", "peru",
    "copa", "america", "ca2011", "copaamerica", "vamos", "come", "on", "que",
    "de", "la", "el", "the", "and", "do", "em", "ball", "pelota", "bola",
    "equipo", "team", "time", "messi", "forlan", "neymar", "suarez", "tevez",
    "minuto", "minute", "campo", "field", "hinchas", "fans", "torcida", "arbitro",
    "referee", "juiz", "ataque", "attack", "defensa", "defense", "jugada", "play",
)  # fmt: skip
DEFAULT_BURST_TERMS = ("gol", "roja", "penal", "anulado", "final", "pausa")
DEFAULT_BURST_KINDS = (
    AnnotationKind.GOAL,
    AnnotationKind.RED_CARD,
    AnnotationKind.PENALTY,
    AnnotationKind.DISALLOWED_GOAL,
    AnnotationKind.GAME_END,
    AnnotationKind.STOP_OR_RESUMPTION,
)
HASHTAG = "#ca2011"


class PlantedSubEvent(BaseModel):
    """A burst planted at one minute of the event."""

    model_config = ConfigDict(frozen=True)

    minute: int = Field(ge=0)
    burst_multiplier: float = Field(default=6.0, ge=3.0)
    burst_term: str = Field(min_length=1)
    kind: AnnotationKind = AnnotationKind.GOAL


class SynthSpec(BaseModel):
    """Parameters of one synthetic game."""

    model_config = ConfigDict(frozen=True)

    seed: int = 1
    event_id: str = "synthetic"
    start_time: int = Field(default=DEFAULT_START_TIME, ge=0)
    warmup_minutes: int = Field(default=15, ge=1)
    duration_minutes: int = Field(default=90, gt=0)
    base_rate: float = Field(default=30.0, gt=0.0)
    audience_curve: tuple[tuple[int, float], ...] = ()
    planted: tuple[PlantedSubEvent, ...] = ()
    languages: dict[str, float] = Field(default_factory=lambda: dict(DEFAULT_LANGUAGE_SHARES))
    background_vocabulary: tuple[str, ...] = DEFAULT_VOCABULARY
    zipf_exponent: float = Field(default=1.0, gt=0.0)
    burst_probability: float = Field(default=0.6, ge=0.0, le=1.0)
    min_words: int = Field(default=3, ge=1)
    max_words: int = Field(default=10, ge=1)

    @field_validator("audience_curve")
    @classmethod
    def validate_curve(cls, v: tuple[tuple[int, float], ...]) -> tuple[tuple[int, float], ...]:
        """Multipliers must be positive; breakpoints are sorted by minute."""
        for _, multiplier in v:
            if multiplier <= 0:
                raise ValueError("audience multipliers must be positive")
        return tuple(sorted(v))

    @field_validator("languages")
    @classmethod
    def validate_languages(cls, v: dict[str, float]) -> dict[str, float]:
        """Shares must be non-negative and sum to 1."""
        if not v or any(share < 0 for share in v.values()):
            raise ValueError("language shares must be non-negative")
        if abs(sum(v.values()) - 1.0) > 1e-6:
            raise ValueError("language shares must sum to 1")
        return v

    @field_validator("background_vocabulary")
    @classmethod
    def validate_vocabulary(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        """Vocabulary must not be empty."""
        if not v:
            raise ValueError("background_vocabulary must not be empty")
        return v

    @model_validator(mode="after")
    def validate_planted(self) -> "SynthSpec":
        """Planted minutes fall inside the game and are at least a minute apart."""
        minutes = [p.minute for p in self.planted]
        if len(set(minutes)) != len(minutes):
            raise ValueError("planted sub-events must be at least one minute apart")
        if any(m >= self.duration_minutes for m in minutes):
            raise ValueError("planted sub-events must fall inside the game")
        if self.min_words > self.max_words:
            raise ValueError("min_words must not exceed max_words")
        return self

    @property
    def schedule(self) -> EventSchedule:
        """Schedule matching the generated stream."""
        return EventSchedule(
            event_id=self.event_id,
            start_time=self.start_time,
            warmup_seconds=self.warmup_minutes * SECONDS_PER_MINUTE,
            end_time=self.start_time + self.duration_minutes * SECONDS_PER_MINUTE,
        )

    def audience(self, minute: int) -> float:
        """Audience multiplier in effect at ``minute``."""
        multiplier = 1.0
        for from_minute, value in self.audience_curve:
            if from_minute > minute:
                break
            multiplier = value
        return multiplier

    def expected_rate(self, minute: int) -> float:
        """Poisson mean of ``minute``, bursts included."""
        rate = self.base_rate * self.audience(minute)
        for planted in self.planted:
            if planted.minute == minute:
                rate *= planted.burst_multiplier
        return rate

    def expected_total(self) -> float:
        """Expected number of tweets of the whole stream."""
        return sum(
            self.expected_rate(m) for m in range(-self.warmup_minutes, self.duration_minutes)
        )


class SyntheticGame(NamedTuple):
    """A generated stream with its reference annotations."""

    schedule: EventSchedule
    tweets: list[Tweet]
    reference: list[ReferenceAnnotation]


def make_spec(
    seed: int,
    burst_minutes: Sequence[int],
    *,
    base_rate: float = 30.0,
    duration_minutes: int = 90,
    burst_multiplier: float = 6.0,
    **overrides,
) -> SynthSpec:
    """Build a spec with bursts at the given minutes.

    Burst terms and kinds cycle through a fixed list.
    """
    planted = tuple(
        PlantedSubEvent(
            minute=minute,
            burst_multiplier=burst_multiplier,
            burst_term=DEFAULT_BURST_TERMS[i % len(DEFAULT_BURST_TERMS)],
            kind=DEFAULT_BURST_KINDS[i % len(DEFAULT_BURST_KINDS)],
        )
        for i, minute in enumerate(sorted(burst_minutes))
    )
    return SynthSpec(
        seed=seed,
        base_rate=base_rate,
        duration_minutes=duration_minutes,
        planted=planted,
        **overrides,
    )


def generate(spec: SynthSpec) -> SyntheticGame:
    """Generate a game; identical specs give identical games.

    Args:
        spec: Generation parameters

    Returns:
        Schedule, tweets in timestamp order and planted reference
    """
    rng = np.random.default_rng(spec.seed)
    codes = list(spec.languages)
    shares = np.array([spec.languages[c] for c in codes], dtype=float)
    vocabulary = np.array(spec.background_vocabulary)
    ranks = np.arange(1, len(vocabulary) + 1, dtype=float)
    zipf = ranks**-spec.zipf_exponent
    zipf /= zipf.sum()
    planted = {p.minute: p for p in spec.planted}

    tweets: list[Tweet] = []
    for minute in range(-spec.warmup_minutes, spec.duration_minutes):
        n = int(rng.poisson(spec.expected_rate(minute)))
        if n == 0:
            continue

        minute_start = spec.start_time + minute * SECONDS_PER_MINUTE
        offsets = np.sort(rng.integers(0, SECONDS_PER_MINUTE, size=n))
        langs = rng.choice(len(codes), size=n, p=shares)
        lengths = rng.integers(spec.min_words, spec.max_words + 1, size=n)
        words = rng.choice(vocabulary, size=int(lengths.sum()), p=zipf)
        users = rng.integers(0, 10_000, size=n)
        burst = planted.get(minute)
        injected = rng.random(n) < spec.burst_probability if burst else np.zeros(n, bool)
        positions = rng.integers(0, lengths + 1)

        cursor = 0
        for i in range(n):
            body = [str(w) for w in words[cursor : cursor + lengths[i]]]
            cursor += int(lengths[i])
            if burst is not None and injected[i]:
                body.insert(int(positions[i]), burst.burst_term)
            body.append(HASHTAG)
            tweets.append(
                Tweet(
                    id=f"{spec.seed}-{len(tweets)}",
                    timestamp=minute_start + int(offsets[i]),
                    text=" ".join(body),
                    lang=codes[int(langs[i])],
                    user=f"u{int(users[i])}",
                )
            )

    reference = [
        ReferenceAnnotation(minute=p.minute, kind=p.kind, note=p.burst_term)
        for p in sorted(spec.planted, key=lambda p: p.minute)
    ]
    logger.info(
        f"Generated {len(tweets)} tweets with {len(reference)} planted sub-events "
        f"(seed {spec.seed})"
    )
    return SyntheticGame(schedule=spec.schedule, tweets=tweets, reference=reference)


def render(game: SyntheticGame) -> tuple[str, str]:
    """Encode a game as (tweet JSONL, reference CSV) text."""
    tweets_out = io.StringIO()
    write_tweets(game.tweets, tweets_out)
    reference_out = io.StringIO()
    write_reference(game.reference, reference_out)
    return tweets_out.getvalue(), reference_out.getvalue()
