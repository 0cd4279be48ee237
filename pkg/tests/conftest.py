"""Pytest configuration and fixtures."""

import os

# Set test environment variables BEFORE importing any streamsum modules
os.environ.setdefault("STREAMSUM_DEBUG", "False")
os.environ.setdefault("STREAMSUM_LOG_LEVEL", "WARNING")
os.environ.setdefault("STREAMSUM_LANGUAGES", "es,en,pt")
os.environ.setdefault("STREAMSUM_STRICT_ORDER", "False")

from collections.abc import Callable

import pytest

from streamsum.core.models import EventSchedule, Tweet
from tests.factories import START_TIME


@pytest.fixture
def schedule() -> EventSchedule:
    """Event starting at START_TIME with the default 15-minute warm-up."""
    return EventSchedule(event_id="test", start_time=START_TIME)


@pytest.fixture
def make_tweet() -> Callable[..., Tweet]:
    """Factory for tweets with sensible defaults."""
    counter = iter(range(1_000_000))

    def _make(
        timestamp: int,
        text: str = "partido de hoy",
        lang: str = "es",
        tweet_id: str | None = None,
        user: str = "u1",
    ) -> Tweet:
        return Tweet(
            id=tweet_id if tweet_id is not None else f"t{next(counter)}",
            timestamp=timestamp,
            text=text,
            lang=lang,
            user=user,
        )

    return _make

