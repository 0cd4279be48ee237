"""Streaming sub-event detection.

Tweets are folded into rate histograms one at a time. Whenever a minute
closes (a later tweet arrives, or the explicit end time is reached) every
frame inside it is judged, and the minute becomes at most one sub-event.
"""

from collections.abc import Iterable
from math import gcd
from typing import NamedTuple

from streamsum.config.logging_config import get_logger
from streamsum.core.constants import SECONDS_PER_MINUTE
from streamsum.core.detectors import (
    DetectorConfig,
    RateHistory,
    detect_increase,
    detect_outlier,
)
from streamsum.core.exceptions import HistogramError
from streamsum.core.histogram import RateHistogram, ingest_tick
from streamsum.core.models import DetectorMethod, EventSchedule, SubEvent, Tweet

logger = get_logger(__name__)


class FiredFrame(NamedTuple):
    """A frame that fired."""

    frame_start: int
    rate: int
    period: int


class MinuteVerdict(NamedTuple):
    """Detection outcome of one closed minute."""

    minute_start: int
    count: int
    fired: FiredFrame | None


class ClosedMinute(NamedTuple):
    """A closed minute with its tweets and the sub-event it produced, if any."""

    verdict: MinuteVerdict
    tweets: list[Tweet]
    sub_event: SubEvent | None


class TimelineRow(NamedTuple):
    """One bar of the tweeting-rate histogram."""

    minute: int
    minute_start: int
    count: int
    fired: bool


class BurstDetector:
    """Rate-based sub-event detector over timestamps.

    Frames of every period are anchored at the schedule origin, so each
    minute is tiled exactly by the frames of each period.
    """

    def __init__(self, config: DetectorConfig, schedule: EventSchedule):
        """Initialize detector state.

        Args:
            config: Detection method and parameters
            schedule: Event start, warm-up and end
        """
        self.config = config
        self.schedule = schedule
        self.origin = schedule.origin
        self.histograms = {
            period: RateHistogram(period, self.origin) for period in config.periods
        }
        self.minutes = RateHistogram(SECONDS_PER_MINUTE, self.origin)
        self.history = RateHistory()
        self.next_minute = 0
        self._step = 0
        for period in config.periods:
            self._step = gcd(self._step, period)

    def minute_index(self, timestamp: int) -> int:
        """Index of the minute bin containing ``timestamp``."""
        return (timestamp - self.origin) // SECONDS_PER_MINUTE

    def minute_start(self, index: int) -> int:
        """Timestamp at which minute bin ``index`` begins."""
        return self.origin + index * SECONDS_PER_MINUTE

    def observe(self, timestamp: int) -> list[MinuteVerdict]:
        """Count one tweet, first closing every minute that ended before it.

        Args:
            timestamp: Tweet time, not earlier than the origin

        Returns:
            Verdicts of the minutes closed by this tweet

        Raises:
            HistogramError: If the timestamp is before the origin or falls in
                an already closed minute
        """
        if timestamp < self.origin:
            raise HistogramError(f"timestamp {timestamp} is before origin {self.origin}")
        if self.minute_index(timestamp) < self.next_minute:
            raise HistogramError(f"timestamp {timestamp} falls in an already closed minute")

        verdicts = self.close_until(timestamp)
        for histogram in self.histograms.values():
            ingest_tick(histogram, timestamp)
        ingest_tick(self.minutes, timestamp)
        return verdicts

    def close_until(self, now: int) -> list[MinuteVerdict]:
        """Close every minute that ends at or before ``now``."""
        verdicts = []
        while self.minute_start(self.next_minute + 1) <= now:
            verdicts.append(self._close_minute(self.next_minute))
            self.next_minute += 1
        return verdicts

    def finish(self) -> list[MinuteVerdict]:
        """Close the remaining minutes when the stream ends.

        With an explicit end time every minute up to it is judged, including
        a minute cut short by the end; otherwise the partial last minute is
        left undecided.
        """
        end_time = self.schedule.end_time
        if end_time is None:
            return []
        return self.close_until(self.minute_start(self.minute_index(end_time - 1) + 1))

    def _close_minute(self, index: int) -> MinuteVerdict:
        minute_start = self.minute_start(index)
        fired: list[FiredFrame] = []

        for boundary in range(
            minute_start + self._step, minute_start + SECONDS_PER_MINUTE + 1, self._step
        ):
            ending = [
                h
                for period, h in self.histograms.items()
                if (boundary - self.origin) % period == 0
            ]
            for histogram in ending:
                frame = self._judge_frame(histogram, boundary)
                if frame is not None:
                    fired.append(frame)

        count = self.minutes.count_at(index)
        earliest = min(fired, key=lambda f: (f.frame_start, f.period)) if fired else None
        if earliest is not None:
            logger.info(
                f"Sub-event at minute {self.schedule.minute_of(minute_start)} "
                f"({self.config.method.value}, rate {earliest.rate}/{earliest.period}s)"
            )
        return MinuteVerdict(minute_start=minute_start, count=count, fired=earliest)

    def _judge_frame(self, histogram: RateHistogram, frame_end: int) -> FiredFrame | None:
        period = histogram.period_seconds
        index = (frame_end - self.origin) // period - 1
        frame_start = histogram.frame_start(index)
        count = histogram.count_at(index)
        in_game = frame_start >= self.schedule.start_time

        if self.config.method is DetectorMethod.OUTLIERS:
            fired = in_game and detect_outlier(
                self.history, count, self.config.outlier_quantile
            )
            self.history.add(count)
        else:
            fired = in_game and detect_increase(
                [histogram], frame_end, self.config.increase_factor
            )

        logger.debug(f"Frame {frame_start}+{period}s count={count} fired={fired}")
        return FiredFrame(frame_start, count, period) if fired else None


class SubEventStream:
    """Groups tweets by minute and turns fired minutes into sub-events.

    Tweets before the origin, or at or after an explicit end time, are
    skipped.
    """

    def __init__(self, config: DetectorConfig, schedule: EventSchedule):
        self.detector = BurstDetector(config, schedule)
        self.schedule = schedule
        self.method = config.method
        self._buffer: list[Tweet] = []
        self.skipped = 0

    def accepts(self, tweet: Tweet) -> bool:
        """Whether the tweet falls inside the observed window."""
        if tweet.timestamp < self.detector.origin:
            return False
        end_time = self.schedule.end_time
        return end_time is None or tweet.timestamp < end_time

    def push(self, tweet: Tweet) -> list[ClosedMinute]:
        """Feed one tweet; returns the minutes it closed."""
        if not self.accepts(tweet):
            self.skipped += 1
            logger.debug(f"Skipping tweet {tweet.id} at {tweet.timestamp} outside the event")
            return []

        closed = self._wrap(self.detector.observe(tweet.timestamp))
        self._buffer.append(tweet)
        return closed

    def finish(self) -> list[ClosedMinute]:
        """Close the remaining minutes at the end of the stream."""
        return self._wrap(self.detector.finish())

    def _wrap(self, verdicts: list[MinuteVerdict]) -> list[ClosedMinute]:
        closed = []
        for verdict in verdicts:
            # The buffer only ever holds the oldest open minute
            tweets: list[Tweet] = []
            if self._buffer and self._buffer[0].timestamp < (
                verdict.minute_start + SECONDS_PER_MINUTE
            ):
                tweets, self._buffer = self._buffer, []
            closed.append(ClosedMinute(verdict, tweets, self._to_sub_event(verdict, tweets)))
        return closed

    def _to_sub_event(self, verdict: MinuteVerdict, tweets: list[Tweet]) -> SubEvent | None:
        if verdict.fired is None:
            return None
        return SubEvent(
            minute=self.schedule.minute_of(verdict.fired.frame_start),
            frame_start=verdict.fired.frame_start,
            rate=verdict.fired.rate,
            period=verdict.fired.period,
            detector=self.method,
            tweets=tuple(t.id for t in tweets),
        )


def emit_subevents(
    config: DetectorConfig,
    schedule: EventSchedule,
    tweets: Iterable[Tweet],
) -> list[SubEvent]:
    """Detect sub-events over a timestamp-ordered tweet stream.

    Args:
        config: Detection method and parameters
        schedule: Event start, warm-up and end
        tweets: Tweets in timestamp order

    Returns:
        Sub-events in minute order, at most one per minute
    """
    stream = SubEventStream(config, schedule)
    sub_events = []
    for tweet in tweets:
        sub_events.extend(c.sub_event for c in stream.push(tweet) if c.sub_event is not None)
    sub_events.extend(c.sub_event for c in stream.finish() if c.sub_event is not None)
    return sub_events


def rate_timeline(
    config: DetectorConfig,
    schedule: EventSchedule,
    tweets: Iterable[Tweet],
) -> list[TimelineRow]:
    """Per-minute tweeting rates with detections marked.

    Warm-up minutes have negative minute numbers.
    """
    stream = SubEventStream(config, schedule)
    rows = []

    def collect(closed: list[ClosedMinute]) -> None:
        for minute in closed:
            start = minute.verdict.minute_start
            rows.append(
                TimelineRow(
                    minute=schedule.minute_of(start),
                    minute_start=start,
                    count=minute.verdict.count,
                    fired=minute.sub_event is not None,
                )
            )

    for tweet in tweets:
        collect(stream.push(tweet))
    collect(stream.finish())
    return rows
