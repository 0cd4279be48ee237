"""Tests for streaming sub-event detection."""

import pytest

from streamsum.core.detectors import DetectorConfig
from streamsum.core.exceptions import HistogramError
from streamsum.core.models import DetectorMethod, EventSchedule
from streamsum.services.detection_service import (
    BurstDetector,
    SubEventStream,
    emit_subevents,
    rate_timeline,
)
from tests.factories import START_TIME, minute_stream

OUTLIERS = DetectorConfig(method=DetectorMethod.OUTLIERS)
INCREASE = DetectorConfig(method=DetectorMethod.INCREASE)
WARMUP_MINUTES = 15


def _game_counts(game: list[int], warmup: int = 10) -> list[int]:
    """Per-minute counts: a flat warm-up followed by the game minutes."""
    return [warmup] * WARMUP_MINUTES + game


class TestEmitSubEvents:
    """Tests for emit_subevents function."""

    def test_single_spike(self, schedule: EventSchedule):
        """Test that one busy minute in a flat stream is one sub-event."""
        counts = _game_counts([10] * 20 + [100] + [10] * 10)
        tweets = minute_stream(schedule.origin, counts)

        sub_events = emit_subevents(OUTLIERS, schedule, tweets)

        assert [s.minute for s in sub_events] == [20]
        assert sub_events[0].rate == 100
        assert sub_events[0].period == 60
        assert sub_events[0].frame_start == START_TIME + 20 * 60
        assert len(sub_events[0].tweets) == 100

    def test_consecutive_minutes(self, schedule: EventSchedule):
        """Test that two adjacent busy minutes are both detected."""
        counts = _game_counts([10] * 5 + [100, 100] + [10] * 5)
        tweets = minute_stream(schedule.origin, counts)

        sub_events = emit_subevents(OUTLIERS, schedule, tweets)

        assert [s.minute for s in sub_events] == [5, 6]

    def test_stream_ends_during_warmup(self, schedule: EventSchedule):
        """Test that nothing is reported before the event starts."""
        tweets = minute_stream(schedule.origin, [10, 10, 100, 10, 10])
        assert emit_subevents(OUTLIERS, schedule, tweets) == []
        assert emit_subevents(INCREASE, schedule, tweets) == []

    def test_no_firing_during_warmup(self, schedule: EventSchedule):
        """Test that a warm-up spike is learned, not reported."""
        counts = [10] * 5 + [200] + [10] * 9 + [10] * 10
        tweets = minute_stream(schedule.origin, counts)

        for config in (OUTLIERS, INCREASE):
            assert all(s.minute >= 0 for s in emit_subevents(config, schedule, tweets))
        assert emit_subevents(OUTLIERS, schedule, tweets) == []

    def test_increase_fires_on_low_rates(self, schedule: EventSchedule):
        """Test that 0/1 alternation fires increase but never outliers."""
        counts = [minute % 2 for minute in range(WARMUP_MINUTES + 30)]
        tweets = minute_stream(schedule.origin, counts)

        assert len(emit_subevents(INCREASE, schedule, tweets)) >= 1
        assert emit_subevents(OUTLIERS, schedule, tweets) == []

    def test_increase_merges_sub_minute_frames(self, schedule: EventSchedule):
        """Test that several firing frames of one minute give one sub-event."""
        counts = _game_counts([10] * 5 + [120] + [10] * 5)
        tweets = minute_stream(schedule.origin, counts)

        sub_events = emit_subevents(INCREASE, schedule, tweets)
        minutes = [s.minute for s in sub_events]

        assert len(minutes) == len(set(minutes))
        spike = next(s for s in sub_events if s.minute == 5)
        assert len(spike.tweets) == 120
        assert spike.detector is DetectorMethod.INCREASE
        assert spike.frame_start == START_TIME + 5 * 60

    def test_increase_emits_more(self, schedule: EventSchedule):
        """Test that increase is noisier than outliers on a wavy stream."""
        game = [10, 14, 9, 16, 8, 15, 10, 18, 9, 13] * 3
        game[12] = 100
        tweets = minute_stream(schedule.origin, _game_counts(game))

        increase = emit_subevents(INCREASE, schedule, tweets)
        outliers = emit_subevents(OUTLIERS, schedule, tweets)

        assert 12 in [s.minute for s in outliers]
        assert len(increase) > len(outliers)

    def test_partial_last_minute_undecided(self, schedule: EventSchedule):
        """Test that an open last minute is not judged without an end time."""
        counts = _game_counts([10] * 5 + [100])
        tweets = minute_stream(schedule.origin, counts)

        assert emit_subevents(OUTLIERS, schedule, tweets) == []

    def test_end_time_closes_last_minute(self, schedule: EventSchedule):
        """Test that an explicit end time judges the final minute."""
        counts = _game_counts([10] * 5 + [100])
        tweets = minute_stream(schedule.origin, counts)
        ended = schedule.model_copy(update={"end_time": START_TIME + 6 * 60})

        assert [s.minute for s in emit_subevents(OUTLIERS, ended, tweets)] == [5]

    @pytest.mark.parametrize("config", [OUTLIERS, INCREASE])
    def test_end_time_inside_minute(self, schedule: EventSchedule, config: DetectorConfig):
        """Test that a minute cut short by the end time is still judged."""
        counts = _game_counts([10] * 5 + [100])
        tweets = minute_stream(schedule.origin, counts)
        ended = schedule.model_copy(update={"end_time": START_TIME + 5 * 60 + 30})

        assert [s.minute for s in emit_subevents(config, ended, tweets)][-1] == 5

    def test_end_time_inside_minute_timeline(self, schedule: EventSchedule):
        """Test that the cut-short minute counts only tweets before the end."""
        counts = _game_counts([10] * 5 + [100])
        tweets = minute_stream(schedule.origin, counts)
        ended = schedule.model_copy(update={"end_time": START_TIME + 5 * 60 + 30})

        last = rate_timeline(OUTLIERS, ended, tweets)[-1]

        assert last.minute == 5
        assert last.count == 50
        assert last.fired is True


class TestBurstDetector:
    """Tests for BurstDetector state handling."""

    def test_before_origin(self, schedule: EventSchedule):
        """Test that a timestamp before the origin is rejected."""
        detector = BurstDetector(OUTLIERS, schedule)
        with pytest.raises(HistogramError):
            detector.observe(schedule.origin - 1)

    def test_closed_minute(self, schedule: EventSchedule):
        """Test that a timestamp in a closed minute is rejected."""
        detector = BurstDetector(OUTLIERS, schedule)
        detector.observe(schedule.origin + 130)
        with pytest.raises(HistogramError):
            detector.observe(schedule.origin + 30)

    def test_verdicts_cover_empty_minutes(self, schedule: EventSchedule):
        """Test that silent minutes are closed with a zero count."""
        detector = BurstDetector(OUTLIERS, schedule)
        detector.observe(schedule.origin + 5)
        verdicts = detector.observe(schedule.origin + 185)

        assert [v.count for v in verdicts] == [1, 0, 0]
        assert [v.minute_start for v in verdicts] == [
            schedule.origin,
            schedule.origin + 60,
            schedule.origin + 120,
        ]
        assert len(detector.history) == 3


class TestSubEventStream:
    """Tests for SubEventStream."""

    def test_skips_outside_window(self, schedule: EventSchedule, make_tweet):
        """Test that tweets before the origin or after the end are skipped."""
        ended = schedule.model_copy(update={"end_time": START_TIME + 600})
        stream = SubEventStream(OUTLIERS, ended)

        stream.push(make_tweet(ended.origin - 10))
        stream.push(make_tweet(ended.origin + 10))
        stream.push(make_tweet(START_TIME + 600))

        assert stream.skipped == 2

    def test_minutes_carry_their_tweets(self, schedule: EventSchedule):
        """Test that every tweet lands in exactly one closed minute."""
        counts = _game_counts([3, 0, 5, 1, 0, 0, 7])
        tweets = minute_stream(schedule.origin, counts)
        stream = SubEventStream(OUTLIERS, schedule)

        closed = []
        for tweet in tweets:
            closed.extend(stream.push(tweet))
        closed.extend(stream.finish())

        assert [len(c.tweets) for c in closed] == counts[:-1]
        for minute in closed:
            assert all(
                minute.verdict.minute_start <= t.timestamp < minute.verdict.minute_start + 60
                for t in minute.tweets
            )


class TestRateTimeline:
    """Tests for rate_timeline function."""

    def test_rows(self, schedule: EventSchedule):
        """Test per-minute counts with the spike marked."""
        counts = _game_counts([10, 10, 90, 10])
        tweets = minute_stream(schedule.origin, counts)

        rows = rate_timeline(OUTLIERS, schedule, tweets)

        assert [r.count for r in rows] == counts[:-1]
        assert rows[0].minute == -WARMUP_MINUTES
        assert [r.minute for r in rows if r.fired] == [2]
