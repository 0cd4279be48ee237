"""Tweeting-rate histograms: tweet counts per fixed time frame."""

from dataclasses import dataclass, field

from streamsum.core.constants import ALLOWED_PERIODS
from streamsum.core.exceptions import HistogramError


@dataclass
class RateHistogram:
    """Append-only tweet counts per frame of ``period_seconds``.

    ``counts[k]`` covers ``[origin + k*period, origin + (k+1)*period)``.
    """

    period_seconds: int
    origin: int
    counts: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.period_seconds not in ALLOWED_PERIODS:
            raise ValueError(
                f"period_seconds must be one of {ALLOWED_PERIODS}, got {self.period_seconds}"
            )

    @property
    def total(self) -> int:
        """Tweets observed since the origin."""
        return sum(self.counts)

    def frame_index(self, timestamp: int) -> int:
        """Index of the frame containing ``timestamp``."""
        return (timestamp - self.origin) // self.period_seconds

    def frame_start(self, index: int) -> int:
        """Timestamp at which frame ``index`` begins."""
        return self.origin + index * self.period_seconds

    def extend_to(self, index: int) -> None:
        """Materialize empty frames up to and including ``index``."""
        missing = index + 1 - len(self.counts)
        if missing > 0:
            self.counts.extend([0] * missing)

    def count_at(self, index: int) -> int:
        """Count of frame ``index``; frames not yet materialized are empty."""
        if 0 <= index < len(self.counts):
            return self.counts[index]
        return 0


def ingest_tick(histogram: RateHistogram, tweet_timestamp: int) -> RateHistogram:
    """Count one tweet into its frame.

    Frames skipped since the last tweet are filled with zeros. The histogram
    is updated in place and returned.

    Args:
        histogram: Histogram to update
        tweet_timestamp: Tweet time in seconds since epoch

    Returns:
        The updated histogram

    Raises:
        HistogramError: If the timestamp precedes the origin
    """
    if tweet_timestamp < histogram.origin:
        raise HistogramError(
            f"timestamp {tweet_timestamp} is before histogram origin {histogram.origin}"
        )

    index = histogram.frame_index(tweet_timestamp)
    histogram.extend_to(index)
    histogram.counts[index] += 1
    return histogram
