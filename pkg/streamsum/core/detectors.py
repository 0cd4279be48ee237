"""Sub-event detectors over tweeting-rate histograms.

Two detectors decide whether a frame holds a sub-event:

* increase: the rate grew by at least a fixed factor from the previous frame,
  checked for several frame lengths at once;
* outliers: the rate is above a quantile of every rate seen so far, starting
  with a warm-up window before the event begins.
"""

from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sortedcontainers import SortedList

from streamsum.core.constants import (
    ALLOWED_PERIODS,
    DEFAULT_INCREASE_FACTOR,
    DEFAULT_INCREASE_PERIODS,
    DEFAULT_OUTLIER_PERIOD,
    DEFAULT_OUTLIER_QUANTILE,
    DEFAULT_WARMUP_SECONDS,
)
from streamsum.core.exceptions import DetectionError
from streamsum.core.histogram import RateHistogram
from streamsum.core.models import DetectorMethod


class DetectorConfig(BaseModel):
    """Detector parameters; the defaults are the published configuration."""

    model_config = ConfigDict(frozen=True)

    method: DetectorMethod = DetectorMethod.OUTLIERS
    increase_factor: float = Field(default=DEFAULT_INCREASE_FACTOR, gt=1.0)
    increase_periods: tuple[int, ...] = DEFAULT_INCREASE_PERIODS
    outlier_period: int = DEFAULT_OUTLIER_PERIOD
    outlier_quantile: float = Field(default=DEFAULT_OUTLIER_QUANTILE, gt=0.0, lt=1.0)
    warmup_seconds: int = Field(default=DEFAULT_WARMUP_SECONDS, gt=0)

    @field_validator("increase_periods")
    @classmethod
    def validate_increase_periods(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Periods must tile a minute; duplicates are dropped, order sorted."""
        if not v:
            raise ValueError("increase_periods must not be empty")
        for period in v:
            if period not in ALLOWED_PERIODS:
                raise ValueError(f"increase period {period} not in {ALLOWED_PERIODS}")
        return tuple(sorted(set(v)))

    @field_validator("outlier_period")
    @classmethod
    def validate_outlier_period(cls, v: int) -> int:
        """Outlier frames must tile a minute."""
        if v not in ALLOWED_PERIODS:
            raise ValueError(f"outlier_period must be one of {ALLOWED_PERIODS}")
        return v

    @model_validator(mode="after")
    def validate_warmup(self) -> "DetectorConfig":
        """The warm-up must hold at least one outlier frame."""
        if self.warmup_seconds < self.outlier_period:
            raise ValueError("warmup_seconds must cover at least one outlier frame")
        return self

    @property
    def periods(self) -> tuple[int, ...]:
        """Frame lengths the configured method needs histograms for."""
        if self.method is DetectorMethod.INCREASE:
            return self.increase_periods
        return (self.outlier_period,)


class RateHistory:
    """Sorted multiset of previously seen frame counts.

    Insertion and rank queries are logarithmic in the number of frames.
    """

    def __init__(self, counts: Iterable[int] = ()):
        self._counts: SortedList = SortedList(counts)

    def add(self, count: int) -> None:
        """Record one more frame count."""
        self._counts.add(count)

    def count_below(self, value: int) -> int:
        """Number of recorded counts strictly lower than ``value``."""
        return self._counts.bisect_left(value)

    def fraction_below(self, value: int) -> float:
        """Share of recorded counts strictly lower than ``value``."""
        if not self._counts:
            raise DetectionError("rate history is empty; warm-up has not completed")
        return self.count_below(value) / len(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self._counts)


@lru_cache(maxsize=32)
def _exact_factor(factor: float) -> Fraction:
    # Decimal reading of the factor, so 1.1 * 100 is exactly 110
    return Fraction(repr(factor))


def increase_fired(prev_count: int, curr_count: int, factor: float) -> bool:
    """Check whether the rate grew by at least ``factor`` frame over frame.

    An empty current frame never fires, so 0 -> 0 is not a sub-event, but
    0 -> 1 is: low rates preceded by even lower rates do fire.

    Args:
        prev_count: Tweets in the previous frame
        curr_count: Tweets in the current frame
        factor: Minimum growth ratio

    Returns:
        True if the current frame fires
    """
    return curr_count >= 1 and curr_count >= _exact_factor(factor) * prev_count


def detect_increase(
    histograms: Iterable[RateHistogram],
    frame_end: int,
    factor: float = DEFAULT_INCREASE_FACTOR,
) -> bool:
    """Check every period's latest complete frame for a sudden increase.

    For each histogram, the frame ending at or before ``frame_end`` is
    compared with the one before it. Periods lacking two complete frames do
    not fire.

    Args:
        histograms: One histogram per configured period
        frame_end: Time up to which frames are complete
        factor: Minimum growth ratio

    Returns:
        True if any period fires
    """
    for histogram in histograms:
        latest = (frame_end - histogram.origin) // histogram.period_seconds - 1
        if latest < 1:
            continue
        if increase_fired(histogram.count_at(latest - 1), histogram.count_at(latest), factor):
            return True
    return False


def detect_outlier(
    history: RateHistory | Sequence[int],
    curr_count: int,
    quantile: float = DEFAULT_OUTLIER_QUANTILE,
) -> bool:
    """Check whether a frame's rate stands out from every rate seen before.

    The frame fires when at least ``quantile`` of the previous counts are
    strictly lower than ``curr_count``; ties are not counted as lower.

    Args:
        history: Counts of all earlier frames, warm-up included
        curr_count: Count of the frame under test
        quantile: Required share of lower counts

    Returns:
        True if the frame is an outlier

    Raises:
        DetectionError: If the history is empty
    """
    if not isinstance(history, RateHistory):
        history = RateHistory(history)
    return history.fraction_below(curr_count) >= quantile
