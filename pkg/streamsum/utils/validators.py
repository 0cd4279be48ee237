"""Validation and parsing of command-line values."""

import math
from datetime import UTC, datetime

from streamsum.core.constants import ALLOWED_PERIODS


def parse_start_time(value: str) -> int:
    """Parse an epoch-seconds or ISO-8601 timestamp.

    Naive ISO timestamps are read as UTC.

    Args:
        value: "1310000000" or "2011-07-07T00:45:00Z"

    Returns:
        Seconds since epoch

    Raises:
        ValueError: If the value is neither form
    """
    value = value.strip()
    if value.lstrip("-").isdigit():
        return int(value)

    try:
        parsed = datetime.fromisoformat(value)
    except ValueError as e:
        raise ValueError(f"not an epoch or ISO-8601 timestamp: {value!r}") from e
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=UTC)
    return int(parsed.timestamp())


def parse_periods(value: str) -> tuple[int, ...]:
    """Parse a comma-separated list of frame periods in seconds.

    Raises:
        ValueError: If a period is not one of the allowed frame lengths
    """
    periods = []
    for part in value.split(","):
        part = part.strip()
        if not part:
            continue
        period = int(part)
        if period not in ALLOWED_PERIODS:
            raise ValueError(f"period {period} not in {ALLOWED_PERIODS}")
        periods.append(period)
    if not periods:
        raise ValueError("no periods given")
    return tuple(periods)


def parse_minutes(value: str) -> list[int]:
    """Parse a comma-separated list of non-negative minutes."""
    minutes = []
    for part in value.split(","):
        part = part.strip()
        if not part:
            continue
        minute = int(part)
        if minute < 0:
            raise ValueError(f"minute {minute} is negative")
        minutes.append(minute)
    return minutes



def parse_positive_float(value: str) -> float:
    """Parse a finite number greater than zero.

    Raises:
        ValueError: If the value is not a positive number
    """
    number = float(value)
    if not math.isfinite(number) or number <= 0:
        raise ValueError(f"{value!r} is not a positive number")
    return number


def parse_non_negative_int(value: str) -> int:
    """Parse an integer that is zero or greater."""
    number = int(value)
    if number < 0:
        raise ValueError(f"{value!r} is negative")
    return number
