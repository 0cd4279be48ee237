"""Reading tweet streams and reference files, and replaying streams in order."""

import asyncio
import csv
import heapq
import inspect
import io
import sys
from collections import Counter
from collections.abc import Awaitable, Callable, Iterable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import BinaryIO, TextIO

from pydantic import ValidationError

from streamsum.config.logging_config import get_logger
from streamsum.config.settings import settings
from streamsum.core.exceptions import (
    OutOfOrderError,
    ReferenceFormatError,
    ReorderWindowError,
    TweetParseError,
)
from streamsum.core.models import AnnotationKind, ReferenceAnnotation, Tweet

logger = get_logger(__name__)

STDIN_PATH = "-"
REFERENCE_HEADER = ("minute", "kind", "note")

TweetSink = Callable[[Tweet], Awaitable[None] | None]


class ClockMode(str, Enum):
    """How fast a stream is replayed."""

    AS_FAST_AS_POSSIBLE = "as_fast_as_possible"
    REALTIME_SCALED = "realtime_scaled"


@dataclass
class StreamSource:
    """A tweet stream to replay.

    Either ``path`` ("-" for stdin) or an open text ``handle`` must be given.
    ``strict_order`` of None defers to the STREAMSUM_STRICT_ORDER setting.
    """

    path: str | Path | None = None
    handle: TextIO | None = None
    clock_mode: ClockMode = ClockMode.AS_FAST_AS_POSSIBLE
    factor: float = 1.0
    strict_order: bool | None = None
    reorder_window: int | None = None

    def __post_init__(self) -> None:
        if self.path is None and self.handle is None:
            raise ValueError("StreamSource needs a path or a handle")
        if self.factor <= 0:
            raise ValueError("factor must be positive")

    @property
    def is_strict(self) -> bool:
        """Whether out-of-order records are rejected."""
        return settings.strict_order if self.strict_order is None else self.strict_order

    @property
    def window(self) -> int:
        """Lenient reorder window in seconds."""
        if self.reorder_window is None:
            return settings.reorder_window_seconds
        return self.reorder_window


@dataclass
class ReplayStats:
    """What a replay delivered."""

    total: int = 0
    per_language: Counter[str] = field(default_factory=Counter)
    first_timestamp: int | None = None
    last_timestamp: int | None = None

    @property
    def time_span(self) -> int:
        """Seconds between the first and last delivered tweet."""
        if self.first_timestamp is None or self.last_timestamp is None:
            return 0
        return self.last_timestamp - self.first_timestamp

    def record(self, tweet: Tweet) -> None:
        """Account for one delivered tweet."""
        self.total += 1
        self.per_language[tweet.lang] += 1
        if self.first_timestamp is None:
            self.first_timestamp = tweet.timestamp
        self.last_timestamp = tweet.timestamp


def parse_tweet_line(line: str, line_number: int | None = None) -> Tweet:
    """Parse one tweet JSONL record.

    Args:
        line: JSON object with id, ts, text, lang and user
        line_number: Position in the file, for error messages

    Returns:
        Validated tweet

    Raises:
        TweetParseError: If the record is malformed or violates an invariant
    """
    try:
        return Tweet.model_validate_json(line)
    except ValidationError as e:
        error = e.errors()[0]
        if error["type"] in ("json_invalid", "model_type"):
            raise TweetParseError("malformed tweet record", line_number) from e
        field_name = str(error["loc"][0]) if error["loc"] else None
        if error["type"] == "missing":
            raise TweetParseError(
                f"missing field '{field_name}'", line_number, field_name
            ) from e
        raise TweetParseError(
            f"invalid field '{field_name}': {error['msg']}", line_number, field_name
        ) from e


@contextmanager
def open_lines(path: str | Path) -> Iterator[BinaryIO]:
    """Open an input file as raw bytes ("-" is stdin, which stays open)."""
    if str(path) == STDIN_PATH:
        yield sys.stdin.buffer
        return
    with open(path, "rb") as handle:
        yield handle


def error_line(data: bytes, error: UnicodeDecodeError) -> int:
    """1-based line of ``data`` holding the byte that failed to decode."""
    return data.count(b"\n", 0, error.start) + 1


def iter_tweet_lines(handle: Iterable[str | bytes]) -> Iterator[tuple[int, Tweet]]:
    """Parse tweets from an open JSONL handle, skipping blank lines.

    Byte lines are decoded one at a time, so invalid UTF-8 is reported with
    the line it occurs on.

    Raises:
        TweetParseError: On invalid UTF-8 or a malformed record
    """
    for line_number, raw in enumerate(handle, start=1):
        if isinstance(raw, bytes):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise TweetParseError("invalid UTF-8", line_number) from e
        else:
            line = raw
        if not line.strip():
            continue
        yield line_number, parse_tweet_line(line, line_number)


def read_tweets(path: str | Path) -> list[Tweet]:
    """Load a whole tweet JSONL file ("-" reads stdin)."""
    with open_lines(path) as handle:
        return [tweet for _, tweet in iter_tweet_lines(handle)]


def write_tweets(tweets: Iterable[Tweet], handle: TextIO) -> int:
    """Write tweets as JSONL; returns the number of records written."""
    written = 0
    for tweet in tweets:
        handle.write(tweet.to_json_line())
        handle.write("\n")
        written += 1
    return written


def parse_reference(handle: TextIO) -> list[ReferenceAnnotation]:
    """Parse reference CSV content (header "minute,kind,note").

    Raises:
        ReferenceFormatError: On a bad header, minute or kind
    """
    reader = csv.reader(handle)
    header = next(reader, None)
    if header is None:
        return []
    if tuple(h.strip().lower() for h in header[:3]) != REFERENCE_HEADER:
        raise ReferenceFormatError(f"expected header 'minute,kind,note', got {header}", 1)

    valid_kinds = {kind.value for kind in AnnotationKind}
    annotations: list[ReferenceAnnotation] = []
    for row in reader:
        line_number = reader.line_num
        if not row or not any(cell.strip() for cell in row):
            continue
        if len(row) < 2:
            raise ReferenceFormatError("expected at least minute and kind", line_number)

        raw_minute, raw_kind = row[0].strip(), row[1].strip()
        if raw_kind not in valid_kinds:
            raise ReferenceFormatError(
                f"unknown annotation kind '{raw_kind}'", line_number, raw_kind
            )
        try:
            minute = int(raw_minute)
        except ValueError as e:
            raise ReferenceFormatError(
                f"invalid minute '{raw_minute}'", line_number, raw_minute
            ) from e
        if minute < 0:
            raise ReferenceFormatError(f"negative minute {minute}", line_number, raw_minute)

        note = row[2].strip() if len(row) > 2 and row[2].strip() else None
        annotations.append(
            ReferenceAnnotation(minute=minute, kind=AnnotationKind(raw_kind), note=note)
        )

    annotations.sort(key=lambda a: a.minute)
    return annotations


def load_reference(path: str | Path) -> list[ReferenceAnnotation]:
    """Load reference annotations sorted by minute.

    Args:
        path: Reference CSV file

    Returns:
        Annotations sorted by minute (empty for an empty file)

    Raises:
        ReferenceFormatError: On invalid UTF-8 or malformed content
    """
    with open(path, "rb") as handle:
        data = handle.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ReferenceFormatError("invalid UTF-8", error_line(data, e)) from e

    annotations = parse_reference(io.StringIO(text, newline=""))
    logger.debug(f"Loaded {len(annotations)} reference annotations from {path}")
    return annotations


def write_reference(annotations: Iterable[ReferenceAnnotation], handle: TextIO) -> int:
    """Write annotations in the reference CSV format."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(REFERENCE_HEADER)
    written = 0
    for annotation in annotations:
        writer.writerow([annotation.minute, annotation.kind.value, annotation.note or ""])
        written += 1
    return written


class _Pacer:
    """Spaces deliveries by (delta ts / factor) of wall-clock time."""

    def __init__(self, factor: float):
        self.factor = factor
        self.loop = asyncio.get_running_loop()
        self.wall_start: float | None = None
        self.stream_start: int | None = None

    async def wait_for(self, timestamp: int) -> None:
        if self.wall_start is None or self.stream_start is None:
            self.wall_start = self.loop.time()
            self.stream_start = timestamp
            return
        target = self.wall_start + (timestamp - self.stream_start) / self.factor
        delay = target - self.loop.time()
        if delay > 0:
            await asyncio.sleep(delay)


async def _deliver(sink: TweetSink, tweet: Tweet) -> None:
    result = sink(tweet)
    if inspect.isawaitable(result):
        await result


async def replay_tweets(
    records: Iterable[tuple[int, Tweet]],
    sink: TweetSink,
    *,
    strict: bool,
    window: int,
    clock_mode: ClockMode = ClockMode.AS_FAST_AS_POSSIBLE,
    factor: float = 1.0,
) -> ReplayStats:
    """Deliver numbered tweets to ``sink`` in timestamp order.

    Strict mode rejects any record older than its predecessor. Lenient mode
    buffers records and releases each one once it is ``window`` seconds
    behind the newest record; anything older than that overflows.

    Args:
        records: (line number, tweet) pairs in file order
        sink: Plain or async callable receiving each tweet once
        strict: Reject out-of-order records
        window: Lenient reorder window in seconds
        clock_mode: Replay pacing
        factor: Speed-up for realtime_scaled pacing

    Returns:
        Replay statistics

    Raises:
        OutOfOrderError: Strict mode met an out-of-order record
        ReorderWindowError: Lenient mode met a record older than the window
    """
    stats = ReplayStats()
    pacer = _Pacer(factor) if clock_mode is ClockMode.REALTIME_SCALED else None

    async def emit(tweet: Tweet) -> None:
        if pacer is not None:
            await pacer.wait_for(tweet.timestamp)
        await _deliver(sink, tweet)
        stats.record(tweet)

    newest: int | None = None
    pending: list[tuple[int, int, Tweet]] = []
    for sequence, (line_number, tweet) in enumerate(records):
        if strict:
            if newest is not None and tweet.timestamp < newest:
                raise OutOfOrderError(line_number, tweet.timestamp, newest)
            newest = tweet.timestamp
            await emit(tweet)
            continue

        if newest is not None and tweet.timestamp < newest - window:
            raise ReorderWindowError(line_number, tweet.timestamp, newest, window)
        if newest is not None and tweet.timestamp < newest:
            logger.debug(f"Reordering line {line_number} ({tweet.timestamp} < {newest})")
        newest = tweet.timestamp if newest is None else max(newest, tweet.timestamp)
        heapq.heappush(pending, (tweet.timestamp, sequence, tweet))
        while pending and pending[0][0] <= newest - window:
            await emit(heapq.heappop(pending)[2])

    while pending:
        await emit(heapq.heappop(pending)[2])

    return stats


async def replay(source: StreamSource, sink: TweetSink) -> ReplayStats:
    """Replay a tweet stream into ``sink``.

    Args:
        source: Stream and replay options
        sink: Plain or async callable receiving each tweet exactly once

    Returns:
        Total tweets, per-language counts and time span
    """
    strict = source.is_strict
    logger.info(
        f"Replaying {source.path or 'handle'} "
        f"({'strict' if strict else 'lenient'} order, {source.clock_mode.value})"
    )

    if source.handle is not None:
        stats = await replay_tweets(
            iter_tweet_lines(source.handle),
            sink,
            strict=strict,
            window=source.window,
            clock_mode=source.clock_mode,
            factor=source.factor,
        )
    else:
        assert source.path is not None
        with open_lines(source.path) as handle:
            stats = await replay_tweets(
                iter_tweet_lines(handle),
                sink,
                strict=strict,
                window=source.window,
                clock_mode=source.clock_mode,
                factor=source.factor,
            )

    logger.info(
        f"Replay finished: {stats.total} tweets over {stats.time_span}s "
        f"({dict(stats.per_language.most_common())})"
    )
    return stats
