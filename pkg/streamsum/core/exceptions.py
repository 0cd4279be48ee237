"""Error types raised while reading, detecting and evaluating streams.

All of them derive from ValueError so callers that only guard against
bad values keep working.
"""


class StreamsumError(ValueError):
    """Base class for data errors (exit code 2 on the command line)."""


class TweetParseError(StreamsumError):
    """A tweet record could not be parsed or violates a Tweet invariant."""

    def __init__(self, message: str, line_number: int | None = None, field: str | None = None):
        self.line_number = line_number
        self.field = field
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class ReferenceFormatError(StreamsumError):
    """A reference annotation file is malformed."""

    def __init__(self, message: str, line_number: int | None = None, value: str | None = None):
        self.line_number = line_number
        self.value = value
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class OutOfOrderError(StreamsumError):
    """Strict replay met a record older than its predecessor."""

    def __init__(self, line_number: int, timestamp: int, previous: int):
        self.line_number = line_number
        self.timestamp = timestamp
        self.previous = previous
        super().__init__(
            f"line {line_number}: timestamp {timestamp} is earlier than previous {previous}"
        )


class ReorderWindowError(StreamsumError):
    """Lenient replay met a record too old for the reorder window."""

    def __init__(self, line_number: int, timestamp: int, newest: int, window: int):
        self.line_number = line_number
        self.timestamp = timestamp
        self.newest = newest
        self.window = window
        super().__init__(
            f"line {line_number}: timestamp {timestamp} is more than {window}s "
            f"behind the newest record ({newest})"
        )


class HistogramError(StreamsumError):
    """A timestamp cannot be placed in a rate histogram."""


class DetectionError(StreamsumError):
    """A detector was asked to decide without enough history."""


class EvaluationError(StreamsumError):
    """Evaluation inputs are unusable."""
