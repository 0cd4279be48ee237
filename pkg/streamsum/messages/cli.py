"""Command-line messages."""

# Descriptions
DESC_MAIN = "Real-time summarization of scheduled events from tweet streams."
DESC_SUMMARIZE = "Detect sub-events in a tweet stream and select one tweet per language."
DESC_EVALUATE = "Match summaries against reference annotations (±1 minute)."
DESC_GENERATE = "Generate a synthetic game with planted sub-events."
DESC_HISTOGRAM = "Write the per-minute tweeting rate with detections marked."

# Errors
MSG_USAGE_ERROR = "usage error: {error}"
MSG_DATA_ERROR = "error: {error}"
MSG_IO_ERROR = "error: cannot access {path}: {reason}"
MSG_INVALID_CONFIG = "invalid configuration: {error}"
MSG_UNPAIRED_INPUTS = "--summary and --reference must be given the same number of times"
MSG_UNPAIRED_TWEETS = "--tweets must be given once per --summary, or not at all"

# Results
MSG_RUN_FINISHED = (
    "{tweets} tweets, {sub_events} sub-events, {entries} entries, "
    "compression {compression:.5f}"
)
MSG_GENERATED = (
    "wrote {tweets} tweets to {tweets_path} and {annotations} annotations to {reference_path}"
)


def get_error_message(error: Exception) -> str:
    """One-line message for a data or I/O error.

    Args:
        error: Raised exception

    Returns:
        Message for stderr
    """
    if isinstance(error, OSError) and error.filename is not None:
        return MSG_IO_ERROR.format(path=error.filename, reason=error.strerror or error)
    return MSG_DATA_ERROR.format(error=error)
