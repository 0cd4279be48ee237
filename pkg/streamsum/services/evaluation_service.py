"""Evaluation of summaries against reference annotations."""

import json
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import TextIO

from pydantic import BaseModel, ConfigDict, ValidationError

from streamsum.config.logging_config import get_logger
from streamsum.core.constants import DEFAULT_MATCH_TOLERANCE
from streamsum.core.exceptions import EvaluationError
from streamsum.core.matching import (
    AggregateReport,
    MatchReport,
    aggregate,
    match,
    per_language_recall,
)
from streamsum.core.models import AnnotationKind, ReferenceAnnotation, SummaryRecord
from streamsum.services.ingestion_service import load_reference, read_tweets

logger = get_logger(__name__)


class GameEvaluation(BaseModel):
    """Evaluation of one game's summary."""

    model_config = ConfigDict(frozen=True)

    summary_path: str | None = None
    reference_path: str | None = None
    report: MatchReport
    per_language_recall: dict[str, dict[AnnotationKind, float]]


def read_summary(path: str | Path) -> list[SummaryRecord]:
    """Load summary JSONL records.

    Raises:
        EvaluationError: If a line is not a valid summary record
    """
    records = []
    with open(path, "rb") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(SummaryRecord.model_validate_json(line.decode("utf-8")))
            except UnicodeDecodeError as e:
                raise EvaluationError(f"{path}: line {line_number}: invalid UTF-8") from e
            except ValidationError as e:
                raise EvaluationError(
                    f"{path}: line {line_number}: invalid summary record"
                ) from e
    return records


def write_summary_record(record: SummaryRecord, handle: TextIO) -> None:
    """Append one summary record as a JSONL line."""
    handle.write(record.model_dump_json())
    handle.write("\n")


def evaluate_game(
    records: Sequence[SummaryRecord],
    reference: Sequence[ReferenceAnnotation],
    total_tweets: int | None = None,
    tolerance: int = DEFAULT_MATCH_TOLERANCE,
) -> MatchReport:
    """Match the minutes of a summary against the reference.

    Detected minutes are the distinct minutes of the summary. Compression is
    the number of distinct selected tweets over ``total_tweets``, when known.
    """
    detected = sorted({record.minute for record in records})
    compression = None
    if total_tweets:
        compression = len({record.tweet_id for record in records}) / total_tweets
    return match(detected, reference, tolerance, compression)


def evaluate_files(
    summary_path: str | Path,
    reference_path: str | Path,
    tweets_path: str | Path | None = None,
    tolerance: int = DEFAULT_MATCH_TOLERANCE,
) -> GameEvaluation:
    """Evaluate one game from its summary, reference and optional tweet files."""
    records = read_summary(summary_path)
    reference = load_reference(reference_path)
    total_tweets = len(read_tweets(tweets_path)) if tweets_path is not None else None

    report = evaluate_game(records, reference, total_tweets, tolerance)
    logger.info(
        f"{summary_path}: P={report.precision:.3f} R={report.recall:.3f} "
        f"F1={report.f1:.3f} #={report.detected_count}"
    )
    return GameEvaluation(
        summary_path=str(summary_path),
        reference_path=str(reference_path),
        report=report,
        per_language_recall=per_language_recall(records, reference, tolerance),
    )


def summarize_evaluations(evaluations: Iterable[GameEvaluation]) -> AggregateReport:
    """Macro-average several game evaluations."""
    return aggregate([evaluation.report for evaluation in evaluations])


def write_report(evaluations: Sequence[GameEvaluation], handle: TextIO) -> None:
    """Write game evaluations as a JSON list."""
    payload = [evaluation.model_dump(mode="json") for evaluation in evaluations]
    json.dump(payload, handle, ensure_ascii=False, indent=2)
    handle.write("\n")
