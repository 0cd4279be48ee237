"""Command handlers behind the streamsum subcommands."""

import csv
import json
from collections.abc import Sequence

from streamsum.config.logging_config import get_logger
from streamsum.config.pipeline import PipelineConfig
from streamsum.core.matching import AggregateReport
from streamsum.core.models import SummaryEntry, Tweet
from streamsum.messages import cli as cli_msg
from streamsum.services.detection_service import TimelineRow, rate_timeline
from streamsum.services.evaluation_service import (
    GameEvaluation,
    evaluate_files,
    summarize_evaluations,
    write_report,
    write_summary_record,
)
from streamsum.services.ingestion_service import (
    ClockMode,
    StreamSource,
    replay,
)
from streamsum.services.summarization_service import RunStats, SummarizationPipeline
from streamsum.services.synth_service import SynthSpec, generate, render
from streamsum.utils.formatters import format_metrics_table, format_recall_table
from streamsum.utils.helpers import open_output

logger = get_logger(__name__)


def _source(
    config: PipelineConfig,
    strict_order: bool | None,
    realtime_factor: float | None,
) -> StreamSource:
    return StreamSource(
        path=config.input_path or "-",
        clock_mode=(
            ClockMode.REALTIME_SCALED
            if realtime_factor is not None
            else ClockMode.AS_FAST_AS_POSSIBLE
        ),
        factor=realtime_factor if realtime_factor is not None else 1.0,
        strict_order=strict_order,
    )


async def run_summarize(
    config: PipelineConfig,
    *,
    strict_order: bool | None = None,
    realtime_factor: float | None = None,
    stats_path: str | None = None,
) -> RunStats:
    """Summarize a tweet stream, writing entries as soon as they are selected.

    Args:
        config: Pipeline configuration
        strict_order: Reject out-of-order input (None defers to settings)
        realtime_factor: Replay at this multiple of real time, if given
        stats_path: Where to write run statistics as JSON

    Returns:
        Run statistics
    """
    logger.info(
        f"Summarizing {config.input_path or '-'} for {config.schedule.event_id} "
        f"({config.detector.method.value} + "
        f"{'tf/kld' if config.compare_selectors else config.selector.method.value}, "
        f"languages {','.join(config.languages)})"
    )

    with open_output(config.output_path) as out:

        def write_entry(entry: SummaryEntry) -> None:
            write_summary_record(entry.to_record(), out)
            out.flush()

        pipeline = SummarizationPipeline(config, on_entry=write_entry)
        await replay(_source(config, strict_order, realtime_factor), pipeline.process)
        pipeline.finish()

    stats = pipeline.stats
    if stats_path is not None:
        with open_output(stats_path) as handle:
            json.dump(stats.to_dict(), handle, indent=2)
            handle.write("\n")
    return stats


def run_evaluate(
    summary_paths: Sequence[str],
    reference_paths: Sequence[str],
    tweets_paths: Sequence[str] | None = None,
    *,
    tolerance: int = 1,
    report_path: str | None = None,
    label: str = "summary",
) -> tuple[list[GameEvaluation], AggregateReport, str]:
    """Evaluate one or more games and build the metrics table.

    Args:
        summary_paths: Summary JSONL per game
        reference_paths: Reference CSV per game, in the same order
        tweets_paths: Tweet JSONL per game, for compression
        tolerance: Largest accepted minute difference
        report_path: Where to write per-game reports as JSON
        label: Row label of the table

    Returns:
        Per-game evaluations, their macro average and the rendered tables
    """
    evaluations = [
        evaluate_files(
            summary,
            reference,
            tweets_paths[i] if tweets_paths else None,
            tolerance,
        )
        for i, (summary, reference) in enumerate(zip(summary_paths, reference_paths, strict=True))
    ]
    overall = summarize_evaluations(evaluations)

    if report_path is not None:
        with open_output(report_path) as handle:
            write_report(evaluations, handle)

    table = format_metrics_table([(label, overall)])
    if len(evaluations) == 1:
        table += "\n" + format_recall_table(evaluations[0].per_language_recall)
    return evaluations, overall, table


def run_generate(spec: SynthSpec, tweets_path: str, reference_path: str) -> tuple[int, int]:
    """Generate a synthetic game and write its tweets and reference.

    Returns:
        Number of tweets and of annotations written
    """
    game = generate(spec)
    tweets_text, reference_text = render(game)
    for path, text in ((tweets_path, tweets_text), (reference_path, reference_text)):
        with open_output(path) as handle:
            handle.write(text)
    logger.info(
        cli_msg.MSG_GENERATED.format(
            tweets=len(game.tweets),
            tweets_path=tweets_path,
            annotations=len(game.reference),
            reference_path=reference_path,
        )
    )
    return len(game.tweets), len(game.reference)


async def run_histogram(
    config: PipelineConfig, *, strict_order: bool | None = None
) -> list[TimelineRow]:
    """Write the per-minute tweeting rate of a stream as CSV.

    The stream goes through the same ordering checks as ``summarize``.
    """
    tweets: list[Tweet] = []
    await replay(_source(config, strict_order, None), tweets.append)
    rows = rate_timeline(config.detector, config.schedule, tweets)

    with open_output(config.output_path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["minute", "minute_start", "count", "fired"])
        for row in rows:
            writer.writerow([row.minute, row.minute_start, row.count, int(row.fired)])
    return rows

