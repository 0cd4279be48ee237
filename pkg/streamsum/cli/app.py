"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O or data error.
"""

import argparse
import asyncio
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from streamsum.cli import commands
from streamsum.config.logging_config import get_logger, setup_logging
from streamsum.config.pipeline import PipelineConfig, RunMode
from streamsum.config.settings import parse_languages, settings
from streamsum.core.constants import (
    DEFAULT_INCREASE_FACTOR,
    DEFAULT_INCREASE_PERIODS,
    DEFAULT_MATCH_TOLERANCE,
    DEFAULT_OUTLIER_PERIOD,
    DEFAULT_OUTLIER_QUANTILE,
)
from streamsum.core.detectors import DetectorConfig
from streamsum.core.exceptions import StreamsumError
from streamsum.core.models import DetectorMethod, EventSchedule, SelectorMethod
from streamsum.core.weighting import TermWeighting
from streamsum.messages import cli as cli_msg
from streamsum.services.synth_service import DEFAULT_START_TIME, make_spec
from streamsum.utils.validators import (
    parse_minutes,
    parse_non_negative_int,
    parse_periods,
    parse_positive_float,
    parse_start_time,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

SELECTOR_BOTH = "both"


class UsageError(Exception):
    """Invalid command-line usage."""


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors instead of exiting with 2."""

    def error(self, message: str):
        raise UsageError(message)


def _add_schedule_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--start-time",
        type=parse_start_time,
        required=True,
        help="scheduled start (epoch seconds or ISO-8601)",
    )
    parser.add_argument(
        "--end-time",
        type=parse_start_time,
        default=None,
        help="explicit end (default: until the stream is exhausted)",
    )
    parser.add_argument(
        "--warmup",
        type=int,
        default=settings.warmup_seconds,
        help="seconds observed before the start (default: %(default)s)",
    )
    parser.add_argument("--event-id", default="event", help="event identifier")


def _add_detector_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--detector",
        choices=[m.value for m in DetectorMethod],
        default=DetectorMethod.OUTLIERS.value,
        help="sub-event detector (default: %(default)s)",
    )
    parser.add_argument(
        "--increase-factor",
        type=float,
        default=DEFAULT_INCREASE_FACTOR,
        help="minimum frame-over-frame growth (default: %(default)s)",
    )
    parser.add_argument(
        "--periods",
        type=parse_periods,
        default=DEFAULT_INCREASE_PERIODS,
        help="increase detector frame lengths in seconds (default: 10,20,30,60)",
    )
    parser.add_argument(
        "--bin",
        type=int,
        default=DEFAULT_OUTLIER_PERIOD,
        help="outlier detector frame length in seconds (default: %(default)s)",
    )
    parser.add_argument(
        "--quantile",
        type=float,
        default=DEFAULT_OUTLIER_QUANTILE,
        help="share of earlier rates a frame must exceed (default: %(default)s)",
    )


def _add_order_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--strict-order",
        action="store_true",
        default=None,
        help="reject out-of-order records instead of reordering within 5 seconds",
    )


def build_parser() -> argparse.ArgumentParser:
    """Build the streamsum argument parser."""
    parser = _ArgumentParser(prog="streamsum", description=cli_msg.DESC_MAIN)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=_ArgumentParser
    )

    summarize = subparsers.add_parser("summarize", help=cli_msg.DESC_SUMMARIZE)
    summarize.add_argument("input", nargs="?", default="-", help="tweet JSONL ('-' for stdin)")
    summarize.add_argument("-o", "--output", default="-", help="summary JSONL ('-' for stdout)")
    _add_schedule_arguments(summarize)
    _add_detector_arguments(summarize)
    summarize.add_argument(
        "--selector",
        choices=[m.value for m in SelectorMethod] + [SELECTOR_BOTH],
        default=SelectorMethod.KLD.value,
        help="term weighting; 'both' writes TF and KLD entries (default: %(default)s)",
    )
    summarize.add_argument(
        "--kld-clamp", action="store_true", help="clamp negative KLD term weights to 0"
    )
    summarize.add_argument(
        "--kld-epsilon",
        type=float,
        default=settings.kld_epsilon,
        help="smoothing floor for game-so-far frequencies (default: %(default)s)",
    )
    summarize.add_argument(
        "--min-token-len",
        type=int,
        default=settings.min_token_len,
        help="shortest token kept (default: %(default)s)",
    )
    summarize.add_argument(
        "--langs",
        type=parse_languages,
        default=settings.language_list,
        help="comma-separated languages (default: %(default)s)",
    )
    _add_order_argument(summarize)
    summarize.add_argument(
        "--realtime",
        type=parse_positive_float,
        default=None,
        metavar="FACTOR",
        help="pace the replay at FACTOR times real time",
    )
    summarize.add_argument("--stats", default=None, help="write run statistics JSON here")

    evaluate = subparsers.add_parser("evaluate", help=cli_msg.DESC_EVALUATE)
    evaluate.add_argument("--summary", action="append", required=True, help="summary JSONL")
    evaluate.add_argument("--reference", action="append", required=True, help="reference CSV")
    evaluate.add_argument(
        "--tweets", action="append", default=None, help="tweet JSONL, for compression"
    )
    evaluate.add_argument(
        "--tolerance",
        type=parse_non_negative_int,
        default=DEFAULT_MATCH_TOLERANCE,
        help="accepted minute difference (default: %(default)s)",
    )
    evaluate.add_argument("-o", "--output", default=None, help="write per-game report JSON here")
    evaluate.add_argument("--label", default="summary", help="row label of the table")

    generate = subparsers.add_parser("generate", help=cli_msg.DESC_GENERATE)
    generate.add_argument("--seed", type=int, default=1)
    generate.add_argument("--duration", type=int, default=90, help="game minutes")
    generate.add_argument("--base-rate", type=float, default=30.0, help="tweets per minute")
    generate.add_argument(
        "--bursts", type=parse_minutes, default=[10, 40, 70], help="planted minutes"
    )
    generate.add_argument("--burst-multiplier", type=float, default=6.0)
    generate.add_argument("--start-time", type=parse_start_time, default=DEFAULT_START_TIME)
    generate.add_argument("--warmup-minutes", type=int, default=15)
    generate.add_argument("-o", "--output", required=True, help="tweet JSONL to write")
    generate.add_argument("--reference-output", required=True, help="reference CSV to write")

    histogram = subparsers.add_parser("histogram", help=cli_msg.DESC_HISTOGRAM)
    histogram.add_argument("input", nargs="?", default="-", help="tweet JSONL ('-' for stdin)")
    histogram.add_argument("-o", "--output", default="-", help="CSV ('-' for stdout)")
    _add_schedule_arguments(histogram)
    _add_detector_arguments(histogram)
    _add_order_argument(histogram)

    return parser


def build_pipeline_config(args: argparse.Namespace, mode: RunMode) -> PipelineConfig:
    """Turn parsed arguments into a validated pipeline configuration.

    Raises:
        ValidationError: If a value violates the configuration model
    """
    schedule = EventSchedule(
        event_id=args.event_id,
        start_time=args.start_time,
        warmup_seconds=args.warmup,
        end_time=args.end_time,
    )
    detector = DetectorConfig(
        method=DetectorMethod(args.detector),
        increase_factor=args.increase_factor,
        increase_periods=args.periods,
        outlier_period=args.bin,
        outlier_quantile=args.quantile,
        warmup_seconds=args.warmup,
    )

    selector_name = getattr(args, "selector", SelectorMethod.KLD.value)
    compare = selector_name == SELECTOR_BOTH
    selector = TermWeighting(
        method=SelectorMethod.KLD if compare else SelectorMethod(selector_name),
        smoothing_epsilon=getattr(args, "kld_epsilon", settings.kld_epsilon),
        clamp_negative=getattr(args, "kld_clamp", False),
    )
    return PipelineConfig(
        schedule=schedule,
        detector=detector,
        selector=selector,
        compare_selectors=compare,
        languages=tuple(getattr(args, "langs", settings.language_list)),
        min_token_len=getattr(args, "min_token_len", settings.min_token_len),
        input_path=args.input,
        output_path=args.output,
        mode=mode,
    )


async def dispatch(args: argparse.Namespace) -> int:
    """Run the selected subcommand.

    Returns:
        Exit code
    """
    mode = RunMode(args.command)
    try:
        if mode is RunMode.GENERATE:
            spec = make_spec(
                args.seed,
                args.bursts,
                base_rate=args.base_rate,
                duration_minutes=args.duration,
                burst_multiplier=args.burst_multiplier,
                start_time=args.start_time,
                warmup_minutes=args.warmup_minutes,
            )
        elif mode is not RunMode.EVALUATE:
            config = build_pipeline_config(args, mode)
    except ValidationError as e:
        print(cli_msg.MSG_INVALID_CONFIG.format(error=e), file=sys.stderr)
        return EXIT_USAGE

    if mode is RunMode.EVALUATE:
        unpaired = None
        if len(args.summary) != len(args.reference):
            unpaired = cli_msg.MSG_UNPAIRED_INPUTS
        elif args.tweets is not None and len(args.tweets) != len(args.summary):
            unpaired = cli_msg.MSG_UNPAIRED_TWEETS
        if unpaired is not None:
            print(cli_msg.MSG_USAGE_ERROR.format(error=unpaired), file=sys.stderr)
            return EXIT_USAGE

    try:
        if mode is RunMode.SUMMARIZE:
            stats = await commands.run_summarize(
                config,
                strict_order=args.strict_order,
                realtime_factor=args.realtime,
                stats_path=args.stats,
            )
            print(cli_msg.MSG_RUN_FINISHED.format(**stats.to_dict()), file=sys.stderr)
        elif mode is RunMode.EVALUATE:
            _, _, table = commands.run_evaluate(
                args.summary,
                args.reference,
                args.tweets,
                tolerance=args.tolerance,
                report_path=args.output,
                label=args.label,
            )
            sys.stdout.write(table)
        elif mode is RunMode.GENERATE:
            commands.run_generate(spec, args.output, args.reference_output)
        else:
            await commands.run_histogram(config, strict_order=args.strict_order)
    except (StreamsumError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(cli_msg.get_error_message(e), file=sys.stderr)
        return EXIT_DATA

    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and run; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(cli_msg.MSG_USAGE_ERROR.format(error=e), file=sys.stderr)
        return EXIT_USAGE

    setup_logging(verbose=args.verbose)
    try:
        return asyncio.run(dispatch(args))
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
