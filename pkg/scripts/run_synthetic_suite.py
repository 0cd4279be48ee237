"""Script to compare both detectors on seeded synthetic games."""

import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from streamsum.config.logging_config import get_logger, setup_logging
from streamsum.config.pipeline import PipelineConfig
from streamsum.core.detectors import DetectorConfig
from streamsum.core.matching import MatchReport, aggregate, per_language_recall
from streamsum.core.models import DetectorMethod, SummaryRecord
from streamsum.services.evaluation_service import evaluate_game
from streamsum.services.summarization_service import SummarizationPipeline
from streamsum.services.synth_service import generate, make_spec
from streamsum.utils.formatters import format_metrics_table, format_recall_table
from streamsum.utils.validators import parse_minutes

logger = get_logger(__name__)


def run_suite(games: int, base_rate: float, bursts: list[int], multiplier: float) -> str:
    """Summarize every game with each detector and tabulate the results."""
    reports: dict[DetectorMethod, list[MatchReport]] = {m: [] for m in DetectorMethod}
    outlier_records: list[SummaryRecord] = []
    reference = []

    for seed in range(games):
        game = generate(make_spec(seed, bursts, base_rate=base_rate, burst_multiplier=multiplier))
        for method in DetectorMethod:
            config = PipelineConfig(
                schedule=game.schedule,
                detector=DetectorConfig(method=method),
            )
            pipeline = SummarizationPipeline(config)
            records = [entry.to_record() for entry in pipeline.run(game.tweets)]
            reports[method].append(evaluate_game(records, game.reference, pipeline.stats.tweets))
            # Only the first game feeds the per-language table
            if method is DetectorMethod.OUTLIERS and seed == 0:
                outlier_records = records
                reference = game.reference
        logger.info(f"Game {seed + 1}/{games} done")

    rows = [(f"{method.value}+kld", aggregate(reports[method])) for method in DetectorMethod]
    table = format_metrics_table(rows)
    recall = format_recall_table(per_language_recall(outlier_records, reference))
    return table + "\n" + recall


def main():
    """Parse arguments, run the suite and print the tables."""
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--games", type=int, default=50)
    parser.add_argument("--base-rate", type=float, default=30.0)
    parser.add_argument("--bursts", type=parse_minutes, default=[10, 40, 70])
    parser.add_argument("--burst-multiplier", type=float, default=6.0)
    args = parser.parse_args()

    setup_logging()
    logger.info(f"Running {args.games} synthetic games...")
    print(run_suite(args.games, args.base_rate, args.bursts, args.burst_multiplier))


if __name__ == "__main__":
    main()
