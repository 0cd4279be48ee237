"""Tests for summary evaluation."""

import json

import pytest

from streamsum.core.detectors import DetectorConfig
from streamsum.core.exceptions import EvaluationError
from streamsum.core.matching import match
from streamsum.core.models import AnnotationKind, DetectorMethod
from streamsum.services.detection_service import emit_subevents
from streamsum.services.evaluation_service import (
    evaluate_files,
    evaluate_game,
    read_summary,
    summarize_evaluations,
    write_report,
    write_summary_record,
)
from streamsum.services.ingestion_service import write_reference, write_tweets
from streamsum.services.synth_service import generate, make_spec
from tests.factories import annotations, summary_record

REFERENCE = annotations(
    (4, "goal"),
    (13, "red_card"),
    (29, "goal"),
    (46, "stop_or_resumption"),
    (90, "game_end"),
)


def _write_summary(path, records) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            write_summary_record(record, handle)


class TestEvaluateGame:
    """Tests for evaluate_game function."""

    def test_hand_computed(self):
        """Test metrics on a five-annotation game."""
        records = [summary_record(m) for m in (5, 12, 20, 47, 60, 61)]
        records.append(summary_record(5, "pt"))

        report = evaluate_game(records, REFERENCE)

        assert report.detected_count == 6
        assert len(report.matched_pairs) == 3
        assert report.precision == pytest.approx(0.5, abs=1e-9)
        assert report.recall == pytest.approx(0.6, abs=1e-9)
        assert report.f1 == pytest.approx(6 / 11, abs=1e-9)
        assert report.per_kind_recall == {
            AnnotationKind.GOAL: 0.5,
            AnnotationKind.RED_CARD: 1.0,
            AnnotationKind.STOP_OR_RESUMPTION: 1.0,
            AnnotationKind.GAME_END: 0.0,
        }

    def test_perfect_summary(self):
        """Test a summary hitting every annotation exactly."""
        records = [summary_record(a.minute) for a in REFERENCE]
        report = evaluate_game(records, REFERENCE)

        assert report.precision == report.recall == report.f1 == 1.0

    def test_spurious_minute(self):
        """Test that an extra minute lowers precision only."""
        records = [summary_record(a.minute) for a in REFERENCE] + [summary_record(70)]
        report = evaluate_game(records, REFERENCE)

        assert report.precision < 1.0
        assert report.recall == 1.0

    def test_compression(self):
        """Test compression over distinct selected tweets."""
        records = [
            summary_record(4, "es", "t1"),
            summary_record(4, "en", "t2"),
            summary_record(4, "es", "t1"),
        ]
        report = evaluate_game(records, REFERENCE, total_tweets=1000)

        assert report.compression == pytest.approx(0.002)

    def test_compression_unknown(self):
        """Test that compression is absent without a tweet count."""
        assert evaluate_game([summary_record(4)], REFERENCE).compression is None


class TestEvaluationFiles:
    """Tests for file-based evaluation."""

    def test_evaluate_files(self, tmp_path, make_tweet):
        """Test evaluation from summary, reference and tweet files."""
        summary_path = tmp_path / "summary.jsonl"
        reference_path = tmp_path / "reference.csv"
        tweets_path = tmp_path / "tweets.jsonl"
        _write_summary(summary_path, [summary_record(4, "es", "t1"), summary_record(13, "pt")])
        with open(reference_path, "w", encoding="utf-8", newline="") as handle:
            write_reference(REFERENCE, handle)
        with open(tweets_path, "w", encoding="utf-8") as handle:
            write_tweets([make_tweet(i) for i in range(20)], handle)

        evaluation = evaluate_files(summary_path, reference_path, tweets_path)

        assert evaluation.report.recall == pytest.approx(0.4)
        assert evaluation.report.compression == pytest.approx(0.1)
        assert evaluation.per_language_recall["es"][AnnotationKind.GOAL] == 0.5
        assert evaluation.per_language_recall["pt"][AnnotationKind.RED_CARD] == 1.0

    def test_invalid_summary_line(self, tmp_path):
        """Test that a corrupt summary is reported with its line."""
        path = tmp_path / "summary.jsonl"
        path.write_text('{"minute": 3}\n', encoding="utf-8")

        with pytest.raises(EvaluationError) as exc_info:
            read_summary(path)
        assert "line 1" in str(exc_info.value)

    def test_invalid_utf8_summary(self, tmp_path):
        """Test that undecodable summary bytes are an evaluation error."""
        path = tmp_path / "summary.jsonl"
        path.write_bytes(summary_record(4).model_dump_json().encode() + b"\n\xff\xfe\n")

        with pytest.raises(EvaluationError) as exc_info:
            read_summary(path)
        assert "line 2" in str(exc_info.value)

    def test_summary_round_trip(self, tmp_path):
        """Test that written summary records read back equal."""
        records = [summary_record(4), summary_record(13, "en")]
        path = tmp_path / "summary.jsonl"
        _write_summary(path, records)

        assert read_summary(path) == records

    def test_report_json(self, tmp_path):
        """Test the per-game JSON report."""
        summary_path = tmp_path / "summary.jsonl"
        reference_path = tmp_path / "reference.csv"
        _write_summary(summary_path, [summary_record(4)])
        with open(reference_path, "w", encoding="utf-8", newline="") as handle:
            write_reference(REFERENCE, handle)
        evaluations = [evaluate_files(summary_path, reference_path)]
        report_path = tmp_path / "report.json"

        with open(report_path, "w", encoding="utf-8") as handle:
            write_report(evaluations, handle)

        payload = json.loads(report_path.read_text(encoding="utf-8"))
        assert payload[0]["report"]["precision"] == 1.0
        assert payload[0]["report"]["per_kind_recall"]["goal"] == 0.5
        assert summarize_evaluations(evaluations).games == 1


class TestDetectorComparison:
    """Detection quality of both detectors on seeded synthetic games."""

    GAMES = 50

    @pytest.fixture(scope="class")
    def reports(self):
        """Match reports of both detectors on the same games."""
        results = {DetectorMethod.OUTLIERS: [], DetectorMethod.INCREASE: []}
        for seed in range(self.GAMES):
            game = generate(make_spec(seed, [10, 40, 70], base_rate=30.0, burst_multiplier=6.0))
            for method, reports in results.items():
                config = DetectorConfig(method=method)
                minutes = [s.minute for s in emit_subevents(config, game.schedule, game.tweets)]
                reports.append(match(minutes, game.reference))
        return results

    def test_outliers_recall(self, reports):
        """Test that outliers finds at least 90% of planted bursts."""
        matched = sum(len(r.matched_pairs) for r in reports[DetectorMethod.OUTLIERS])
        planted = sum(
            len(r.matched_pairs) + len(r.unmatched_reference)
            for r in reports[DetectorMethod.OUTLIERS]
        )

        assert matched / planted >= 0.9

    def test_increase_detects_more(self, reports):
        """Test that increase emits more sub-events per game on average."""
        increase = sum(r.detected_count for r in reports[DetectorMethod.INCREASE])
        outliers = sum(r.detected_count for r in reports[DetectorMethod.OUTLIERS])

        assert increase > outliers

    def test_outliers_f1_not_worse(self, reports):
        """Test that outliers matches or beats increase on F1 in almost every game."""
        wins = sum(
            o.f1 >= i.f1
            for o, i in zip(
                reports[DetectorMethod.OUTLIERS], reports[DetectorMethod.INCREASE], strict=True
            )
        )

        assert wins >= 45
