"""Tests for detection-to-reference matching."""

import random

import pytest

from streamsum.core.exceptions import EvaluationError
from streamsum.core.matching import MatchReport, aggregate, f1_score, match, per_language_recall
from streamsum.core.models import AnnotationKind
from tests.factories import annotations, summary_record


def _max_pairs(detected: list[int], reference: list[int], tolerance: int) -> int:
    """Largest one-to-one matching found by exhaustive search."""
    if not reference:
        return 0
    first, rest = reference[0], reference[1:]
    best = _max_pairs(detected, rest, tolerance)
    for i, minute in enumerate(detected):
        if abs(minute - first) <= tolerance:
            remaining = detected[:i] + detected[i + 1 :]
            best = max(best, 1 + _max_pairs(remaining, rest, tolerance))
    return best


def _best_pairing(detected: list[int], reference: list[int], tolerance: int) -> tuple[int, int]:
    """(size, -total gap) of the best matching found by exhaustive search."""
    if not reference:
        return 0, 0
    first, rest = reference[0], reference[1:]
    best = _best_pairing(detected, rest, tolerance)
    for i, minute in enumerate(detected):
        gap = abs(minute - first)
        if gap <= tolerance:
            size, neg_gap = _best_pairing(detected[:i] + detected[i + 1 :], rest, tolerance)
            best = max(best, (size + 1, neg_gap - gap))
    return best


class TestMatch:
    """Tests for match function."""

    def test_all_within_one_minute(self):
        """Test three detections each one minute off."""
        report = match([5, 12, 30], annotations((4, "goal"), (13, "goal"), (29, "goal")))

        assert len(report.matched_pairs) == 3
        assert report.precision == pytest.approx(1.0, abs=1e-9)
        assert report.recall == pytest.approx(1.0, abs=1e-9)
        assert report.f1 == pytest.approx(1.0, abs=1e-9)

    def test_partial_recall(self):
        """Test one detection against two annotations."""
        report = match([5], annotations((4, "goal"), (13, "red_card")))

        assert len(report.matched_pairs) == 1
        assert report.precision == pytest.approx(1.0, abs=1e-9)
        assert report.recall == pytest.approx(0.5, abs=1e-9)
        assert report.f1 == pytest.approx(2 / 3, abs=1e-9)
        assert [a.minute for a in report.unmatched_reference] == [13]

    def test_one_to_one(self):
        """Test that one annotation absorbs only one of two detections."""
        report = match([5, 6], annotations((5, "goal")))

        assert len(report.matched_pairs) == 1
        assert report.precision == pytest.approx(0.5, abs=1e-9)
        assert report.recall == pytest.approx(1.0, abs=1e-9)
        assert len(report.unmatched_detected) == 1

    def test_not_nearest_first(self):
        """Test a case where pairing nearest distances first loses a match."""
        report = match([4, 5], annotations((5, "goal"), (6, "goal")))

        assert len(report.matched_pairs) == 2
        assert report.recall == 1.0

    def test_prefers_nearest(self):
        """Test that an annotation takes the exact detection over an earlier one."""
        report = match([4, 5], annotations((5, "goal")))

        assert [p.detected for p in report.matched_pairs] == [5]
        assert report.unmatched_detected == [4]

    def test_nearest_within_maximum(self):
        """Test that pairs minimize the total gap among the largest matchings."""
        rng = random.Random(29)
        for _ in range(300):
            detected = sorted(rng.randint(0, 12) for _ in range(rng.randint(0, 6)))
            ref_minutes = sorted(rng.randint(0, 12) for _ in range(rng.randint(0, 6)))
            tolerance = rng.randint(0, 2)
            report = match(detected, annotations(*((m, "goal") for m in ref_minutes)), tolerance)

            gap = sum(abs(p.detected - p.reference.minute) for p in report.matched_pairs)
            assert (len(report.matched_pairs), -gap) == _best_pairing(
                detected, ref_minutes, tolerance
            )

    def test_outside_tolerance(self):
        """Test that two minutes apart is not a match."""
        report = match([7], annotations((5, "goal")))

        assert report.matched_pairs == []
        assert report.f1 == 0.0

    def test_empty_inputs(self):
        """Test that empty sides give zero metrics."""
        report = match([], [])

        assert report.precision == 0.0
        assert report.recall == 0.0
        assert report.detected_count == 0

    def test_negative_tolerance(self):
        """Test that a negative tolerance is rejected."""
        with pytest.raises(ValueError):
            match([1], annotations((1, "goal")), tolerance=-1)

    def test_identity_with_zero_tolerance(self):
        """Test that detections equal to the reference have full recall."""
        minutes = [3, 8, 8, 20, 21]
        reference = annotations(*((m, "goal") for m in minutes))

        assert match(minutes, reference, tolerance=0).recall == 1.0

    def test_maximum_cardinality(self):
        """Test matched pair counts against exhaustive search."""
        rng = random.Random(17)
        for _ in range(300):
            detected = sorted(rng.randint(0, 15) for _ in range(rng.randint(0, 6)))
            ref_minutes = sorted(rng.randint(0, 15) for _ in range(rng.randint(0, 6)))
            tolerance = rng.randint(0, 2)
            report = match(detected, annotations(*((m, "goal") for m in ref_minutes)), tolerance)

            assert len(report.matched_pairs) == _max_pairs(detected, ref_minutes, tolerance)
            for pair in report.matched_pairs:
                assert abs(pair.detected - pair.reference.minute) <= tolerance

    def test_tolerance_monotonic(self):
        """Test that a wider tolerance never loses matches."""
        rng = random.Random(23)
        for _ in range(200):
            detected = sorted(rng.randint(0, 30) for _ in range(rng.randint(0, 8)))
            reference = annotations(
                *sorted((rng.randint(0, 30), "goal") for _ in range(rng.randint(0, 8)))
            )
            counts = [len(match(detected, reference, t).matched_pairs) for t in range(5)]
            assert counts == sorted(counts)

    def test_accounting(self):
        """Test that matched and unmatched items cover both sides exactly."""
        detected = [1, 2, 3, 10, 30]
        reference = annotations((2, "goal"), (11, "penalty"), (50, "game_end"))
        report = match(detected, reference)

        assert len(report.matched_pairs) + len(report.unmatched_detected) == len(detected)
        assert len(report.matched_pairs) + len(report.unmatched_reference) == len(reference)

    def test_compression_passed_through(self):
        """Test that compression is reported as given."""
        report = match([1], annotations((1, "goal")), compression=0.0008)
        assert report.compression == 0.0008


class TestPerKindRecall:
    """Tests for per-kind recall."""

    def test_kinds(self):
        """Test recall per kind with an unmatched kind."""
        reference = annotations(
            *[(m, "disallowed_goal") for m in range(0, 100, 10)],
            (5, "goal"),
        )
        detected = [0, 10, 20, 30, 5]
        report = match(detected, reference, tolerance=0)

        assert report.per_kind_recall[AnnotationKind.DISALLOWED_GOAL] == pytest.approx(0.4)
        assert report.per_kind_recall[AnnotationKind.GOAL] == 1.0

    def test_absent_kind_omitted(self):
        """Test that kinds without annotations are left out."""
        report = match([4], annotations((4, "goal")))
        assert set(report.per_kind_recall) == {AnnotationKind.GOAL}

    def test_per_language(self):
        """Test coverage computed separately per summary language."""
        records = [summary_record(4, "es"), summary_record(13, "es"), summary_record(4, "pt")]
        reference = annotations((4, "goal"), (13, "red_card"))

        recall = per_language_recall(records, reference)

        assert recall["es"] == {AnnotationKind.GOAL: 1.0, AnnotationKind.RED_CARD: 1.0}
        assert recall["pt"] == {AnnotationKind.GOAL: 1.0, AnnotationKind.RED_CARD: 0.0}
        assert "en" not in recall


class TestAggregate:
    """Tests for aggregate function."""

    def test_mean_precision(self):
        """Test unweighted averaging across games."""
        reports = [
            MatchReport(precision=0.4, recall=1.0, f1=f1_score(0.4, 1.0), detected_count=10),
            MatchReport(precision=0.6, recall=0.5, f1=f1_score(0.6, 0.5), detected_count=20),
        ]

        overall = aggregate(reports)

        assert overall.games == 2
        assert overall.precision == pytest.approx(0.5)
        assert overall.recall == pytest.approx(0.75)
        assert overall.detected_count == pytest.approx(15.0)
        assert overall.compression is None

    def test_single_game_identity(self):
        """Test that one game aggregates to itself."""
        report = match([5, 12], annotations((4, "goal"), (13, "goal")), compression=0.01)
        overall = aggregate([report])

        assert overall.precision == report.precision
        assert overall.recall == report.recall
        assert overall.f1 == report.f1
        assert overall.compression == 0.01

    def test_empty(self):
        """Test that aggregating nothing is an error."""
        with pytest.raises(EvaluationError):
            aggregate([])


class TestF1Score:
    """Tests for f1_score function."""

    @pytest.mark.parametrize(
        "precision,recall,expected",
        [(0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (0.5, 1.0, 2 / 3), (0.51, 0.84, 0.6347)],
    )
    def test_values(self, precision: float, recall: float, expected: float):
        """Test the harmonic mean."""
        assert f1_score(precision, recall) == pytest.approx(expected, abs=1e-4)
