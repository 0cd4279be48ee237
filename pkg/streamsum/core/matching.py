"""Matching detected minutes against reference annotations.

A detection is correct when its minute differs from an annotation's by at
most the tolerance (one minute by default). Matching is one-to-one.
"""

import math
from collections import Counter, defaultdict, deque
from collections.abc import Iterable, Sequence
from statistics import fmean

from pydantic import BaseModel, ConfigDict, Field

from streamsum.core.constants import DEFAULT_MATCH_TOLERANCE
from streamsum.core.exceptions import EvaluationError
from streamsum.core.models import AnnotationKind, ReferenceAnnotation, SummaryRecord


class MatchedPair(BaseModel):
    """A detected minute paired with the annotation it covers."""

    model_config = ConfigDict(frozen=True)

    detected: int
    reference: ReferenceAnnotation


class MatchReport(BaseModel):
    """Detection quality of one game."""

    model_config = ConfigDict(frozen=True)

    matched_pairs: list[MatchedPair] = Field(default_factory=list)
    unmatched_detected: list[int] = Field(default_factory=list)
    unmatched_reference: list[ReferenceAnnotation] = Field(default_factory=list)
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    detected_count: int = 0
    compression: float | None = None
    per_kind_recall: dict[AnnotationKind, float] = Field(default_factory=dict)


class AggregateReport(BaseModel):
    """Macro-averaged metrics over several games."""

    model_config = ConfigDict(frozen=True)

    games: int
    precision: float
    recall: float
    f1: float
    detected_count: float
    compression: float | None = None


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall (0 when both are 0)."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def _pair_minutes(
    detected: Sequence[int],
    reference: Sequence[ReferenceAnnotation],
    tolerance: int,
) -> list[tuple[int, int]]:
    """Maximum one-to-one pairing of detection and reference indices.

    Among the pairings of maximum size, the one with the smallest total
    minute difference is returned, so a reference takes the nearest
    detection whenever that costs no other reference its match. Built by
    successive shortest augmenting paths over the detection/reference graph.
    """
    n, m = len(detected), len(reference)
    source, sink = n + m, n + m + 1
    # Edge: [target, capacity, cost, index of the reverse edge in graph[target]]
    graph: list[list[list[int]]] = [[] for _ in range(n + m + 2)]

    def add_edge(u: int, v: int, cost: int) -> None:
        graph[u].append([v, 1, cost, len(graph[v])])
        graph[v].append([u, 0, -cost, len(graph[u]) - 1])

    det_order = sorted(range(n), key=lambda i: (detected[i], i))
    ref_order = sorted(range(m), key=lambda j: (reference[j].minute, j))
    for i in det_order:
        add_edge(source, i, 0)
    for i in det_order:
        for j in ref_order:
            gap = abs(detected[i] - reference[j].minute)
            if gap <= tolerance:
                add_edge(i, n + j, gap)
    for j in ref_order:
        add_edge(n + j, sink, 0)

    while True:
        dist = [math.inf] * len(graph)
        parent = [(-1, -1)] * len(graph)
        dist[source] = 0
        queue = deque([source])
        queued = {source}
        while queue:
            u = queue.popleft()
            queued.discard(u)
            for k, (v, capacity, cost, _) in enumerate(graph[u]):
                if capacity > 0 and dist[u] + cost < dist[v]:
                    dist[v] = dist[u] + cost
                    parent[v] = (u, k)
                    if v not in queued:
                        queue.append(v)
                        queued.add(v)
        if dist[sink] == math.inf:
            break

        v = sink
        while v != source:
            u, k = parent[v]
            edge = graph[u][k]
            edge[1] -= 1
            graph[v][edge[3]][1] += 1
            v = u

    return [
        (i, target - n)
        for i in det_order
        for target, capacity, _, _ in graph[i]
        if n <= target < n + m and capacity == 0
    ]


def per_kind_recall(
    report: MatchReport,
    reference: Iterable[ReferenceAnnotation],
) -> dict[AnnotationKind, float]:
    """Recall of each annotation kind present in the reference.

    Kinds without reference instances are omitted.
    """
    totals = Counter(annotation.kind for annotation in reference)
    matched = Counter(pair.reference.kind for pair in report.matched_pairs)
    return {
        kind: matched[kind] / totals[kind] for kind in AnnotationKind if totals[kind] > 0
    }


def match(
    detected: Sequence[int],
    reference: Sequence[ReferenceAnnotation],
    tolerance: int = DEFAULT_MATCH_TOLERANCE,
    compression: float | None = None,
) -> MatchReport:
    """Match detected minutes to annotations and compute P, R and F1.

    Args:
        detected: Detected sub-event minutes
        reference: Reference annotations
        tolerance: Largest accepted minute difference
        compression: Selected tweets / total tweets, if known

    Returns:
        Match report
    """
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")

    pairs = _pair_minutes(detected, reference, tolerance)
    used_det = {i for i, _ in pairs}
    used_ref = {j for _, j in pairs}

    matched_pairs = [
        MatchedPair(detected=detected[i], reference=reference[j])
        for i, j in sorted(pairs, key=lambda p: (reference[p[1]].minute, p[1]))
    ]
    precision = len(pairs) / len(detected) if detected else 0.0
    recall = len(pairs) / len(reference) if reference else 0.0

    report = MatchReport(
        matched_pairs=matched_pairs,
        unmatched_detected=[m for i, m in enumerate(detected) if i not in used_det],
        unmatched_reference=[a for j, a in enumerate(reference) if j not in used_ref],
        precision=precision,
        recall=recall,
        f1=f1_score(precision, recall),
        detected_count=len(detected),
        compression=compression,
    )
    return report.model_copy(update={"per_kind_recall": per_kind_recall(report, reference)})


def per_language_recall(
    records: Iterable[SummaryRecord],
    reference: Sequence[ReferenceAnnotation],
    tolerance: int = DEFAULT_MATCH_TOLERANCE,
) -> dict[str, dict[AnnotationKind, float]]:
    """Per-language, per-kind coverage of the reference by a summary.

    An annotation counts as covered in language L when one of the L summary
    minutes matches it under the one-to-one protocol.

    Args:
        records: Summary records (any languages, any selectors)
        reference: Reference annotations
        tolerance: Largest accepted minute difference

    Returns:
        Mapping language -> kind -> recall
    """
    minutes_by_lang: dict[str, set[int]] = defaultdict(set)
    for record in records:
        minutes_by_lang[record.lang].add(record.minute)

    return {
        lang: match(sorted(minutes), reference, tolerance).per_kind_recall
        for lang, minutes in sorted(minutes_by_lang.items())
    }


def aggregate(reports: Sequence[MatchReport]) -> AggregateReport:
    """Macro-average per-game reports.

    Compression is averaged over the games that report it.

    Raises:
        EvaluationError: If no reports are given
    """
    if not reports:
        raise EvaluationError("cannot aggregate an empty list of reports")

    compressions = [r.compression for r in reports if r.compression is not None]
    return AggregateReport(
        games=len(reports),
        precision=fmean(r.precision for r in reports),
        recall=fmean(r.recall for r in reports),
        f1=fmean(r.f1 for r in reports),
        detected_count=fmean(r.detected_count for r in reports),
        compression=fmean(compressions) if compressions else None,
    )
