"""Formatting utilities for reports and tables."""

from collections.abc import Mapping, Sequence

from streamsum.core.matching import AggregateReport
from streamsum.core.models import AnnotationKind


def format_percentage(value: float, decimals: int = 3) -> str:
    """Format a fraction as a percentage string."""
    return f"{value * 100:.{decimals}f}%"


def format_metrics_table(rows: Sequence[tuple[str, AggregateReport]]) -> str:
    """Render detection metrics as a plain-text table.

    Columns are precision, recall, F1, average sub-events per game and
    compression.

    Args:
        rows: (label, aggregate) pairs

    Returns:
        Table text ending with a newline
    """
    label_width = max([len("system"), *(len(label) for label, _ in rows)])
    header = (
        f"{'system':<{label_width}} | {'P':>5} | {'R':>5} | {'F1':>5} | {'#':>6} | compression"
    )
    lines = [header, "-" * len(header)]
    for label, report in rows:
        compression = (
            format_percentage(report.compression) if report.compression is not None else "n/a"
        )
        lines.append(
            f"{label:<{label_width}} | {report.precision:5.2f} | {report.recall:5.2f} | "
            f"{report.f1:5.2f} | {report.detected_count:6.1f} | {compression}"
        )
    return "\n".join(lines) + "\n"


def format_recall_table(recall: Mapping[str, Mapping[AnnotationKind, float]]) -> str:
    """Render per-kind recall with one column per language.

    Kinds absent from every language are left out; a missing cell is '-'.
    """
    langs = list(recall)
    kinds = [k for k in AnnotationKind if any(k in recall[lang] for lang in langs)]
    if not langs or not kinds:
        return ""

    kind_width = max(len(k.value) for k in kinds)
    lines = [f"{'kind':<{kind_width}} | " + " | ".join(f"{lang:>5}" for lang in langs)]
    lines.append("-" * len(lines[0]))
    for kind in kinds:
        cells = []
        for lang in langs:
            value = recall[lang].get(kind)
            cells.append(f"{value:5.2f}" if value is not None else f"{'-':>5}")
        lines.append(f"{kind.value:<{kind_width}} | " + " | ".join(cells))
    return "\n".join(lines) + "\n"
