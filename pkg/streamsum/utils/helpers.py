"""Helper utilities."""

import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TextIO

STDOUT_PATH = "-"


@contextmanager
def open_output(path: str | Path | None) -> Iterator[TextIO]:
    """Open a UTF-8 output file, or stdout for "-" / None.

    Stdout is flushed but never closed.

    Args:
        path: Output path

    Yields:
        Writable text handle
    """
    if path is None or str(path) == STDOUT_PATH:
        try:
            yield sys.stdout
        finally:
            sys.stdout.flush()
        return

    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        yield handle
