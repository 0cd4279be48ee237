"""User-facing text."""

from streamsum.messages.cli import *  # noqa: F401, F403
