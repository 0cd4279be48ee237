"""Real-time summarization of scheduled events from message streams."""

__version__ = "0.1.0"
