"""Two-step real-time summarization: detect a sub-event, then pick its tweets.

The pipeline consumes tweets one by one. When a minute closes it is judged
by the detector; a fired minute is summarized per language from the
minute's own terms (H) and the terms of every earlier minute (G). Only then
are the minute's terms folded into G.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from streamsum.config.logging_config import get_logger
from streamsum.config.pipeline import PipelineConfig
from streamsum.core.lexicon import Scope, TermDistribution, merge, tokenize, update
from streamsum.core.models import SummaryEntry, Tweet
from streamsum.core.weighting import select_representative
from streamsum.services.detection_service import ClosedMinute, SubEventStream

logger = get_logger(__name__)

EntryCallback = Callable[[SummaryEntry], None]


@dataclass
class RunStats:
    """Counters of one summarization run."""

    tweets: int = 0
    skipped: int = 0
    minutes: int = 0
    sub_events: int = 0
    entries: int = 0
    selected_ids: set[str] = field(default_factory=set)

    @property
    def compression(self) -> float:
        """Selected tweets divided by all tweets seen."""
        if self.tweets == 0:
            return 0.0
        return len(self.selected_ids) / self.tweets

    def to_dict(self) -> dict:
        """Plain form for JSON reports."""
        return {
            "tweets": self.tweets,
            "skipped": self.skipped,
            "minutes": self.minutes,
            "sub_events": self.sub_events,
            "entries": self.entries,
            "selected_tweets": len(self.selected_ids),
            "compression": self.compression,
        }


class SummarizationPipeline:
    """Incremental summarizer for one event stream."""

    def __init__(self, config: PipelineConfig, on_entry: EntryCallback | None = None):
        """Initialize pipeline state.

        Args:
            config: Pipeline configuration
            on_entry: Called with each summary entry as soon as it is selected
        """
        self.config = config
        self.on_entry = on_entry
        self.stream = SubEventStream(config.detector, config.schedule)
        self.stats = RunStats()
        self._game: dict[str, TermDistribution] = {
            lang: TermDistribution(Scope.GAME_SO_FAR, lang) for lang in config.languages
        }

    def game_so_far(self, lang: str) -> TermDistribution:
        """Game-so-far distribution of a language (live object, do not modify)."""
        return self._game[lang]

    def process(self, tweet: Tweet) -> list[SummaryEntry]:
        """Consume one tweet; returns the entries of the minutes it closed."""
        self.stats.tweets += 1
        closed = self.stream.push(tweet)
        self.stats.skipped = self.stream.skipped
        return self._summarize(closed)

    def finish(self) -> list[SummaryEntry]:
        """Close the stream; returns the entries of the last minutes."""
        entries = self._summarize(self.stream.finish())
        logger.info(
            f"Summarized {self.stats.tweets} tweets: {self.stats.sub_events} sub-events, "
            f"{self.stats.entries} entries, compression {self.stats.compression:.5f}"
        )
        return entries

    def run(self, tweets: Iterable[Tweet]) -> list[SummaryEntry]:
        """Summarize a whole timestamp-ordered stream."""
        entries: list[SummaryEntry] = []
        for tweet in tweets:
            entries.extend(self.process(tweet))
        entries.extend(self.finish())
        return entries

    def _summarize(self, closed: list[ClosedMinute]) -> list[SummaryEntry]:
        entries: list[SummaryEntry] = []
        for minute in closed:
            self.stats.minutes += 1
            tokens: dict[str, list[str]] = {}
            minute_dists: dict[str, TermDistribution] = {}
            for tweet in minute.tweets:
                if tweet.lang not in self._game:
                    continue
                tokens[tweet.id] = tokenize(tweet.text, self.config.min_token_len)
                dist = minute_dists.setdefault(
                    tweet.lang, TermDistribution(Scope.MINUTE, tweet.lang)
                )
                update(dist, tokens[tweet.id])

            if minute.sub_event is not None:
                self.stats.sub_events += 1
                entries.extend(self._select(minute, minute_dists, tokens))

            for lang, dist in minute_dists.items():
                merge(self._game[lang], dist)
        return entries

    def _select(
        self,
        minute: ClosedMinute,
        minute_dists: dict[str, TermDistribution],
        tokens: dict[str, list[str]],
    ) -> list[SummaryEntry]:
        assert minute.sub_event is not None
        entries = []
        for weighting in self.config.weightings:
            for lang in self.config.languages:
                if lang not in minute_dists:
                    continue
                entry = select_representative(
                    minute.sub_event,
                    lang,
                    weighting,
                    minute_dists[lang],
                    self._game[lang],
                    minute.tweets,
                    tokens=tokens,
                    min_token_len=self.config.min_token_len,
                )
                if entry is None:
                    continue
                entries.append(entry)
                self.stats.entries += 1
                self.stats.selected_ids.add(entry.tweet_id)
                if self.on_entry is not None:
                    self.on_entry(entry)
        return entries


def summarize(config: PipelineConfig, tweets: Iterable[Tweet]) -> list[SummaryEntry]:
    """Summarize a timestamp-ordered stream in one call."""
    return SummarizationPipeline(config).run(tweets)
