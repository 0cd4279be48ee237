"""Tokenization and incremental term statistics per language.

A minute distribution (H) holds the terms of one minute; a game-so-far
distribution (G) holds every earlier minute of the same language.
"""

import re
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum

from streamsum.core.constants import DEFAULT_MIN_TOKEN_LEN

URL_PATTERN = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
MENTION_PATTERN = re.compile(r"@\w+")
# Hashtag markers are dropped so the tag body is tokenized as a plain word
HASHTAG_MARK_PATTERN = re.compile(r"#(?=\w)")
WORD_PATTERN = re.compile(r"\w+")

RETWEET_MARKER = "rt"


class Scope(str, Enum):
    """What a term distribution covers."""

    MINUTE = "minute"
    GAME_SO_FAR = "game_so_far"


@dataclass
class TermDistribution:
    """Term counts for one scope and language."""

    scope: Scope
    lang: str
    counts: Counter[str] = field(default_factory=Counter)
    total: int = 0

    def __len__(self) -> int:
        return len(self.counts)


def tokenize(text: str, min_token_len: int = DEFAULT_MIN_TOKEN_LEN) -> list[str]:
    """Split a message into lowercase word terms.

    URLs, @-mentions and the retweet marker are removed, hashtags keep their
    body without '#', and tokens shorter than ``min_token_len`` are dropped.
    No stemming, stopword removal or spelling normalization is applied.

    Args:
        text: Message text
        min_token_len: Shortest token kept

    Returns:
        Terms in order of appearance
    """
    cleaned = URL_PATTERN.sub(" ", text)
    cleaned = MENTION_PATTERN.sub(" ", cleaned)
    cleaned = HASHTAG_MARK_PATTERN.sub("", cleaned)

    tokens = []
    for word in WORD_PATTERN.findall(cleaned.lower()):
        if word == RETWEET_MARKER or len(word) < min_token_len:
            continue
        tokens.append(word)
    return tokens


def update(dist: TermDistribution, tokens: Iterable[str]) -> TermDistribution:
    """Add tokens to a distribution in place.

    Args:
        dist: Distribution to update
        tokens: Terms, counted with multiplicity

    Returns:
        The updated distribution
    """
    added = Counter(tokens)
    dist.counts.update(added)
    dist.total += sum(added.values())
    return dist


def merge(into: TermDistribution, other: TermDistribution) -> TermDistribution:
    """Fold all counts of ``other`` into ``into`` in place."""
    into.counts.update(other.counts)
    into.total += other.total
    return into


def freq(dist: TermDistribution, term: str) -> float:
    """Relative frequency of a term; 0 for absent terms or empty distributions."""
    if dist.total == 0:
        return 0.0
    return dist.counts.get(term, 0) / dist.total
