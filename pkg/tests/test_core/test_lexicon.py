"""Tests for tokenization and term distributions."""

import random
from collections import Counter

import pytest

from streamsum.core.lexicon import Scope, TermDistribution, freq, merge, tokenize, update


def _dist(counts: dict[str, int] | None = None) -> TermDistribution:
    counts = counts or {}
    return TermDistribution(Scope.MINUTE, "es", Counter(counts), sum(counts.values()))


class TestTokenize:
    """Tests for tokenize function."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("RT @user: Gol de Perez! #ca2011", ["gol", "de", "perez", "ca2011"]),
            ("http://t.co/x GOAL!!", ["goal"]),
            ("Gooooooooooooooooal Argentina !", ["gooooooooooooooooal", "argentina"]),
            ("www.example.com/live vamos", ["vamos"]),
            ("é a gol", ["gol"]),
            ("Golazo de Forlán", ["golazo", "de", "forlán"]),
        ],
    )
    def test_rules(self, text: str, expected: list[str]):
        """Test URL, mention, retweet, hashtag and length rules."""
        assert tokenize(text) == expected

    def test_min_token_len(self):
        """Test a stricter length threshold."""
        assert tokenize("gol de perez", min_token_len=3) == ["gol", "perez"]

    def test_rt_inside_word_kept(self):
        """Test that only the standalone marker is removed."""
        assert tokenize("rtve transmite") == ["rtve", "transmite"]

    def test_idempotent_through_join(self):
        """Test that re-tokenizing the joined output gives the same tokens."""
        texts = [
            "RT @user: Gol de Perez! #ca2011",
            "Que golazo!!! http://t.co/abc #CopaAmerica",
            "Brasil 0 x 0 Paraguai... pênaltis",
        ]
        for text in texts:
            tokens = tokenize(text)
            assert tokenize(" ".join(tokens)) == tokens


class TestUpdate:
    """Tests for update function."""

    def test_counts_multiplicity(self):
        """Test that repeated tokens are counted each time."""
        dist = update(_dist(), ["gol", "gol", "de"])

        assert dist.counts == Counter({"gol": 2, "de": 1})
        assert dist.total == 3

    def test_empty_tokens(self):
        """Test that no tokens leaves the distribution unchanged."""
        dist = update(_dist({"gol": 2}), [])

        assert dist.counts == Counter({"gol": 2})
        assert dist.total == 2

    def test_split_updates_equal_combined(self):
        """Test that two partial updates equal one combined update."""
        rng = random.Random(11)
        vocabulary = ["gol", "de", "messi", "penal", "roja", "vamos"]
        for _ in range(100):
            tokens = [rng.choice(vocabulary) for _ in range(rng.randint(0, 30))]
            cut = rng.randint(0, len(tokens))

            split = update(update(_dist(), tokens[:cut]), tokens[cut:])
            combined = update(_dist(), tokens)

            assert split.counts == combined.counts
            assert split.total == combined.total == len(tokens)


class TestMerge:
    """Tests for merge function."""

    def test_merge_adds_counts(self):
        """Test that merging sums counts and totals."""
        into = _dist({"gol": 2, "de": 1})
        merge(into, _dist({"gol": 1, "penal": 4}))

        assert into.counts == Counter({"gol": 3, "de": 1, "penal": 4})
        assert into.total == 8


class TestFreq:
    """Tests for freq function."""

    def test_relative_frequency(self):
        """Test frequency of present and absent terms."""
        dist = _dist({"gol": 2, "de": 1})

        assert freq(dist, "gol") == pytest.approx(2 / 3)
        assert freq(dist, "messi") == 0.0

    def test_empty_distribution(self):
        """Test that an empty distribution has zero frequency everywhere."""
        assert freq(_dist(), "gol") == 0.0

    def test_normalized(self):
        """Test that frequencies of a non-empty distribution sum to 1."""
        dist = _dist({"gol": 7, "de": 3, "penal": 5, "roja": 1})
        assert sum(freq(dist, t) for t in dist.counts) == pytest.approx(1.0)
