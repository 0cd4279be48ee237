"""Term weighting and representative tweet selection.

Each tweet of a sub-event minute is scored with the sum of the weights of
its tokens. Two weightings are supported:

* TF: the raw count of the term within the minute;
* KLD: H(t) * log2(H(t) / G(t)), where H is the minute distribution and G
  the game-so-far distribution up to the previous minute.
"""

import math
from collections.abc import Mapping, Sequence
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from streamsum.core.constants import DEFAULT_KLD_EPSILON, DEFAULT_MIN_TOKEN_LEN
from streamsum.core.lexicon import TermDistribution, freq, tokenize
from streamsum.core.models import SelectorMethod, SubEvent, SummaryEntry, Tweet


class TermWeighting(BaseModel):
    """How terms are weighted when scoring tweets."""

    model_config = ConfigDict(frozen=True)

    method: SelectorMethod = SelectorMethod.KLD
    smoothing_epsilon: float = Field(default=DEFAULT_KLD_EPSILON, gt=0.0, lt=1.0)
    clamp_negative: bool = False


class RankedTweet(NamedTuple):
    """A candidate tweet with its score."""

    tweet: Tweet
    score: float


def term_weight_tf(H: TermDistribution, term: str) -> float:  # noqa: N803
    """Raw number of occurrences of ``term`` within the minute."""
    return float(H.counts.get(term, 0))


def term_weight_kld(
    H: TermDistribution,  # noqa: N803
    G: TermDistribution,  # noqa: N803
    term: str,
    epsilon: float = DEFAULT_KLD_EPSILON,
) -> float:
    """Pointwise KL contribution of ``term``: h * log2(h / max(g, epsilon)).

    Negative when the term was more frequent earlier in the game than in the
    minute; 0 when the term is absent from the minute.
    """
    h = freq(H, term)
    if h == 0.0:
        return 0.0
    g = max(freq(G, term), epsilon)
    return h * math.log2(h / g)


def term_weight(
    weighting: TermWeighting,
    H: TermDistribution,  # noqa: N803
    G: TermDistribution,  # noqa: N803
    term: str,
) -> float:
    """Weight of one term under ``weighting``."""
    if weighting.method is SelectorMethod.TF:
        return term_weight_tf(H, term)
    weight = term_weight_kld(H, G, term, weighting.smoothing_epsilon)
    if weighting.clamp_negative and weight < 0.0:
        return 0.0
    return weight


def term_weights(
    weighting: TermWeighting,
    H: TermDistribution,  # noqa: N803
    G: TermDistribution,  # noqa: N803
) -> dict[str, float]:
    """Weight of every term of the minute vocabulary."""
    return {term: term_weight(weighting, H, G, term) for term in H.counts}


def score_tweet(
    tweet: Tweet,
    weighting: TermWeighting,
    H: TermDistribution,  # noqa: N803
    G: TermDistribution,  # noqa: N803
    *,
    tokens: Sequence[str] | None = None,
    weights: Mapping[str, float] | None = None,
    min_token_len: int = DEFAULT_MIN_TOKEN_LEN,
) -> float:
    """Sum the weights of every token occurrence of a tweet.

    A term appearing twice contributes twice.

    Args:
        tweet: Tweet to score
        weighting: Term weighting method
        H: Minute distribution of the tweet's language
        G: Game-so-far distribution of the tweet's language
        tokens: Pre-computed tokens of the tweet text
        weights: Pre-computed term weights for this minute
        min_token_len: Tokenizer threshold when ``tokens`` is not given

    Returns:
        Tweet score
    """
    if tokens is None:
        tokens = tokenize(tweet.text, min_token_len)

    score = 0.0
    for token in tokens:
        if weights is not None and token in weights:
            score += weights[token]
        else:
            score += term_weight(weighting, H, G, token)
    return score


def rank_tweets(
    tweets: Sequence[Tweet],
    weighting: TermWeighting,
    H: TermDistribution,  # noqa: N803
    G: TermDistribution,  # noqa: N803
    *,
    tokens: Mapping[str, Sequence[str]] | None = None,
    min_token_len: int = DEFAULT_MIN_TOKEN_LEN,
) -> list[RankedTweet]:
    """Rank tweets by score, best first.

    Ties go to the earlier timestamp, then to the smaller id.

    Args:
        tweets: Candidate tweets
        weighting: Term weighting method
        H: Minute distribution
        G: Game-so-far distribution
        tokens: Pre-computed tokens keyed by tweet id
        min_token_len: Tokenizer threshold for tweets without cached tokens

    Returns:
        Ranked tweets
    """
    weights = term_weights(weighting, H, G)
    ranked = [
        RankedTweet(
            tweet=tweet,
            score=score_tweet(
                tweet,
                weighting,
                H,
                G,
                tokens=tokens.get(tweet.id) if tokens is not None else None,
                weights=weights,
                min_token_len=min_token_len,
            ),
        )
        for tweet in tweets
    ]
    ranked.sort(key=lambda r: (-r.score, r.tweet.timestamp, r.tweet.id))
    return ranked


def select_representative(
    sub_event: SubEvent,
    lang: str,
    weighting: TermWeighting,
    H: TermDistribution,  # noqa: N803
    G: TermDistribution,  # noqa: N803
    tweets: Sequence[Tweet],
    *,
    tokens: Mapping[str, Sequence[str]] | None = None,
    min_token_len: int = DEFAULT_MIN_TOKEN_LEN,
) -> SummaryEntry | None:
    """Pick the best scoring tweet of a sub-event in one language.

    Neither ``H`` nor ``G`` is modified.

    Args:
        sub_event: Detected sub-event
        lang: Target language
        weighting: Term weighting method
        H: Distribution of the minute's ``lang`` tweets
        G: Game-so-far distribution of ``lang`` up to the previous minute
        tweets: Tweets of the minute (any language)
        tokens: Pre-computed tokens keyed by tweet id
        min_token_len: Tokenizer threshold for tweets without cached tokens

    Returns:
        Summary entry, or None if the minute has no tweet in ``lang``
    """
    members = set(sub_event.tweets)
    candidates = [t for t in tweets if t.lang == lang and t.id in members]
    if not candidates:
        return None

    best = rank_tweets(
        candidates, weighting, H, G, tokens=tokens, min_token_len=min_token_len
    )[0]
    return SummaryEntry(
        sub_event=sub_event,
        lang=lang,
        tweet_id=best.tweet.id,
        text=best.tweet.text,
        score=best.score,
        method=weighting.method,
    )
