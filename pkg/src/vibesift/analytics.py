"""Ranking, class binning, engagement normalization and the engagement test."""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from vibesift import pattern, valence
from vibesift.corpus import Corpus, RawTweet
from vibesift.labels import Scorer, SentimentClass
from vibesift.preprocess import DEFAULT_EMOJI_RANGES

log = logging.getLogger(__name__)


class Direction(str, enum.Enum):
    RETWEETS_PER_FOLLOWER = "rpf"
    FOLLOWERS_PER_RETWEET = "fpr"


@dataclass(frozen=True)
class ClassThresholds:
    positive_min: float = 0.05
    negative_max: float = -0.05

    def __post_init__(self):
        if not self.negative_max < self.positive_min:
            raise ValueError("negative_max must be below positive_min")


class TooFewPoints(ValueError):
    def __init__(self, n: int):
        super().__init__(f"need at least 3 tweets with engagement, got {n}")
        self.n = n


def to_rank(score: float) -> float:
    """Map a [-1, 1] score linearly onto -10..10."""
    if abs(score) > 1.0:
        log.warning("score %r outside [-1, 1], clamping", score)
        score = max(-1.0, min(1.0, score))
    return 10.0 * score


def classify(score: float, thresholds: ClassThresholds = ClassThresholds()) -> SentimentClass:
    if score >= thresholds.positive_min:
        return SentimentClass.POSITIVE
    if score <= thresholds.negative_max:
        return SentimentClass.NEGATIVE
    return SentimentClass.NEUTRAL


def engagement(
    tweet: RawTweet,
    direction: Direction = Direction.RETWEETS_PER_FOLLOWER,
) -> float | None:
    """Retweets normalized by audience size, or the reciprocal.

    Returns None when the denominator is missing or zero.
    """
    followers, retweets = tweet.follower_count, tweet.retweet_count
    if Direction(direction) is Direction.RETWEETS_PER_FOLLOWER:
        if not followers:
            return None
        return retweets / followers
    if not retweets or followers is None:
        return None
    return followers / retweets


def follower_band_filter(corpus: Corpus, lo: int = 400, hi: int = 500) -> Corpus:
    if lo > hi:
        raise ValueError("band lower bound exceeds upper bound")
    return corpus.with_tweets(
        t for t in corpus if t.follower_count is not None and lo <= t.follower_count <= hi
    )


@dataclass(frozen=True)
class ScoredTweet:
    tweet: RawTweet
    valence: valence.ValenceScore
    pattern: pattern.PolarityScore
    rank_valence: float
    rank_pattern: float
    class_valence: SentimentClass
    class_pattern: SentimentClass
    engagement: float | None

    def rank(self, scorer: Scorer) -> float:
        return self.rank_valence if scorer is Scorer.VALENCE else self.rank_pattern

    def raw(self, scorer: Scorer) -> float:
        return self.valence.compound if scorer is Scorer.VALENCE else self.pattern.polarity

    def sentiment_class(self, scorer: Scorer) -> SentimentClass:
        return self.class_valence if scorer is Scorer.VALENCE else self.class_pattern


def make_scored(
    tweet: RawTweet,
    vscore: valence.ValenceScore,
    pscore: pattern.PolarityScore,
    thresholds: ClassThresholds = ClassThresholds(),
    direction: Direction = Direction.RETWEETS_PER_FOLLOWER,
) -> ScoredTweet:
    return ScoredTweet(
        tweet=tweet,
        valence=vscore,
        pattern=pscore,
        rank_valence=to_rank(vscore.compound),
        rank_pattern=to_rank(pscore.polarity),
        class_valence=classify(vscore.compound, thresholds),
        class_pattern=classify(pscore.polarity, thresholds),
        engagement=engagement(tweet, direction),
    )


def score_corpus(
    corpus: Corpus,
    valence_lexicon: valence.ValenceLexicon,
    pattern_lexicon: pattern.PatternLexicon,
    rules: valence.ValenceRules = valence.DEFAULT_RULES,
    thresholds: ClassThresholds = ClassThresholds(),
    direction: Direction = Direction.RETWEETS_PER_FOLLOWER,
    ranges=DEFAULT_EMOJI_RANGES,
) -> list[ScoredTweet]:
    out = []
    for t in corpus:
        vscore = valence.score(t.text, valence_lexicon, rules, ranges)
        pscore = pattern.score_text(t.text, pattern_lexicon, ranges)
        out.append(make_scored(t, vscore, pscore, thresholds, direction))
    return out


# Columns added to scored CSV output, in emission order.
SCORE_COLUMNS = (
    "valence_compound",
    "valence_neg",
    "valence_neu",
    "valence_pos",
    "pattern_polarity",
    "pattern_subjectivity",
    "pattern_matched",
    "rank_valence",
    "rank_pattern",
    "class_valence",
    "class_pattern",
    "engagement",
)


def to_record(st: ScoredTweet) -> RawTweet:
    """Fold scores into a RawTweet's extra columns; ``sentiment`` gets the polarity."""
    values = {
        "valence_compound": repr(st.valence.compound),
        "valence_neg": repr(st.valence.neg),
        "valence_neu": repr(st.valence.neu),
        "valence_pos": repr(st.valence.pos),
        "pattern_polarity": repr(st.pattern.polarity),
        "pattern_subjectivity": repr(st.pattern.subjectivity),
        "pattern_matched": str(st.pattern.matched_count),
        "rank_valence": repr(st.rank_valence),
        "rank_pattern": repr(st.rank_pattern),
        "class_valence": st.class_valence.name,
        "class_pattern": st.class_pattern.name,
        "engagement": "" if st.engagement is None else repr(st.engagement),
    }
    kept = tuple((k, v) for k, v in st.tweet.extras if k not in values)
    return replace(
        st.tweet,
        sentiment=st.pattern.polarity,
        extras=kept + tuple(values.items()),
    )


def from_record(tweet: RawTweet) -> ScoredTweet:
    """Inverse of :func:`to_record`; raises KeyError if score columns are missing."""
    cols = dict(tweet.extras)
    missing = [c for c in SCORE_COLUMNS if c not in cols]
    if missing:
        raise KeyError(f"tweet {tweet.id} lacks score columns: {', '.join(missing)}")
    eng = cols["engagement"]
    return ScoredTweet(
        tweet=tweet,
        valence=valence.ValenceScore(
            neg=float(cols["valence_neg"]),
            neu=float(cols["valence_neu"]),
            pos=float(cols["valence_pos"]),
            compound=float(cols["valence_compound"]),
        ),
        pattern=pattern.PolarityScore(
            float(cols["pattern_polarity"]),
            float(cols["pattern_subjectivity"]),
            int(cols["pattern_matched"]),
        ),
        rank_valence=float(cols["rank_valence"]),
        rank_pattern=float(cols["rank_pattern"]),
        class_valence=SentimentClass[cols["class_valence"]],
        class_pattern=SentimentClass[cols["class_pattern"]],
        engagement=float(eng) if eng.strip() else None,
    )


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks with ties sharing the mean of their positions."""
    x = np.asarray(values, dtype=float)
    order = np.argsort(x, kind="mergesort")
    ranks = np.empty(len(x))
    sorted_x = x[order]
    i = 0
    while i < len(x):
        j = i
        while j + 1 < len(x) and sorted_x[j + 1] == sorted_x[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation; 0.0 when either variable is constant."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx, dy = x - x.mean(), y - y.mean()
    denom = math.sqrt(float(dx @ dx) * float(dy @ dy))
    if denom == 0.0:
        return 0.0
    return max(-1.0, min(1.0, float(dx @ dy) / denom))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    return pearson(average_ranks(x), average_ranks(y))


def strength(rho: float) -> str:
    a = abs(rho)
    if a < 0.1:
        return "negligible"
    if a < 0.3:
        return "weak"
    if a < 0.5:
        return "moderate"
    return "strong"


@dataclass(frozen=True)
class HypothesisReport:
    scorer: Scorer
    spearman_rho: float
    pearson_r: float
    n: int
    mean_engagement: dict[SentimentClass, float]
    verdict_text: str


def hypothesis_test(scored: Sequence[ScoredTweet], scorer: Scorer) -> HypothesisReport:
    """Correlate engagement with sentiment extremity (absolute rank)."""
    usable = [s for s in scored if s.engagement is not None]
    if len(usable) < 3:
        raise TooFewPoints(len(usable))
    eng = [s.engagement for s in usable]
    extremity = [abs(s.rank(scorer)) for s in usable]
    rho = spearman(eng, extremity)
    r = pearson(eng, extremity)

    by_class: dict[SentimentClass, list[float]] = {}
    for s in usable:
        by_class.setdefault(s.sentiment_class(scorer), []).append(s.engagement)
    means = {c: float(np.mean(v)) for c, v in sorted(by_class.items())}

    if strength(rho) == "negligible":
        trend = "shows no monotone relation to"
    elif rho > 0:
        trend = "rises with"
    else:
        trend = "falls with"
    verdict = (
        f"{scorer.value}: engagement {trend} sentiment extremity "
        f"({strength(rho)} {'positive' if rho > 0 else 'negative' if rho < 0 else 'zero'} "
        f"correlation, Spearman rho = {rho:.4f}, n = {len(usable)})"
    )
    return HypothesisReport(scorer, rho, r, len(usable), means, verdict)
