"""Tweet records, CSV ingestion/emission, keyword flagging and splitting."""

from __future__ import annotations

import csv
import math
import random
import statistics
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from vibesift.labels import SentimentClass
from vibesift.preprocess import Profile, normalize

COLUMNS = (
    "id",
    "keyword",
    "tweet",
    "like_count",
    "reply_count",
    "retweet_count",
    "retweeted",
    "follower_count",
    "sentiment",
)
REQUIRED_COLUMNS = ("tweet", "retweet_count")
_OPTIONAL_COUNTS = ("like_count", "reply_count", "follower_count")
_MISSING = {"", "nan", "NaN", "NAN"}
BUCKET_WIDTH = 20


class CorpusError(Exception):
    pass


class MissingColumn(CorpusError):
    def __init__(self, name: str):
        super().__init__(f"missing column {name!r}")
        self.name = name


class MalformedRow(CorpusError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateId(CorpusError):
    def __init__(self, tweet_id: str):
        super().__init__(f"duplicate tweet id {tweet_id!r}")
        self.id = tweet_id


class CorpusTooSmall(CorpusError):
    def __init__(self, n: int):
        super().__init__(f"corpus of {n} tweets is too small to split (need at least 3)")
        self.n = n


class IoFailure(CorpusError):
    def __init__(self, path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


@dataclass(frozen=True)
class RawTweet:
    id: str
    text: str
    retweet_count: int = 0
    keyword: str | None = None
    like_count: int | None = None
    reply_count: int | None = None
    retweeted: bool | None = None
    follower_count: int | None = None
    sentiment: float | None = None
    # Non-canonical columns carried through untouched, as (name, value) pairs.
    extras: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        for name in ("retweet_count",) + _OPTIONAL_COUNTS:
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")

    def extra(self, name: str, default: str | None = None) -> str | None:
        return dict(self.extras).get(name, default)


@dataclass(frozen=True)
class Corpus:
    tweets: tuple[RawTweet, ...] = ()
    source_label: str = "corpus"

    def __post_init__(self):
        object.__setattr__(self, "tweets", tuple(self.tweets))
        seen = set()
        for t in self.tweets:
            if t.id in seen:
                raise DuplicateId(t.id)
            seen.add(t.id)

    def __len__(self) -> int:
        return len(self.tweets)

    def __iter__(self) -> Iterator[RawTweet]:
        return iter(self.tweets)

    def with_tweets(self, tweets: Iterable[RawTweet]) -> Corpus:
        return Corpus(tuple(tweets), self.source_label)


def _parse_count(value: str, name: str, line: int, required: bool) -> int | None:
    value = value.strip()
    if value in _MISSING:
        if required:
            raise MalformedRow(line, f"{name} is required")
        return None
    try:
        number = float(value)
    except ValueError:
        raise MalformedRow(line, f"{name}={value!r} is not a number") from None
    if not number.is_integer():
        raise MalformedRow(line, f"{name}={value!r} is not an integer")
    if number < 0:
        raise MalformedRow(line, f"{name}={value!r} is negative")
    return int(number)


def _parse_bool(value: str, line: int) -> bool | None:
    value = value.strip().lower()
    if value in {"", "nan"}:
        return None
    if value in {"true", "1", "yes"}:
        return True
    if value in {"false", "0", "no"}:
        return False
    raise MalformedRow(line, f"retweeted={value!r} is not a boolean")


def _parse_float(value: str, name: str, line: int) -> float | None:
    value = value.strip()
    if value in _MISSING:
        return None
    try:
        return float(value)
    except ValueError:
        raise MalformedRow(line, f"{name}={value!r} is not a number") from None


def load_csv(
    path: str | Path,
    schema: Sequence[str] = REQUIRED_COLUMNS,
    source_label: str | None = None,
) -> Corpus:
    """Read a tweet CSV.

    Every column in ``schema`` must appear in the header (any order). A
    missing or blank ``id`` is synthesized as ``<source_label>:<row>``, rows
    counted from 1. Empty cells and ``NaN`` are read as absent.
    """
    path = Path(path)
    label = source_label if source_label is not None else path.stem
    try:
        with path.open(encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise MissingColumn(schema[0] if schema else "tweet")
            for name in schema:
                if name not in header:
                    raise MissingColumn(name)
            index = {name: i for i, name in enumerate(header)}
            extra_cols = [n for n in header if n not in COLUMNS and n != ""]
            tweets = []
            for row_no, row in enumerate(reader, 1):
                line = reader.line_num
                if len(row) != len(header):
                    raise MalformedRow(line, f"expected {len(header)} fields, got {len(row)}")
                tweets.append(_row_to_tweet(row, index, extra_cols, label, row_no, line))
    except UnicodeDecodeError as exc:
        raise MalformedRow(0, f"invalid UTF-8: {exc.reason}") from None
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from None
    return Corpus(tuple(tweets), label)


def _row_to_tweet(row, index, extra_cols, label, row_no, line) -> RawTweet:
    def cell(name: str) -> str:
        i = index.get(name)
        return row[i] if i is not None else ""

    tweet_id = cell("id").strip() or f"{label}:{row_no}"
    keyword = cell("keyword")
    if "tweet" not in index:
        raise MissingColumn("tweet")
    return RawTweet(
        id=tweet_id,
        text=cell("tweet"),
        keyword=None if keyword.strip() in _MISSING else keyword,
        retweet_count=_parse_count(cell("retweet_count"), "retweet_count", line, required=True),
        like_count=_parse_count(cell("like_count"), "like_count", line, required=False),
        reply_count=_parse_count(cell("reply_count"), "reply_count", line, required=False),
        retweeted=_parse_bool(cell("retweeted"), line),
        follower_count=_parse_count(cell("follower_count"), "follower_count", line, required=False),
        sentiment=_parse_float(cell("sentiment"), "sentiment", line),
        extras=tuple((name, row[index[name]]) for name in extra_cols),
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(corpus: Corpus, path: str | Path) -> None:
    """Write canonical columns followed by any extra columns, in first-seen order."""
    extra_cols: list[str] = []
    for t in corpus:
        for name, _ in t.extras:
            if name not in extra_cols:
                extra_cols.append(name)
    path = Path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(COLUMNS + tuple(extra_cols))
            for t in corpus:
                extras = dict(t.extras)
                writer.writerow(
                    [
                        t.id,
                        _fmt(t.keyword),
                        t.text,
                        _fmt(t.like_count),
                        _fmt(t.reply_count),
                        _fmt(t.retweet_count),
                        _fmt(t.retweeted),
                        _fmt(t.follower_count),
                        _fmt(t.sentiment),
                    ]
                    + [extras.get(name, "") for name in extra_cols]
                )
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from None
    except csv.Error as exc:
        raise CorpusError(f"{path}: cannot write row: {exc}") from None


def default_keywords() -> list[str]:
    return read_keywords(resources.files("vibesift") / "data" / "keywords.txt")


def read_keywords(path) -> list[str]:
    """Ordered keyword list; order matters for first-match flagging."""
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#") and line not in words:
            words.append(line)
    return words


def _contains_run(tokens: Sequence[str], needle: Sequence[str]) -> bool:
    n = len(needle)
    return n > 0 and any(tuple(tokens[i:i + n]) == tuple(needle) for i in range(len(tokens) - n + 1))


def flag_keywords(corpus: Corpus, keywords: Sequence[str]) -> Corpus:
    """Set each tweet's keyword to the first listed keyword found in its text.

    Matching is case-insensitive over whole FULL-profile tokens; multi-word
    keywords must appear as a contiguous token run.
    """
    if not keywords:
        raise ValueError("keyword list must be non-empty")
    needles = [(kw, normalize(kw, Profile.FULL).tokens) for kw in keywords]
    flagged = []
    for t in corpus:
        tokens = normalize(t.text, Profile.FULL).tokens
        match = next((kw for kw, needle in needles if _contains_run(tokens, needle)), None)
        flagged.append(replace(t, keyword=match))
    return corpus.with_tweets(flagged)


def filter_flagged(corpus: Corpus) -> Corpus:
    return corpus.with_tweets(t for t in corpus if t.keyword is not None)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: Fraction | float = Fraction(8, 10)
    dev_fraction: Fraction | float = Fraction(1, 10)
    test_fraction: Fraction | float = Fraction(1, 10)
    seed: int = 42

    def __post_init__(self):
        for name in ("train_fraction", "dev_fraction", "test_fraction"):
            value = getattr(self, name)
            # Go through str so 0.1 means one tenth, not its binary approximation.
            frac = value if isinstance(value, Fraction) else Fraction(str(value))
            if not 0 < frac < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
            object.__setattr__(self, name, frac)
        if self.train_fraction + self.dev_fraction + self.test_fraction != 1:
            raise ValueError("split fractions must sum to exactly 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def split(corpus: Corpus, spec: SplitSpec = SplitSpec()) -> tuple[Corpus, Corpus, Corpus]:
    """Seeded shuffle, then contiguous train/dev/test slices.

    Train and dev sizes are floored; test takes the remainder.
    """
    n = len(corpus)
    if n < 3:
        raise CorpusTooSmall(n)
    order = list(range(n))
    random.Random(spec.seed).shuffle(order)
    n_train = math.floor(n * spec.train_fraction)
    n_dev = math.floor(n * spec.dev_fraction)
    shuffled = [corpus.tweets[i] for i in order]
    return (
        corpus.with_tweets(shuffled[:n_train]),
        corpus.with_tweets(shuffled[n_train:n_train + n_dev]),
        corpus.with_tweets(shuffled[n_train + n_dev:]),
    )


@dataclass(frozen=True)
class CorpusStats:
    tweet_count: int
    # Keyed by bucket lower bound: 40 means lengths 40..59.
    char_length_histogram: dict[int, int]
    char_length_by_class: dict[SentimentClass, tuple[float, float]] = field(default_factory=dict)


def corpus_stats(
    corpus: Corpus,
    classes: Mapping[str, SentimentClass] | None = None,
) -> CorpusStats:
    """Character-length histogram, plus per-class (mean, median) when ``classes`` maps ids to classes."""
    lengths = {t.id: len(t.text) for t in corpus}
    hist = Counter((n // BUCKET_WIDTH) * BUCKET_WIDTH for n in lengths.values())
    by_class = {}
    if classes is not None:
        grouped: dict[SentimentClass, list[int]] = {}
        for tweet_id, n in lengths.items():
            if tweet_id in classes:
                grouped.setdefault(classes[tweet_id], []).append(n)
        by_class = {
            c: (statistics.fmean(v), float(statistics.median(v))) for c, v in sorted(grouped.items())
        }
    return CorpusStats(len(corpus), dict(sorted(hist.items())), by_class)
