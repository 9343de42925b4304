"""Tweet tokenization, emoji stripping and text normalization.

Two normalization profiles are supported:

* ``FULL`` lowercases, drops punctuation, URLs and mentions, and strips the
  ``#`` sigil from hashtags. The pattern scorer consumes this profile.
* ``MINIMAL`` only drops URLs and mentions, so capitalization and
  punctuation emphasis survive for the valence scorer.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Hashable, Iterable, Sequence

# Inclusive codepoint ranges removed by strip_emoji.
DEFAULT_EMOJI_RANGES: tuple[tuple[int, int], ...] = (
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x1FA70, 0x1FAFF),
    (0x2600, 0x26FF),
    (0x2700, 0x27BF),
    (0x1F1E6, 0x1F1FF),
    (0xFE0F, 0xFE0F),
)
ZWJ = "‍"

EMOTICONS = frozenset(
    """
    :) :-) :( :-( :D :-D ;) ;-) :P :-P :p :-p :/ :-/ :| :-| :O :-O :o
    ;D :'( :') <3 </3 =) =( XD xD :* :-* ^_^ -_- >:( >:) 8) B)
    """.split()
)

_URL_RE = re.compile(r"^(?:[a-zA-Z][a-zA-Z0-9+.\-]*://|www\.)\S+$")
_URL_TRAILING = ".,!?;:)]}'\""


class Profile(str, enum.Enum):
    FULL = "full"
    MINIMAL = "minimal"


@dataclass(frozen=True)
class CleanTweet:
    id: str
    profile: Profile
    tokens: tuple[str, ...]

    @property
    def normalized_text(self) -> str:
        return " ".join(self.tokens)


class EmptyClass(ValueError):
    """Raised when a sentiment class has no tweets to profile."""

    def __init__(self, label: Hashable):
        super().__init__(f"sentiment class {label!r} has zero tweets")
        self.label = label


def parse_ranges(spec: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"1F300-1F5FF,FE0F"`` style range lists (hex codepoints)."""
    ranges = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        lo, _, hi = part.partition("-")
        lo_cp = int(lo.strip().removeprefix("U+"), 16)
        hi_cp = int(hi.strip().removeprefix("U+"), 16) if hi else lo_cp
        if hi_cp < lo_cp:
            raise ValueError(f"empty codepoint range {part!r}")
        ranges.append((lo_cp, hi_cp))
    return tuple(ranges)


def _in_ranges(cp: int, ranges: Sequence[tuple[int, int]]) -> bool:
    return any(lo <= cp <= hi for lo, hi in ranges)


def strip_emoji(text: str, ranges: Sequence[tuple[int, int]] = DEFAULT_EMOJI_RANGES) -> str:
    """Remove emoji codepoints from ``text``.

    Zero-width joiners are removed only when they sit next to a removed
    codepoint (directly or through a chain of other removed joiners), so
    joiners used by scripts such as Devanagari are left alone.
    """
    removed = [_in_ranges(ord(ch), ranges) for ch in text]
    if not any(removed):
        return text
    changed = True
    while changed:
        changed = False
        for i, ch in enumerate(text):
            if removed[i] or ch != ZWJ:
                continue
            if (i > 0 and removed[i - 1]) or (i + 1 < len(text) and removed[i + 1]):
                removed[i] = True
                changed = True
    return "".join(ch for ch, drop in zip(text, removed) if not drop)


def is_punct_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def is_punct_token(token: str) -> bool:
    return bool(token) and all(is_punct_char(ch) for ch in token)


def is_url(token: str) -> bool:
    return bool(_URL_RE.match(token))


def _split_chunk(chunk: str) -> list[str]:
    if chunk in EMOTICONS:
        return [chunk]
    if is_url(chunk):
        end = len(chunk)
        while end > 0 and chunk[end - 1] in _URL_TRAILING:
            end -= 1
        return [chunk[:end]] + ([chunk[end:]] if end < len(chunk) else [])

    i, j = 0, len(chunk)
    while i < j and is_punct_char(chunk[i]):
        i += 1
    while j > i and is_punct_char(chunk[j - 1]):
        j -= 1
    lead, core, trail = chunk[:i], chunk[i:j], chunk[j:]
    if core and lead and lead[-1] in "#@":
        core = lead[-1] + core
        lead = lead[:-1]
    return [t for t in (lead, core, trail) if t]


def tweet_tokenize(text: str) -> list[str]:
    """Split a tweet into tokens.

    URLs, @mentions, #hashtags, table emoticons and contractions stay
    whole; leading and trailing punctuation runs become their own tokens.

    >>> tweet_tokenize("great!!! :) #vaccine")
    ['great', '!!!', ':)', '#vaccine']
    """
    tokens: list[str] = []
    for chunk in text.split():
        tokens.extend(_split_chunk(chunk))
    return tokens


def normalize(
    text: str,
    profile: Profile = Profile.FULL,
    tweet_id: str = "",
    ranges: Sequence[tuple[int, int]] = DEFAULT_EMOJI_RANGES,
) -> CleanTweet:
    profile = Profile(profile)
    if profile is Profile.FULL:
        # Folds math/fullwidth letters to plain ones so lower() can reach them.
        text = unicodedata.normalize("NFKC", text)
    tokens = []
    for tok in tweet_tokenize(strip_emoji(text, ranges)):
        if is_url(tok) or (tok.startswith("@") and len(tok) > 1):
            continue
        if profile is Profile.FULL:
            if tok in EMOTICONS:
                continue
            # Some uppercase symbols (enclosed capitals) have no lowercase form.
            tok = "".join(ch for ch in tok.lower() if not ch.isupper()).lstrip("#@")
            if not tok or is_punct_token(tok):
                continue
        tokens.append(tok)
    return CleanTweet(id=tweet_id, profile=profile, tokens=tuple(tokens))


def remove_stopwords(tokens: Iterable[str], stoplist: Iterable[str]) -> list[str]:
    stop = set(stoplist)
    return [t for t in tokens if t not in stop]


def read_wordlist(path: str | Path) -> frozenset[str]:
    """Read a one-token-per-line file; blank lines and ``#`` comments are skipped."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def default_stoplist() -> frozenset[str]:
    return read_wordlist(resources.files("vibesift") / "data" / "stopwords.txt")


@dataclass(frozen=True)
class StopwordProfile:
    frequencies: dict[Hashable, dict[str, float]]
    divergence: dict[str, float]

    def ranked(self) -> list[tuple[str, float]]:
        """Stopwords by descending divergence, ties broken alphabetically."""
        return sorted(self.divergence.items(), key=lambda kv: (-kv[1], kv[0]))


def stopword_profile(
    labelled: Iterable[tuple[str, Hashable]],
    stoplist: Iterable[str],
    classes: Sequence[Hashable] | None = None,
) -> StopwordProfile:
    """Per-class stopword frequencies and a chi-square divergence per stopword.

    ``labelled`` yields ``(text, class)`` pairs. Texts are normalized with the
    FULL profile. The expected count of a stopword in a class is its total
    count times the class's share of all tokens.
    """
    stop = set(stoplist)
    stop_counts: dict[Hashable, Counter] = {}
    token_totals: Counter = Counter()
    for text, label in labelled:
        tokens = normalize(text, Profile.FULL).tokens
        token_totals[label] += len(tokens)
        counter = stop_counts.setdefault(label, Counter())
        counter.update(t for t in tokens if t in stop)

    if classes is None:
        classes = sorted(stop_counts, key=repr)
    for label in classes:
        if label not in stop_counts:
            raise EmptyClass(label)

    frequencies = {}
    for label in classes:
        counter = stop_counts[label]
        total = sum(counter.values())
        frequencies[label] = {w: c / total for w, c in sorted(counter.items())} if total else {}

    all_tokens = sum(token_totals[c] for c in classes)
    vocabulary = sorted(set().union(*(stop_counts[c] for c in classes)))
    divergence = {}
    for word in vocabulary:
        word_total = sum(stop_counts[c][word] for c in classes)
        chi2 = 0.0
        for label in classes:
            expected = word_total * token_totals[label] / all_tokens
            if expected > 0:
                chi2 += (stop_counts[label][word] - expected) ** 2 / expected
        divergence[word] = chi2
    return StopwordProfile(frequencies=frequencies, divergence=divergence)
