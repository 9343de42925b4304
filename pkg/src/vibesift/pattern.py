"""Averaged-polarity lexicon scorer with negation reversal."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from vibesift.preprocess import DEFAULT_EMOJI_RANGES, Profile, normalize, read_wordlist
from vibesift.valence import LexiconError, ParseError, _read_tsv


class BoundViolation(LexiconError):
    def __init__(self, token: str, reason: str):
        super().__init__(f"{token!r}: {reason}")
        self.token = token


@dataclass(frozen=True)
class PatternLexicon:
    entries: dict[str, tuple[float, float]]
    negators: frozenset[str] = frozenset()
    negation_factor: float = -0.5
    window: int = 2


@dataclass(frozen=True)
class PolarityScore:
    polarity: float
    subjectivity: float
    matched_count: int


def load_pattern_lexicon(
    path: str | Path,
    negators_path: str | Path | None = None,
    negation_factor: float = -0.5,
) -> PatternLexicon:
    entries = {}
    for lineno, (token, pol, subj) in _read_tsv(path, 3):
        try:
            p, s = float(pol), float(subj)
        except ValueError:
            raise ParseError(lineno, "polarity and subjectivity must be numbers") from None
        if not -1.0 <= p <= 1.0:
            raise BoundViolation(token, f"polarity {p} outside [-1, 1]")
        if not 0.0 <= s <= 1.0:
            raise BoundViolation(token, f"subjectivity {s} outside [0, 1]")
        entries[token.lower()] = (p, s)
    negators = read_wordlist(negators_path or resources.files("vibesift") / "data" / "negators.txt")
    return PatternLexicon(entries=entries, negators=negators, negation_factor=negation_factor)


def default_pattern_lexicon() -> PatternLexicon:
    return load_pattern_lexicon(resources.files("vibesift") / "data" / "pattern_lexicon.tsv")


def score(tokens: Sequence[str], lexicon: PatternLexicon) -> PolarityScore:
    """Mean polarity and subjectivity over lexicon hits in FULL-profile tokens.

    A hit preceded by a negator within the window has its polarity multiplied
    by the negation factor. No hits gives exactly (0.0, 0.0, 0).
    """
    polarities = []
    subjectivities = []
    for i, tok in enumerate(tokens):
        entry = lexicon.entries.get(tok)
        if entry is None:
            continue
        pol, subj = entry
        if any(p in lexicon.negators for p in tokens[max(0, i - lexicon.window):i]):
            pol *= lexicon.negation_factor
        polarities.append(pol)
        subjectivities.append(subj)
    if not polarities:
        return PolarityScore(0.0, 0.0, 0)
    n = len(polarities)
    polarity = max(-1.0, min(1.0, sum(polarities) / n))
    subjectivity = max(0.0, min(1.0, sum(subjectivities) / n))
    return PolarityScore(polarity, subjectivity, n)


# Mixed-polarity sentences go through the same averaging; the alias exists so
# callers can name that intent.
score_mixed = score


def score_text(
    text: str,
    lexicon: PatternLexicon,
    ranges: Sequence[tuple[int, int]] = DEFAULT_EMOJI_RANGES,
) -> PolarityScore:
    return score(normalize(text, Profile.FULL, ranges=ranges).tokens, lexicon)
