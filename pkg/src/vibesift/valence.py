"""Valence-intensity lexicon scorer with rule heuristics.

Each token gets a valence from the lexicon, adjusted by capitalization,
preceding boosters and negators, and "but" clauses. The summed valence
plus punctuation emphasis is squashed into a compound score in [-1, 1],
and the per-token valences also produce neg/neu/pos ratios.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, fields, replace
from decimal import ROUND_HALF_UP, Decimal
from importlib import resources
from pathlib import Path
from typing import Sequence

from vibesift.preprocess import (
    DEFAULT_EMOJI_RANGES,
    Profile,
    is_punct_token,
    normalize,
    read_wordlist,
)

log = logging.getLogger(__name__)

VALENCE_BOUND = 4.0


class LexiconError(ValueError):
    pass


class ParseError(LexiconError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class ValenceOutOfRange(LexiconError):
    def __init__(self, token: str, value: float):
        super().__init__(f"valence {value} for {token!r} outside [-4, 4]")
        self.token = token
        self.value = value


@dataclass(frozen=True)
class ValenceRules:
    caps_emphasis: float = 0.733
    negation_factor: float = -0.74
    exclaim_boost: float = 0.292
    exclaim_max: int = 4
    question_boost: float = 0.18
    question_max: int = 3
    alpha: float = 15.0
    booster_decay_1: float = 1.0
    booster_decay_2: float = 0.95
    booster_decay_3: float = 0.9
    but_pre: float = 0.5
    but_post: float = 1.5
    window: int = 3
    min_token_len: int = 2

    @property
    def booster_decay(self) -> tuple[float, ...]:
        return (self.booster_decay_1, self.booster_decay_2, self.booster_decay_3)


DEFAULT_RULES = ValenceRules()


def load_rules(path: str | Path, base: ValenceRules = DEFAULT_RULES) -> ValenceRules:
    """Read ``key = value`` overrides on top of ``base``."""
    types = {f.name: f.type for f in fields(ValenceRules)}
    overrides = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in types:
            raise ParseError(lineno, f"unknown rule setting {raw.strip()!r}")
        try:
            overrides[key] = int(value) if types[key] == "int" else float(value)
        except ValueError:
            raise ParseError(lineno, f"bad number {value.strip()!r}") from None
    return replace(base, **overrides)


@dataclass(frozen=True)
class ValenceLexicon:
    valences: dict[str, float]
    boosters: dict[str, float] = field(default_factory=dict)
    negators: frozenset[str] = frozenset()
    but_words: frozenset[str] = frozenset({"but"})

    def valence(self, token: str) -> float:
        return self.valences.get(token.lower(), 0.0)


def _read_tsv(path: str | Path, ncols: int) -> list[tuple[int, list[str]]]:
    rows = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != ncols:
            raise ParseError(lineno, f"expected {ncols} tab-separated fields, got {len(parts)}")
        rows.append((lineno, parts))
    return rows


def _data(name: str):
    return resources.files("vibesift") / "data" / name


def load_valence_lexicon(
    path: str | Path,
    boosters_path: str | Path | None = None,
    negators_path: str | Path | None = None,
) -> ValenceLexicon:
    """Load a ``token<TAB>valence`` file.

    Boosters and negators default to the bundled lists. Duplicate tokens keep
    the last value and log a warning.
    """
    valences: dict[str, float] = {}
    for lineno, (token, value) in _read_tsv(path, 2):
        try:
            v = float(value)
        except ValueError:
            raise ParseError(lineno, f"bad valence {value!r}") from None
        if not -VALENCE_BOUND <= v <= VALENCE_BOUND:
            raise ValenceOutOfRange(token, v)
        token = token.lower()
        if token in valences:
            log.warning("duplicate lexicon token %r on line %d, keeping last", token, lineno)
        valences[token] = v

    boosters = {}
    for lineno, (token, value) in _read_tsv(boosters_path or _data("boosters.tsv"), 2):
        try:
            boosters[token.lower()] = float(value)
        except ValueError:
            raise ParseError(lineno, f"bad booster increment {value!r}") from None
    negators = read_wordlist(negators_path or _data("negators.txt"))
    return ValenceLexicon(valences=valences, boosters=boosters, negators=negators)


def default_valence_lexicon() -> ValenceLexicon:
    return load_valence_lexicon(_data("valence_lexicon.tsv"))


def _round_half_up(x: float, places: int) -> float:
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(x)).quantize(q, rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ValenceScore:
    neg: float
    neu: float
    pos: float
    compound: float

    def display(self) -> dict[str, float]:
        return {
            "compound": _round_half_up(self.compound, 4),
            "neg": _round_half_up(self.neg, 3),
            "neu": _round_half_up(self.neu, 3),
            "pos": _round_half_up(self.pos, 3),
        }


def normalize_compound(s: float, alpha: float = 15.0) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if math.isinf(s):
        return math.copysign(1.0, s)
    return max(-1.0, min(1.0, s / math.sqrt(s * s + alpha)))


def _sign(x: float) -> float:
    return (x > 0) - (x < 0)


def _is_upper(token: str) -> bool:
    return token.isupper()


def score_tokens(
    tokens: Sequence[str],
    lexicon: ValenceLexicon,
    rules: ValenceRules = DEFAULT_RULES,
) -> ValenceScore:
    """Score MINIMAL-profile tokens (case and punctuation tokens intact)."""
    puncts = [t for t in tokens if is_punct_token(t)]
    words = [t for t in tokens if not is_punct_token(t) and len(t) >= rules.min_token_len]

    n_upper = sum(1 for w in words if _is_upper(w))
    caps_differ = 0 < n_upper < len(words)

    valences = []
    for i, word in enumerate(words):
        v = lexicon.valence(word)
        if v == 0.0:
            valences.append(0.0)
            continue
        if caps_differ and _is_upper(word):
            v += math.copysign(rules.caps_emphasis, v)
        sign = _sign(v)
        for dist in range(1, min(rules.window, len(rules.booster_decay)) + 1):
            if i - dist < 0:
                break
            inc = lexicon.boosters.get(words[i - dist].lower())
            if inc is not None:
                v += sign * inc * rules.booster_decay[dist - 1]
        preceding = words[max(0, i - rules.window):i]
        if any(p.lower() in lexicon.negators for p in preceding):
            v *= rules.negation_factor
        valences.append(v)

    lowered = [w.lower() for w in words]
    but_at = next((i for i, w in enumerate(lowered) if w in lexicon.but_words), None)
    if but_at is not None:
        valences = [
            v * rules.but_pre if i < but_at else v * rules.but_post if i > but_at else v
            for i, v in enumerate(valences)
        ]

    total = sum(valences)
    text_punct = "".join(puncts)
    exclaims = min(text_punct.count("!"), rules.exclaim_max)
    questions = min(max(text_punct.count("?") - 1, 0), rules.question_max)
    emphasis = exclaims * rules.exclaim_boost + questions * rules.question_boost
    signed_emphasis = _sign(total) * emphasis
    compound = normalize_compound(total + signed_emphasis, rules.alpha)

    pos_sum = sum(v + 1 for v in valences if v > 0)
    neg_sum = sum(v - 1 for v in valences if v < 0)
    neu_count = sum(1 for v in valences if v == 0)
    # Emphasis mass goes to whichever side the summed valence points to.
    if signed_emphasis > 0:
        pos_sum += emphasis
    elif signed_emphasis < 0:
        neg_sum -= emphasis
    denom = pos_sum + abs(neg_sum) + neu_count
    if denom == 0:
        return ValenceScore(0.0, 0.0, 0.0, 0.0)
    return ValenceScore(
        neg=abs(neg_sum) / denom,
        neu=neu_count / denom,
        pos=pos_sum / denom,
        compound=compound,
    )


def score(
    text: str,
    lexicon: ValenceLexicon,
    rules: ValenceRules = DEFAULT_RULES,
    ranges: Sequence[tuple[int, int]] = DEFAULT_EMOJI_RANGES,
) -> ValenceScore:
    """Score raw tweet text.

    >>> lex = ValenceLexicon({"like": 1.5})
    >>> score("I like polar bears", lex).display()
    {'compound': 0.3612, 'neg': 0.0, 'neu': 0.444, 'pos': 0.556}
    """
    return score_tokens(normalize(text, Profile.MINIMAL, ranges=ranges).tokens, lexicon, rules)
