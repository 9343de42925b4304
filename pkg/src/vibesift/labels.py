"""Enumerations shared across the pipeline stages."""

from __future__ import annotations

import enum


class SentimentClass(enum.IntEnum):
    # Integer values give the NEGATIVE < NEUTRAL < POSITIVE ordering.
    NEGATIVE = -1
    NEUTRAL = 0
    POSITIVE = 1


class Scorer(str, enum.Enum):
    VALENCE = "valence"
    PATTERN = "pattern"
