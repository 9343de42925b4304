"""Deterministic synthetic vaccine-tweet corpus for pipeline runs and tests."""

from __future__ import annotations

import random

from vibesift.corpus import Corpus, RawTweet

KEYWORD_PHRASES = ["vaccine", "covid vaccine", "Pfizer", "immunity", "dose", "booster", "#vaccine", "#Pfizer"]

POSITIVE = [
    "so happy and grateful, feeling safe now",
    "really great news, I love this",
    "relieved and hopeful after today",
    "excellent work by the nurses, thanks",
    "best day in months, feeling protected",
    "glad it was quick and nice",
    "AMAZING team at the clinic",
]
NEGATIVE = [
    "my arm is in so much pain, awful",
    "worried about the risk, scared honestly",
    "terrible side effects, feeling sick",
    "this is a disaster and I hate it",
    "not good, tired and sad all day",
    "the worst line ever, so angry",
    "afraid of the danger nobody talks about",
]
NEUTRAL = [
    "appointment at 3pm at the pharmacy",
    "second appointment booked for next week",
    "clinic opens on Monday in the north district",
    "got the card and the sticker",
    "line moved along at the community centre",
    "update from the health office posted",
]
DECOR = ["", "", "", " !", "!!", " 💉", " 😷", " https://example.org/info", " @healthdept", " :)"]


def make_corpus(n: int = 3000, seed: int = 2021, band_share: float = 0.35) -> Corpus:
    """Build ``n`` keyword-bearing tweets.

    About ``band_share`` of accounts fall in the 400-500 follower band; the
    rest are spread log-uniformly between 10 and 20000 followers.
    """
    rng = random.Random(seed)
    tweets = []
    for i in range(n):
        mood = rng.choice((POSITIVE, NEGATIVE, NEUTRAL))
        phrase = rng.choice(KEYWORD_PHRASES)
        body = rng.choice(mood)
        if rng.random() < 0.5:
            text = f"{phrase} {body}{rng.choice(DECOR)}"
        else:
            text = f"{body.capitalize()}, {phrase} done{rng.choice(DECOR)}"
        if rng.random() < band_share:
            followers = rng.randint(400, 500)
        else:
            followers = int(10 ** rng.uniform(1, 4.3))
        retweets = int(rng.expovariate(1.0) * followers / 150)
        tweets.append(
            RawTweet(
                id=f"syn-{i + 1:04d}",
                text=text,
                retweet_count=retweets,
                follower_count=followers,
            )
        )
    return Corpus(tuple(tweets), "synthetic")
