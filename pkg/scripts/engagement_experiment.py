"""Engagement-vs-extremity correlations under each band/direction setting.

Runs the scorers over a corpus CSV (the bundled synthetic corpus by default)
and prints Spearman/Pearson for both scorers with the follower band on and
off and both engagement directions.

    python scripts/engagement_experiment.py [--input tweets.csv]
"""

import argparse
from dataclasses import replace
from importlib import resources
from pathlib import Path

from vibesift import analytics, corpus, pattern, valence
from vibesift.labels import Scorer


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--input", type=Path,
                    default=Path(str(resources.files("vibesift") / "data" / "synthetic_3000.csv")))
    ap.add_argument("--band", type=int, nargs=2, default=(400, 500))
    args = ap.parse_args()

    tweets = corpus.filter_flagged(corpus.flag_keywords(corpus.load_csv(args.input), corpus.default_keywords()))
    scored = analytics.score_corpus(tweets, valence.default_valence_lexicon(), pattern.default_pattern_lexicon())
    lo, hi = args.band

    print(f"{'band':<10}{'direction':<10}{'scorer':<9}{'n':>6}{'spearman':>10}{'pearson':>10}")
    for use_band in (True, False):
        subset = [s for s in scored if not use_band or (s.tweet.follower_count is not None
                                                         and lo <= s.tweet.follower_count <= hi)]
        for direction in analytics.Direction:
            rows = [replace(s, engagement=analytics.engagement(s.tweet, direction)) for s in subset]
            for scorer in Scorer:
                try:
                    rep = analytics.hypothesis_test(rows, scorer)
                except analytics.TooFewPoints as exc:
                    print(f"{'on' if use_band else 'off':<10}{direction.value:<10}{scorer.value:<9}{exc.n:>6}   too few")
                    continue
                print(f"{'on' if use_band else 'off':<10}{direction.value:<10}{scorer.value:<9}"
                      f"{rep.n:>6}{rep.spearman_rho:>10.4f}{rep.pearson_r:>10.4f}")


if __name__ == "__main__":
    main()
