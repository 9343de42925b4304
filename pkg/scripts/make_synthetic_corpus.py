"""Regenerate the bundled 3000-tweet synthetic corpus.

    python scripts/make_synthetic_corpus.py [--n 3000] [--seed 2021] [--out PATH]
"""

import argparse
from pathlib import Path

from vibesift.corpus import write_csv
from vibesift.synth import make_corpus

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "vibesift" / "data" / "synthetic_3000.csv"

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3000)
    ap.add_argument("--seed", type=int, default=2021)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    corpus = make_corpus(args.n, args.seed)
    write_csv(corpus, args.out)
    print(f"wrote {len(corpus)} tweets to {args.out}")
