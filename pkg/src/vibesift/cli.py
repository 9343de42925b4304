"""Command-line front end: ingest, score, split, analyze, stats, all."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path

from vibesift import analytics, corpus, pattern, preprocess, report, valence
from vibesift.analytics import ClassThresholds, Direction
from vibesift.labels import Scorer, SentimentClass

log = logging.getLogger("vibesift")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DATA = 4

CONFIG_ENV = "VIBESIFT_CONFIG"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    input: Path | None = None
    out: Path = Path("out")
    keywords: Path | None = None
    stoplist: Path | None = None
    negators: Path | None = None
    boosters: Path | None = None
    valence_lexicon: Path | None = None
    pattern_lexicon: Path | None = None
    valence_rules: Path | None = None
    train_fraction: str = "0.8"
    dev_fraction: str = "0.1"
    test_fraction: str = "0.1"
    seed: int = 42
    positive_min: float = 0.05
    negative_max: float = -0.05
    band_lo: int = 400
    band_hi: int = 500
    use_band: bool = True
    engagement_direction: str = "rpf"
    emoji_ranges: str | None = None
    pattern_negation_factor: float = -0.5
    svg_width: int = 800
    svg_height: int = 600
    quiet: bool = False

    _PATHS = ("input", "keywords", "stoplist", "negators", "boosters", "valence_lexicon", "pattern_lexicon", "valence_rules")


def _coerce(name: str, value: str):
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    try:
        if name in RunConfig._PATHS or name == "out":
            return Path(value)
        if kind == "int":
            return int(value)
        if kind == "float":
            return float(value)
        if kind == "bool":
            lowered = value.lower()
            if lowered not in {"true", "false", "1", "0", "yes", "no"}:
                raise ValueError(value)
            return lowered in {"true", "1", "yes"}
    except ValueError:
        raise ConfigError(f"bad value for {name}: {value!r}") from None
    return value


def read_config_file(path: Path) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(RunConfig)}
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown setting {raw.strip()!r}")
        values[key] = _coerce(key, value.strip())
    return values


@dataclass
class Resources:
    """Validated inputs loaded once, before any output is written."""

    config: RunConfig
    keywords: list[str]
    stoplist: frozenset[str]
    valence_lexicon: valence.ValenceLexicon
    pattern_lexicon: pattern.PatternLexicon
    rules: valence.ValenceRules
    split_spec: corpus.SplitSpec
    thresholds: ClassThresholds
    direction: Direction
    ranges: tuple = field(default=preprocess.DEFAULT_EMOJI_RANGES)


def _data(name: str) -> Path:
    return Path(str(resources.files("vibesift") / "data" / name))


def load_resources(cfg: RunConfig) -> Resources:
    for name in RunConfig._PATHS[1:]:
        path = getattr(cfg, name)
        if path is not None and not Path(path).is_file():
            raise ConfigError(f"{name}: no such file {path}")
    try:
        keywords = corpus.read_keywords(cfg.keywords or _data("keywords.txt"))
        stoplist = preprocess.read_wordlist(cfg.stoplist or _data("stopwords.txt"))
        vlex = valence.load_valence_lexicon(
            cfg.valence_lexicon or _data("valence_lexicon.tsv"), cfg.boosters, cfg.negators
        )
        plex = pattern.load_pattern_lexicon(
            cfg.pattern_lexicon or _data("pattern_lexicon.tsv"), cfg.negators, cfg.pattern_negation_factor
        )
        rules = valence.load_rules(cfg.valence_rules) if cfg.valence_rules else valence.DEFAULT_RULES
        spec = corpus.SplitSpec(
            Fraction(cfg.train_fraction), Fraction(cfg.dev_fraction), Fraction(cfg.test_fraction), cfg.seed
        )
        thresholds = ClassThresholds(cfg.positive_min, cfg.negative_max)
        direction = Direction(cfg.engagement_direction)
        ranges = preprocess.parse_ranges(cfg.emoji_ranges) if cfg.emoji_ranges else preprocess.DEFAULT_EMOJI_RANGES
        if cfg.band_lo > cfg.band_hi:
            raise ValueError("band_lo exceeds band_hi")
    except (valence.LexiconError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if not keywords:
        raise ConfigError("keyword list is empty")
    return Resources(cfg, keywords, stoplist, vlex, plex, rules, spec, thresholds, direction, ranges)


class Runner:
    def __init__(self, res: Resources):
        self.res = res
        self.cfg = res.config
        self.out = Path(self.cfg.out)

    def say(self, msg: str) -> None:
        if not self.cfg.quiet:
            print(msg)

    def _load(self, name: str) -> corpus.Corpus:
        return corpus.load_csv(self.out / name, source_label=Path(name).stem)

    def _load_scored(self) -> list[analytics.ScoredTweet]:
        scored_corpus = self._load("scored.csv")
        try:
            return [analytics.from_record(t) for t in scored_corpus]
        except (KeyError, ValueError) as exc:
            raise corpus.MalformedRow(0, f"scored.csv: {exc}") from None

    def ingest(self) -> int:
        if self.cfg.input is None:
            raise ConfigError("no input file given (use --input or the 'input' config key)")
        raw = corpus.load_csv(self.cfg.input)
        flagged = corpus.filter_flagged(corpus.flag_keywords(raw, self.res.keywords))
        self.out.mkdir(parents=True, exist_ok=True)
        corpus.write_csv(flagged, self.out / "corpus.csv")
        (self.out / "stages.txt").write_text(
            f"ingested = {len(raw)}\nflagged = {len(flagged)}\n", encoding="utf-8"
        )
        self.say(f"ingested {len(raw)} tweets, {len(flagged)} flagged -> {self.out / 'corpus.csv'}")
        return EXIT_OK

    def score(self) -> int:
        tweets = self._load("corpus.csv")
        r = self.res
        scored = analytics.score_corpus(
            tweets, r.valence_lexicon, r.pattern_lexicon, r.rules, r.thresholds, r.direction, r.ranges
        )
        out = tweets.with_tweets(analytics.to_record(s) for s in scored)
        corpus.write_csv(out, self.out / "scored.csv")
        self.say(f"scored {len(scored)} tweets -> {self.out / 'scored.csv'}")
        return EXIT_OK

    def split(self) -> int:
        scored = self._load("scored.csv")
        parts = corpus.split(scored, self.res.split_spec)
        for name, part in zip(("train", "dev", "test"), parts):
            corpus.write_csv(part, self.out / f"{name}.csv")
        self.say("split: " + ", ".join(f"{n} {len(p)}" for n, p in zip(("train", "dev", "test"), parts)))
        return EXIT_OK

    def _stages(self) -> dict[str, int]:
        path = self.out / "stages.txt"
        stages = {}
        if path.is_file():
            for line in path.read_text(encoding="utf-8").splitlines():
                key, _, value = line.partition("=")
                if value.strip().isdigit():
                    stages[key.strip()] = int(value)
        return stages

    def analyze(self) -> int:
        cfg, r = self.cfg, self.res
        scored = [
            replace(s, engagement=analytics.engagement(s.tweet, r.direction)) for s in self._load_scored()
        ]
        counts = [report.class_counts(scored, sc) for sc in Scorer]
        stages = self._stages()
        stages["scored"] = len(scored)
        kept = scored
        if cfg.use_band:
            kept = [
                s for s in scored
                if s.tweet.follower_count is not None and cfg.band_lo <= s.tweet.follower_count <= cfg.band_hi
            ]
            stages["band_filtered"] = len(kept)
        try:
            reports = [analytics.hypothesis_test(kept, sc) for sc in Scorer]
        except analytics.TooFewPoints as exc:
            band = f" in follower band [{cfg.band_lo}, {cfg.band_hi}]" if cfg.use_band else ""
            print(f"error: only {exc.n} tweets with engagement{band}; need at least 3", file=sys.stderr)
            return EXIT_DATA

        series_y = report.score_sentiment_series(kept, report.Orientation.SENT_Y)
        series_x = report.score_sentiment_series(kept, report.Orientation.SENT_X)
        style = report.SvgStyle(width=cfg.svg_width, height=cfg.svg_height)
        report.emit_series_csv(series_y, self.out / "series.csv")
        for c in counts:
            report.emit_svg(c, self.out / f"counts_{c.scorer.value}.svg", style)
        report.emit_svg(series_y, self.out / "score_sentiment_y.svg", style)
        report.emit_svg(series_x, self.out / "score_sentiment_x.svg", style)
        notes = [
            "",
            f"engagement direction: {r.direction.name}",
            f"follower band: {'[%d, %d]' % (cfg.band_lo, cfg.band_hi) if cfg.use_band else 'off'}",
        ]
        text = report.run_summary(stages, counts, reports, seed=cfg.seed, notes=notes)
        (self.out / "report.txt").write_text(text, encoding="utf-8")
        self.say(text.rstrip())
        return EXIT_OK

    def stats(self) -> int:
        scored = self._load_scored()
        tweets = corpus.Corpus(tuple(s.tweet for s in scored), "scored")
        lines = ["Corpus statistics", "================="]
        by_scorer = {}
        for sc in Scorer:
            classes = {s.tweet.id: s.sentiment_class(sc) for s in scored}
            by_scorer[sc] = corpus.corpus_stats(tweets, classes)
        base = by_scorer[Scorer.VALENCE]
        lines.append(f"tweets: {base.tweet_count}")
        lines.append("")
        lines.append(f"Character length histogram (bucket width {corpus.BUCKET_WIDTH}):")
        for lo, n in base.char_length_histogram.items():
            lines.append(f"  [{lo}, {lo + corpus.BUCKET_WIDTH}): {n}")
        for sc, st in by_scorer.items():
            lines.append("")
            lines.append(f"Character length by class ({sc.value}): mean, median")
            for cls, (mean, median) in st.char_length_by_class.items():
                lines.append(f"  {cls.name}: {mean:.2f}, {median:.1f}")

        labelled = [(s.tweet.text, s.class_valence) for s in scored]
        present = sorted({c for _, c in labelled})
        try:
            prof = preprocess.stopword_profile(labelled, self.res.stoplist, classes=list(SentimentClass))
        except preprocess.EmptyClass as exc:
            log.warning("%s; profiling present classes only", exc)
            lines.append("")
            lines.append(f"warning: {exc}; partial table over present classes")
            prof = preprocess.stopword_profile(labelled, self.res.stoplist, classes=present)
        lines.append("")
        lines.append("Stopword divergence (chi-square over valence classes):")
        header = "  word".ljust(14) + "chi2".rjust(12) + "".join(
            f"{c.name.lower():>12}" for c in prof.frequencies
        )
        lines.append(header)
        for word, chi2 in prof.ranked():
            freqs = "".join(f"{prof.frequencies[c].get(word, 0.0):12.4f}" for c in prof.frequencies)
            lines.append(f"  {word:<12}{chi2:12.4f}{freqs}")
        (self.out / "stats.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
        self.say(f"wrote {self.out / 'stats.txt'}")
        return EXIT_OK

    def all(self) -> int:
        for step in (self.ingest, self.score, self.split, self.analyze, self.stats):
            code = step()
            if code != EXIT_OK:
                return code
        return EXIT_OK


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS defaults let the flags appear before or after the subcommand
    # without the subparser resetting values given earlier.
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="key = value config file (fallback: $%s)" % CONFIG_ENV)
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--input", type=Path, help="input tweet CSV (ingest/all)")
    common.add_argument("--seed", type=int)
    common.add_argument("--no-band", action="store_true", help="skip the follower band filter")
    common.add_argument("--engagement-direction", choices=[d.value for d in Direction])
    common.add_argument("--quiet", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="vibesift", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("ingest", "load, keyword-flag and filter the input CSV"),
        ("score", "score corpus.csv with both scorers"),
        ("split", "write train/dev/test CSVs"),
        ("analyze", "band filter, engagement test, series and charts"),
        ("stats", "character-length and stopword statistics"),
        ("all", "run every stage in order"),
    ]:
        sub.add_parser(name, help=help_text, parents=[common])
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    opts = vars(args)
    cfg = RunConfig()
    config_path = opts.get("config") or (Path(os.environ[CONFIG_ENV]) if os.environ.get(CONFIG_ENV) else None)
    if config_path is not None:
        cfg = replace(cfg, **read_config_file(config_path))
    overrides = {k: opts[k] for k in ("out", "input", "seed", "engagement_direction") if k in opts}
    cfg = replace(cfg, **overrides)
    if opts.get("no_band"):
        cfg.use_band = False
    if opts.get("quiet"):
        cfg.quiet = True
    if cfg.input is None and args.command in ("ingest", "all"):
        raise ConfigError("no input file given (use --input or the 'input' config key)")
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.ERROR if getattr(args, "quiet", False) else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = make_config(args)
        runner = Runner(load_resources(cfg))
        return getattr(runner, args.command)()
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except corpus.CorpusTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (corpus.CorpusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
