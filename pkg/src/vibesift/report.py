"""Aggregate series, SVG charts and the plain-text run summary."""

from __future__ import annotations

import csv
import enum
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from vibesift.analytics import HypothesisReport, ScoredTweet
from vibesift.corpus import IoFailure
from vibesift.labels import Scorer, SentimentClass


class Orientation(str, enum.Enum):
    SENT_Y = "sent_y"
    SENT_X = "sent_x"


@dataclass(frozen=True)
class ClassCountSeries:
    scorer: Scorer
    counts: dict[SentimentClass, int]
    total: int


@dataclass(frozen=True)
class ScoreSentimentSeries:
    scorer: Scorer
    orientation: Orientation
    # (score, sentiment) pairs; score is engagement, sentiment the raw [-1, 1] value.
    points: tuple[tuple[float, float], ...]
    ids: tuple[str, ...]
    skipped: int = 0


def class_counts(scored: Sequence[ScoredTweet], scorer: Scorer) -> ClassCountSeries:
    counts = {c: 0 for c in SentimentClass}
    for s in scored:
        counts[s.sentiment_class(scorer)] += 1
    return ClassCountSeries(scorer, counts, len(scored))


def score_sentiment_series(
    scored: Sequence[ScoredTweet],
    orientation: Orientation = Orientation.SENT_Y,
) -> tuple[ScoreSentimentSeries, ScoreSentimentSeries]:
    """Paired valence and pattern series over the tweets that have engagement."""
    usable = [s for s in scored if s.engagement is not None]
    skipped = len(scored) - len(usable)
    ids = tuple(s.tweet.id for s in usable)
    return tuple(
        ScoreSentimentSeries(
            scorer=scorer,
            orientation=orientation,
            points=tuple((s.engagement, s.raw(scorer)) for s in usable),
            ids=ids,
            skipped=skipped,
        )
        for scorer in (Scorer.VALENCE, Scorer.PATTERN)
    )


def emit_series_csv(series: Sequence[ScoreSentimentSeries], path: str | Path) -> None:
    rows = sorted(
        ((score, sent, s.scorer.value) for s in series for score, sent in s.points),
        key=lambda r: (r[0], r[2], r[1]),
    )
    try:
        with Path(path).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("score", "sentiment", "scorer"))
            for score, sent, tag in rows:
                writer.writerow((repr(score), repr(sent), tag))
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from None


def read_series_csv(path: str | Path) -> list[tuple[float, float, str]]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        return [(float(r["score"]), float(r["sentiment"]), r["scorer"]) for r in csv.DictReader(fh)]


@dataclass(frozen=True)
class SvgStyle:
    width: int = 800
    height: int = 600
    margin: int = 70
    colors: tuple[tuple[Scorer, str], ...] = (
        (Scorer.VALENCE, "#ff7f0e"),
        (Scorer.PATTERN, "#1f77b4"),
    )
    bar_color: str = "#4c72b0"
    font_size: int = 14

    def color(self, scorer: Scorer) -> str:
        return dict(self.colors)[scorer]


def _num(x: float) -> str:
    return f"{x:.2f}"


def _svg_root(style: SvgStyle, title: str) -> ET.Element:
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(style.width),
            "height": str(style.height),
            "viewBox": f"0 0 {style.width} {style.height}",
        },
    )
    ET.SubElement(root, "title").text = title
    ET.SubElement(
        root, "rect", {"x": "0", "y": "0", "width": str(style.width), "height": str(style.height), "fill": "white"}
    )
    return root


def _text(parent, x, y, s, style: SvgStyle, **attrs) -> ET.Element:
    el = ET.SubElement(
        parent, "text", {"x": _num(x), "y": _num(y), "font-size": str(style.font_size), "font-family": "sans-serif", **attrs}
    )
    el.text = s
    return el


def _axes(root, style: SvgStyle, xlabel: str, ylabel: str):
    m, w, h = style.margin, style.width, style.height
    g = ET.SubElement(root, "g", {"id": "axes", "stroke": "black", "stroke-width": "1"})
    ET.SubElement(g, "line", {"x1": str(m), "y1": str(h - m), "x2": str(w - m), "y2": str(h - m)})
    ET.SubElement(g, "line", {"x1": str(m), "y1": str(m), "x2": str(m), "y2": str(h - m)})
    _text(root, w / 2, h - m / 3, xlabel, style, **{"text-anchor": "middle"})
    _text(
        root, m / 3, h / 2, ylabel, style,
        **{"text-anchor": "middle", "transform": f"rotate(-90 {_num(m / 3)} {_num(h / 2)})"},
    )


def _write(root: ET.Element, path) -> None:
    ET.indent(root)
    data = ET.tostring(root, encoding="unicode")
    try:
        Path(path).write_text('<?xml version="1.0" encoding="UTF-8"?>\n' + data + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoFailure(path, exc.strerror or str(exc)) from None


def _bar_svg(counts: ClassCountSeries, style: SvgStyle) -> ET.Element:
    root = _svg_root(style, f"Tweet counts by sentiment class ({counts.scorer.value})")
    _axes(root, style, "sentiment class", "tweets")
    m, w, h = style.margin, style.width, style.height
    if counts.total == 0:
        _text(root, w / 2, h / 2, "no data", style, **{"text-anchor": "middle"})
        return root
    peak = max(counts.counts.values())
    slot = (w - 2 * m) / len(counts.counts)
    plot_h = h - 2 * m
    bars = ET.SubElement(root, "g", {"id": "bars", "fill": style.bar_color})
    for i, cls in enumerate(sorted(counts.counts)):
        n = counts.counts[cls]
        bh = plot_h * n / peak
        x = m + i * slot + slot * 0.15
        ET.SubElement(
            bars, "rect",
            {"x": _num(x), "y": _num(h - m - bh), "width": _num(slot * 0.7), "height": _num(bh),
             "data-class": cls.name, "data-count": str(n)},
        )
        _text(root, m + (i + 0.5) * slot, h - m + 20, cls.name, style, **{"text-anchor": "middle"})
        _text(root, m + (i + 0.5) * slot, h - m - bh - 6, str(n), style, **{"text-anchor": "middle"})
    return root


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0
    return lo, hi


def _scatter_svg(series: Sequence[ScoreSentimentSeries], style: SvgStyle) -> ET.Element:
    orientation = series[0].orientation if series else Orientation.SENT_Y
    root = _svg_root(style, "Engagement score versus sentiment")
    if orientation is Orientation.SENT_Y:
        _axes(root, style, "score (engagement)", "sentiment")
    else:
        _axes(root, style, "sentiment", "score (engagement)")
    m, w, h = style.margin, style.width, style.height
    points = [p for s in series for p in s.points]
    if not points:
        _text(root, w / 2, h / 2, "no data", style, **{"text-anchor": "middle"})
        return root
    slo, shi = _span([p[0] for p in points])
    tlo, thi = -1.0, 1.0

    def place(score: float, sent: float) -> tuple[float, float]:
        fs = (score - slo) / (shi - slo)
        ft = (sent - tlo) / (thi - tlo)
        fx, fy = (fs, ft) if orientation is Orientation.SENT_Y else (ft, fs)
        return m + fx * (w - 2 * m), h - m - fy * (h - 2 * m)

    for i, s in enumerate(series):
        g = ET.SubElement(root, "g", {"id": f"series-{s.scorer.value}", "fill": style.color(s.scorer), "fill-opacity": "0.6"})
        for score, sent in s.points:
            x, y = place(score, sent)
            ET.SubElement(g, "circle", {"cx": _num(x), "cy": _num(y), "r": "3"})
        ly = m / 2 + i * (style.font_size + 4)
        ET.SubElement(root, "rect", {"x": _num(w - m - 120), "y": _num(ly - 10), "width": "10", "height": "10", "fill": style.color(s.scorer)})
        _text(root, w - m - 105, ly, s.scorer.value, style)
    return root


def emit_svg(obj, path: str | Path, style: SvgStyle = SvgStyle()) -> None:
    """Write a bar chart for a ClassCountSeries, or a scatter for a sequence of series."""
    if isinstance(obj, ClassCountSeries):
        root = _bar_svg(obj, style)
    elif isinstance(obj, ScoreSentimentSeries):
        root = _scatter_svg([obj], style)
    else:
        root = _scatter_svg(list(obj), style)
    _write(root, path)


def conclusion(report: HypothesisReport) -> str | None:
    if not report.mean_engagement:
        return None
    ordered = sorted(report.mean_engagement.items(), key=lambda kv: (-kv[1], kv[0]))
    chain = " > ".join(f"{c.name} ({v:.6g})" for c, v in ordered)
    lead = ordered[0][0].name
    if len(ordered) > 1:
        lead = f"{ordered[0][0].name} and {ordered[1][0].name}"
    return f"Conclusion ({report.scorer.value}): {lead} tweets draw the most engagement; mean engagement {chain}."


def run_summary(
    stages: Mapping[str, int],
    counts: Sequence[ClassCountSeries],
    reports: Sequence[HypothesisReport] = (),
    seed: int | None = None,
    notes: Sequence[str] = (),
) -> str:
    lines = ["Run summary", "==========="]
    if seed is not None:
        lines.append(f"seed: {seed}")
    lines.append("")
    lines.append("Corpus size by stage:")
    for stage, n in stages.items():
        lines.append(f"  {stage}: {n}")
    lines.append("")
    for series in counts:
        lines.append(f"Class counts ({series.scorer.value}, total {series.total}):")
        for cls in sorted(series.counts):
            lines.append(f"  {cls.name}: {series.counts[cls]}")
    for rep in reports:
        lines.append("")
        lines.append(f"Engagement vs extremity ({rep.scorer.value}, n = {rep.n}):")
        lines.append(f"  spearman_rho: {rep.spearman_rho:.4f}")
        lines.append(f"  pearson_r: {rep.pearson_r:.4f}")
        for cls, mean in rep.mean_engagement.items():
            lines.append(f"  mean engagement {cls.name}: {mean:.6g}")
        lines.append(f"  {rep.verdict_text}")
    lines.extend(notes)
    conclusions = [c for c in (conclusion(r) for r in reports if r.n > 0) if c]
    if conclusions:
        lines.append("")
        lines.extend(conclusions)
    return "\n".join(lines) + "\n"
