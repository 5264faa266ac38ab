"""
Chart payloads and the static HTML report.

Charts are drawn with matplotlib's object API and inlined as SVG, so the
report is one self-contained file. SVG ids are salted with a constant and
the date metadata is dropped, which keeps the output byte-stable.
"""

import io
from html import escape
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .metrics import Standardizer
from .models import ChartData, NodeScores, Standardization
from .serializers import write_json

SVG_SETTINGS = {"svg.hashsalt": "sbs-analytics", "svg.fonttype": "none"}
DIMENSION_LABELS = ("Prevalence", "Diversity", "Connectivity")
NO_DATA = '<p class="no-data">no data</p>'

SECTIONS = (
    ("trends", "SBS time trends"),
    ("proportional", "Proportional SBS"),
    ("positioning", "Brand positioning"),
    ("stacked", "Average SBS contributions"),
    ("associations", "Most common words and brand associations"),
    ("similarity", "Brand image similarity"),
    ("targets", "Target words"),
    ("topics", "Main discourse topics"),
)

STYLE = """
body { font-family: sans-serif; margin: 2em auto; max-width: 60em; color: #222; }
section { margin-bottom: 3em; }
table { border-collapse: collapse; margin: 0.5em 0 1em 0; }
th, td { border: 1px solid #ccc; padding: 0.2em 0.6em; text-align: left; }
.no-data { color: #888; font-style: italic; }
.unique { font-weight: bold; }
"""


def rescale_0_100(scores: NodeScores, brands: list[str]) -> dict[str, list[float]]:
    """Each dimension min-max mapped to [0, 100] over all nodes, read off per brand."""
    out = {brand: list() for brand in brands}
    for name in NodeScores.DIMENSIONS:
        values = scores.dimension(name)
        scaler = Standardizer(values.values() or [0.0], Standardization.MIN_MAX)
        for brand in brands:
            # Absent brands can fall below the distribution minimum.
            out[brand].append(100.0 * min(max(scaler(values.get(brand, 0.0)), 0.0), 1.0))
    return out


def _svg(fig: Figure) -> str:
    buffer = io.StringIO()
    with matplotlib.rc_context(SVG_SETTINGS):
        fig.savefig(buffer, format="svg", metadata={"Date": None}, bbox_inches="tight")
    text = buffer.getvalue()
    return text[text.index("<svg") :]


def _table(headers: list[str], rows: list[list], classes: list[str] | None = None) -> str:
    if not rows:
        return NO_DATA
    head = "".join(f"<th>{escape(str(h))}</th>" for h in headers)
    body = list()
    for i, row in enumerate(rows):
        css = f' class="{classes[i]}"' if classes and classes[i] else ""
        cells = "".join(f"<td>{escape(_fmt(v))}</td>" for v in row)
        body.append(f"<tr{css}>{cells}</tr>")
    return f"<table><tr>{head}</tr>{''.join(body)}</table>"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _has_values(series: dict[str, list]) -> bool:
    return any(v is not None for values in series.values() for v in values)


def _line_chart(chart: ChartData, key: str, ylabel: str, scale: float = 1.0) -> str:
    series = {b: chart.time_trends.get(b, {}).get(key, []) for b in chart.brands}
    if not chart.intervals or not _has_values(series):
        return NO_DATA
    fig = Figure(figsize=(7, 3.5))
    ax = fig.add_subplot()
    x = np.arange(len(chart.intervals))
    for brand, values in series.items():
        y = [np.nan if v is None else v * scale for v in values]
        ax.plot(x, y, marker="o", label=brand)
    ax.set_xticks(x, chart.intervals, rotation=30, ha="right")
    ax.set_ylabel(ylabel)
    ax.legend(loc="best", fontsize="small")
    notes = ""
    if empty := [
        label
        for i, label in enumerate(chart.intervals)
        if all(values[i] is None for values in series.values())
    ]:
        notes = f"<p class=\"no-data\">no data for {escape(', '.join(empty))}</p>"
    return _svg(fig) + notes


def _positioning(chart: ChartData) -> str:
    points = list()
    for brand in chart.brands:
        data = chart.positioning.get(brand, {})
        pairs = [
            (s, v)
            for s, v in zip(data.get("sentiment", []), data.get("sbs", []))
            if s is not None and v is not None
        ]
        if pairs:
            points.append((brand, pairs))
    if not points:
        return NO_DATA
    fig = Figure(figsize=(6, 4))
    ax = fig.add_subplot()
    for brand, pairs in points:
        xs, ys = zip(*pairs)
        ax.scatter(xs, ys, label=brand)
        ax.annotate(brand, (xs[-1], ys[-1]), textcoords="offset points", xytext=(4, 4))
    ax.axvline(0, color="#999", linewidth=0.8)
    ax.set_xlim(-1, 1)
    ax.set_xlabel("Sentiment")
    ax.set_ylabel("SBS")
    return _svg(fig)


def _stacked(chart: ChartData) -> str:
    brands = [b for b in chart.brands if b in chart.stacked]
    if not brands:
        return NO_DATA
    fig = Figure(figsize=(6, 3.5))
    ax = fig.add_subplot()
    bottom = np.zeros(len(brands))
    for i, label in enumerate(DIMENSION_LABELS):
        values = np.array([chart.stacked[b][i] for b in brands])
        ax.bar(brands, values, bottom=bottom, label=label)
        bottom += values
    ax.set_ylabel("Rescaled score [0, 100]")
    ax.legend(loc="best", fontsize="small")
    rows = [[b, *chart.stacked[b]] for b in brands]
    return _svg(fig) + _table(["Brand", *DIMENSION_LABELS], rows)


def _associations(chart: ChartData) -> str:
    parts = list()
    for label, words in chart.top_words.items():
        parts.append(f"<h3>Most common words: {escape(label)}</h3>")
        parts.append(_table(["Word", "Frequency"], words))
    for brand in chart.brands:
        ranked = chart.associations.get(brand, [])
        special = set(chart.unique_associations.get(brand, []))
        parts.append(f"<h3>Associations: {escape(brand)}</h3>")
        parts.append(
            _table(
                ["Word", "Weight"],
                ranked,
                ["unique" if word in special else "" for word, _ in ranked],
            )
        )
    if chart.unique_trend and chart.intervals:
        parts.append("<h3>Unique associations over time</h3>")
        parts.append(
            _table(
                ["Brand", *chart.intervals],
                [[b, *chart.unique_trend.get(b, [])] for b in chart.brands],
            )
        )
    if not any(chart.top_words.values()) and not any(chart.associations.values()):
        return NO_DATA
    return "".join(parts)


def _similarity(chart: ChartData) -> str:
    if not chart.embedding:
        return NO_DATA
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    for brand, point in chart.embedding.items():
        ax.scatter([point["x"]], [point["y"]])
        ax.annotate(brand, (point["x"], point["y"]), textcoords="offset points", xytext=(4, 4))
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xticks([])
    ax.set_yticks([])
    brands = list(chart.similarity)
    rows = [[b, *(chart.similarity[b][o] for o in brands)] for b in brands]
    return _svg(fig) + _table(["", *brands], rows)


def _targets(chart: ChartData) -> str:
    parts = list()
    for brand in chart.brands:
        if words := chart.target_words.get(brand, []):
            parts.append(f"<h3>{escape(brand)}</h3>")
            parts.append(_table(["Word", "Projected connectivity"], words))
    return "".join(parts) or NO_DATA


def _topics(chart: ChartData) -> str:
    topics = chart.topics.get("topics", [])
    if not topics:
        return NO_DATA
    parts = [
        f"<p>Modularity {chart.topics.get('modularity', 0.0):.4f}, seed {escape(str(chart.topics.get('seed')))}.</p>"
    ]
    for topic in topics:
        parts.append(
            f"<h3>Topic {topic['cluster']} (importance {topic['importance']:.4f}, {topic['size']} words)</h3>"
        )
        parts.append(_table(["Word", "IW"], [[w["word"], w["iw"]] for w in topic["words"]]))
        links = [[b, w] for b, w in topic["brand_links"].items()]
        parts.append(_table(["Brand", "Link weight"], links))
    if links := chart.topics.get("links", []):
        rows = [[link["source"], link["target"], link["weight"]] for link in links]
        parts.append("<h3>Links between topics</h3>")
        parts.append(_table(["Topic", "Topic", "Link weight"], rows))
    return "".join(parts)


def render_sections(chart: ChartData) -> dict[str, str]:
    return {
        "trends": _line_chart(chart, "sbs", "SBS"),
        "proportional": _line_chart(chart, "proportional", "Share of SBS (%)", scale=100.0),
        "positioning": _positioning(chart),
        "stacked": _stacked(chart),
        "associations": _associations(chart),
        "similarity": _similarity(chart),
        "targets": _targets(chart),
        "topics": _topics(chart),
    }


def emit_report(chart: ChartData, out_dir: Path):
    out_dir = Path(out_dir)
    write_json(out_dir / "charts.json", chart.serialize())

    rendered = render_sections(chart)
    body = list()
    for key, title in SECTIONS:
        body.append(f'<section id="{key}"><h2>{escape(title)}</h2>{rendered[key]}</section>')
    html = (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        "<title>Semantic Brand Score report</title>"
        f"<style>{STYLE}</style></head><body>"
        "<h1>Semantic Brand Score report</h1>"
        + "\n".join(body)
        + "</body></html>\n"
    )
    (out_dir / "report.html").write_text(html, encoding="utf-8")
