from dataclasses import dataclass, field
from datetime import datetime, time
from enum import StrEnum
from pathlib import Path

from .utils import ConfigError


class Standardization(StrEnum):
    Z_SCORE = "z_score"
    MIN_MAX = "min_max"
    MEDIAN_IQR = "median_iqr"


@dataclass(frozen=True, order=True)
class TimeRange:
    """Half-open range [start, end) of UTC datetimes."""

    start: datetime
    end: datetime

    def __post_init__(self):
        if self.end <= self.start:
            raise ConfigError(f"Interval {self.start} to {self.end} is empty.")

    def __contains__(self, moment: datetime) -> bool:
        return self.start <= moment < self.end

    @property
    def label(self) -> str:
        """The start date, with the time of day appended when it is not midnight."""
        if self.start.time() == time():
            return self.start.date().isoformat()
        return self.start.strftime("%Y-%m-%dT%H%M%S" + (".%f" if self.start.microsecond else ""))

    def serialize(self):
        return {
            "label": self.label,
            "start": self.start.isoformat(),
            "end": self.end.isoformat(),
        }


@dataclass(frozen=True)
class Document:
    id: str
    timestamp: datetime
    source: str
    text: str
    weight: float = 1.0
    # False when the timestamp lies outside every configured interval.
    in_range: bool = True


@dataclass(frozen=True)
class BrandSpec:
    canonical_id: str
    aliases: tuple[str, ...]
    # Aliases passed through the token pipeline; filled at config time.
    patterns: tuple[tuple[str, ...], ...] = ()

    def alias_patterns(self) -> tuple[tuple[str, ...], ...]:
        if self.patterns:
            return self.patterns
        return tuple(tuple(alias.lower().split()) for alias in self.aliases)

    def serialize(self):
        return {"id": self.canonical_id, "aliases": list(self.aliases)}


@dataclass(frozen=True)
class AnalysisConfig:
    intervals: tuple[TimeRange, ...]
    brands: tuple[BrandSpec, ...]
    language: str = "english"
    cooc_range: int = 7
    min_cooc: float = 0.0
    text_fraction: float = 1.0
    standardization: Standardization = Standardization.Z_SCORE
    stopwords_path: Path | None = None

    def __post_init__(self):
        if self.cooc_range < 1:
            raise ConfigError("cooc_range must be at least 1.")
        if not 0 < self.text_fraction <= 1:
            raise ConfigError("text_fraction must lie in (0, 1].")
        if self.min_cooc < 0:
            raise ConfigError("min_cooc must not be negative.")
        for before, after in zip(self.intervals, self.intervals[1:]):
            if after.start < before.end:
                raise ConfigError(
                    f"Intervals {before.label} and {after.label} overlap or are out of order."
                )
        ids = [b.canonical_id for b in self.brands]
        if len(set(ids)) != len(ids):
            raise ConfigError("Brand ids must be unique.")

    @property
    def brand_ids(self) -> list[str]:
        return [b.canonical_id for b in self.brands]


@dataclass(frozen=True)
class TimeBucket:
    interval: TimeRange
    documents: tuple[Document, ...]

    def __post_init__(self):
        for doc in self.documents:
            if doc.timestamp not in self.interval:
                raise ValueError(f"Document {doc.id} lies outside {self.interval.label}.")


@dataclass(frozen=True)
class BucketSummary:
    parsed: int
    dropped: int
    counts: dict[str, int] = field(default_factory=dict)

    def serialize(self):
        return {"dropped": self.dropped, "parsed": self.parsed}


@dataclass(frozen=True)
class TokenStream:
    doc_id: str
    tokens: tuple[str, ...]
    weight: float = 1.0


@dataclass(frozen=True)
class NodeScores:
    """Raw prevalence, diversity and connectivity of every node."""

    prevalence: dict[str, float]
    diversity: dict[str, float]
    connectivity: dict[str, float]

    DIMENSIONS = ("prevalence", "diversity", "connectivity")

    def dimension(self, name: str) -> dict[str, float]:
        return getattr(self, name)


@dataclass(frozen=True)
class SbsResult:
    brand: str
    interval: str
    raw: tuple[float, float, float]
    standardized: tuple[float, float, float]
    # Min-max rescaled triple in [0, 1] over all nodes.
    rescaled: tuple[float, float, float]
    sbs: float
    proportional_sbs: float = 0.0

    def serialize(self):
        return {
            "interval": self.interval,
            "brand": self.brand,
            "prev_raw": self.raw[0],
            "div_raw": self.raw[1],
            "conn_raw": self.raw[2],
            "prev_std": self.standardized[0],
            "div_std": self.standardized[1],
            "conn_std": self.standardized[2],
            "sbs": self.sbs,
            "prop_sbs": self.proportional_sbs,
        }


@dataclass(frozen=True)
class BrandSentiment:
    brand: str
    interval: str
    score: float = 0.0
    sentence_count: int = 0

    def serialize(self):
        return {
            "interval": self.interval,
            "brand": self.brand,
            "sentiment": self.score,
            "sentences": self.sentence_count,
        }


@dataclass(frozen=True)
class AssociationProfile:
    brand: str
    associations: dict[str, float]

    def top(self, n: int) -> list[tuple[str, float]]:
        ranked = sorted(self.associations.items(), key=lambda item: (-item[1], item[0]))
        return ranked[:n]


@dataclass
class TopicModel:
    assignment: dict[str, int] = field(default_factory=dict)
    word_importance: dict[tuple[str, int], float] = field(default_factory=dict)
    topic_importance: dict[int, float] = field(default_factory=dict)
    brand_links: dict[tuple[str, int], float] = field(default_factory=dict)
    topic_links: dict[tuple[int, int], float] = field(default_factory=dict)
    modularity: float = 0.0
    seed: int | None = None

    @property
    def clusters(self) -> list[int]:
        return sorted(set(self.assignment.values()))

    def members(self, cluster: int) -> list[str]:
        return [node for node, k in self.assignment.items() if k == cluster]

    def serialize(self, topic_words: dict[int, list[tuple[str, float]]] | None = None):
        topic_words = topic_words or dict()
        out = list()
        for k in self.clusters:
            out.append(
                {
                    "cluster": k,
                    "size": len(self.members(k)),
                    "importance": self.topic_importance.get(k, 0.0),
                    "words": [{"word": w, "iw": iw} for w, iw in topic_words.get(k, [])],
                    "brand_links": {
                        brand: weight
                        for (brand, cluster), weight in sorted(self.brand_links.items())
                        if cluster == k
                    },
                }
            )
        links = [
            {"source": a, "target": b, "weight": weight}
            for (a, b), weight in sorted(self.topic_links.items())
        ]
        return {"seed": self.seed, "modularity": self.modularity, "topics": out, "links": links}


@dataclass(frozen=True)
class Embedding2D:
    coordinates: dict[str, tuple[float, float]]

    def serialize(self):
        return {b: {"x": x, "y": y} for b, (x, y) in self.coordinates.items()}


@dataclass
class RunManifest:
    config: dict
    corpus_digest: str
    interval_counts: dict[str, int]
    seed: int
    version: str
    stage_seconds: dict[str, float] = field(default_factory=dict)
    created: str = ""
    output: str = ""

    def serialize(self):
        return {
            "version": self.version,
            "created": self.created,
            "corpus_digest": self.corpus_digest,
            "seed": self.seed,
            "interval_counts": self.interval_counts,
            "stage_seconds": self.stage_seconds,
            "config": self.config,
        }


@dataclass
class ChartData:
    brands: list[str]
    intervals: list[str]
    time_trends: dict[str, dict[str, list[float]]] = field(default_factory=dict)
    positioning: dict[str, dict[str, list[float]]] = field(default_factory=dict)
    stacked: dict[str, list[float]] = field(default_factory=dict)
    top_words: dict[str, list[list]] = field(default_factory=dict)
    associations: dict[str, list[list]] = field(default_factory=dict)
    unique_associations: dict[str, list[str]] = field(default_factory=dict)
    unique_trend: dict[str, list[int]] = field(default_factory=dict)
    similarity: dict[str, dict[str, float]] = field(default_factory=dict)
    embedding: dict[str, dict[str, float]] = field(default_factory=dict)
    topics: dict = field(default_factory=dict)
    target_words: dict[str, list[list]] = field(default_factory=dict)

    def serialize(self):
        return {
            "brands": self.brands,
            "intervals": self.intervals,
            "time_trends": self.time_trends,
            "positioning": self.positioning,
            "stacked": self.stacked,
            "top_words": self.top_words,
            "associations": self.associations,
            "unique_associations": self.unique_associations,
            "unique_trend": self.unique_trend,
            "similarity": self.similarity,
            "embedding": self.embedding,
            "topics": self.topics,
            "target_words": self.target_words,
        }
