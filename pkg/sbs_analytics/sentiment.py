"""
Lexicon and rule based sentence sentiment, aggregated per brand over the
sentences that mention it.
"""

import logging
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from vaderSentiment.vaderSentiment import BOOSTER_DICT, NEGATE

from .models import AnalysisConfig, BrandSentiment, BrandSpec, Document
from .preprocess import text_tokens
from .utils import ConfigError

logger = logging.getLogger(__name__)

NEGATION_SCALAR = -0.74
EXCLAMATION_INCREMENT = 0.292
MAX_EXCLAMATIONS = 3
NORMALIZATION_ALPHA = 15
WINDOW = 3

_RE_SENTENCE_END = re.compile(r"(?<=[.!?])\s+")
_RE_WORD = re.compile(r"[\w']+")
_RE_EXCLAMATIONS = re.compile(r"!+$")


@dataclass(frozen=True)
class SentimentLexicon:
    valence: dict[str, float]
    negators: frozenset[str] = field(default_factory=frozenset)
    intensifiers: dict[str, float] = field(default_factory=dict)


def parse_lexicon(text: str) -> dict[str, float]:
    """Read 'token<TAB>valence<TAB>...' lines; only the first two columns are used."""
    valence = dict()
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.strip("\n").split("\t")
        if len(parts) < 2:
            raise ConfigError(f"Lexicon line {number} has no valence column.")
        try:
            valence[parts[0].strip().lower()] = float(parts[1])
        except ValueError:
            raise ConfigError(f"Lexicon line {number} has invalid valence '{parts[1]}'.")
    return valence


def load_lexicon(path: Path | None = None) -> SentimentLexicon:
    if path is None:
        text = resources.files("vaderSentiment").joinpath("vader_lexicon.txt").read_text(
            encoding="utf-8"
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    return SentimentLexicon(
        valence=parse_lexicon(text),
        negators=frozenset(word.lower() for word in NEGATE),
        intensifiers={word.lower(): value for word, value in BOOSTER_DICT.items()},
    )


def split_sentences(raw: str) -> list[str]:
    """Split after '.', '!' or '?' followed by whitespace; terminators stay attached."""
    return [s.strip() for s in _RE_SENTENCE_END.split(raw) if s.strip()]


def brand_sentences(doc: Document, brand: BrandSpec, config: AnalysisConfig) -> list[str]:
    return [
        sentence
        for sentence in split_sentences(doc.text)
        if brand.canonical_id in text_tokens(sentence, config)
    ]


def score_sentence(sentence: str, lexicon: SentimentLexicon) -> float:
    words = _RE_WORD.findall(sentence.lower())
    total = 0.0
    for i, word in enumerate(words):
        if not (valence := lexicon.valence.get(word, 0.0)):
            continue
        preceding = words[max(0, i - WINDOW) : i]
        for other in preceding:
            if other in lexicon.negators:
                valence *= NEGATION_SCALAR
        for other in preceding:
            if (increment := lexicon.intensifiers.get(other)) is not None:
                valence = math.copysign(max(abs(valence) + increment, 0.0), valence)
        total += valence

    if total and (found := _RE_EXCLAMATIONS.search(sentence.rstrip())):
        bonus = min(len(found.group(0)), MAX_EXCLAMATIONS) * EXCLAMATION_INCREMENT
        total = math.copysign(abs(total) + bonus, total)

    return total / math.sqrt(total * total + NORMALIZATION_ALPHA)


def brand_sentiment(
    docs: list[Document],
    brand: BrandSpec,
    lexicon: SentimentLexicon,
    config: AnalysisConfig,
    interval: str = "",
) -> BrandSentiment:
    """Document-weight-weighted mean score of the brand's sentences."""
    weighted = 0.0
    weights = 0.0
    count = 0
    for doc in docs:
        if doc.weight <= 0:
            continue
        for sentence in brand_sentences(doc, brand, config):
            weighted += doc.weight * score_sentence(sentence, lexicon)
            weights += doc.weight
            count += 1

    score = weighted / weights if weights else 0.0
    return BrandSentiment(
        brand=brand.canonical_id, interval=interval, score=score, sentence_count=count
    )
