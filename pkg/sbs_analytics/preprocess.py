"""
Text cleaning and normalization into stemmed token streams.

Raw text is cleaned of URLs and punctuation, split on whitespace,
lowercased, filtered against the stopword list on surface forms, stemmed
with the Snowball stemmer for the configured language, and finally brand
aliases are collapsed into the canonical brand tokens.
"""

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path

from nltk.stem.snowball import SnowballStemmer

from .corpus import truncate_text
from .models import AnalysisConfig, BrandSpec, Document, TokenStream
from .utils import ConfigError

_RE_URL = re.compile(r"(?:\b[a-z][a-z0-9+.\-]*://|\bwww\.)\S+", re.IGNORECASE)
_RE_NONWORD = re.compile(r"[^\w\s]|_")
_RE_SPACE = re.compile(r"\s+")


def bundled_languages() -> list[str]:
    folder = resources.files(__package__).joinpath("data", "stopwords")
    return sorted(
        entry.name.removesuffix(".txt")
        for entry in folder.iterdir()
        if entry.name.endswith(".txt")
    )


def supported_languages() -> list[str]:
    return [lang for lang in bundled_languages() if lang in SnowballStemmer.languages]


@dataclass(frozen=True)
class StopwordList:
    language: str
    words: frozenset[str]

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self):
        return len(self.words)


def parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for line in text.splitlines():
        if word := line.split("#", 1)[0].strip().lower():
            words.add(word)
    return frozenset(words)


@lru_cache(maxsize=None)
def load_stopwords(language: str, path: Path | None = None) -> StopwordList:
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    else:
        if language not in bundled_languages():
            raise ConfigError(f"No bundled stopword list for language '{language}'.")
        text = (
            resources.files(__package__)
            .joinpath("data", "stopwords", f"{language}.txt")
            .read_text(encoding="utf-8")
        )
    return StopwordList(language, parse_stopwords(text))


@lru_cache(maxsize=None)
def get_stemmer(language: str) -> SnowballStemmer:
    if language not in SnowballStemmer.languages:
        raise ConfigError(f"Unsupported language '{language}'.")
    return SnowballStemmer(language)


@lru_cache(maxsize=262144)
def stem_word(language: str, word: str) -> str:
    return get_stemmer(language).stem(word)


def clean_text(raw: str) -> str:
    text = _RE_URL.sub(" ", raw)
    text = _RE_NONWORD.sub(" ", text)
    return _RE_SPACE.sub(" ", text).strip()


def tokenize_and_normalize(clean: str, stopwords: StopwordList, language: str) -> list[str]:
    return [
        stem_word(language, word)
        for word in clean.lower().split()
        if word not in stopwords
    ]


def normalize_brands(
    brands: list[BrandSpec], stopwords: StopwordList, language: str
) -> tuple[BrandSpec, ...]:
    """Run every alias through the token pipeline and check for collisions."""
    owners = dict()
    out = list()
    for brand in brands:
        patterns = list()
        for alias in brand.aliases:
            if not (pattern := tuple(tokenize_and_normalize(clean_text(alias), stopwords, language))):
                raise ConfigError(
                    f"Alias '{alias}' of brand '{brand.canonical_id}' is empty after normalization."
                )
            if (owner := owners.get(pattern)) and owner != brand.canonical_id:
                raise ConfigError(
                    f"Alias '{alias}' of brand '{brand.canonical_id}' collides with brand '{owner}'."
                )
            owners[pattern] = brand.canonical_id
            if pattern not in patterns:
                patterns.append(pattern)
        out.append(replace(brand, patterns=tuple(patterns)))
    return tuple(out)


@lru_cache(maxsize=64)
def _alias_index(brands: tuple[BrandSpec, ...]) -> tuple[dict[tuple[str, ...], str], int]:
    index = dict()
    for brand in brands:
        for pattern in brand.alias_patterns():
            if (owner := index.get(pattern)) and owner != brand.canonical_id:
                raise ConfigError(
                    f"Brands '{owner}' and '{brand.canonical_id}' share alias '{' '.join(pattern)}'."
                )
            index[pattern] = brand.canonical_id
    longest = max((len(p) for p in index), default=0)
    return index, longest


def collapse_brand_aliases(tokens: list[str], brands: list[BrandSpec]) -> list[str]:
    """Replace alias n-grams by canonical ids, longest match first, left to right."""
    index, longest = _alias_index(tuple(brands))
    if not longest:
        return list(tokens)

    out = list()
    position = 0
    total = len(tokens)
    while position < total:
        for size in range(min(longest, total - position), 0, -1):
            if (canonical := index.get(tuple(tokens[position : position + size]))) is not None:
                out.append(canonical)
                position += size
                break
        else:
            out.append(tokens[position])
            position += 1
    return out


def text_tokens(text: str, config: AnalysisConfig) -> list[str]:
    """Clean, normalize and collapse text without truncation."""
    stopwords = load_stopwords(config.language, config.stopwords_path)
    tokens = tokenize_and_normalize(clean_text(text), stopwords, config.language)
    return collapse_brand_aliases(tokens, config.brands)


def preprocess_document(doc: Document, config: AnalysisConfig) -> TokenStream:
    tokens = truncate_text(text_tokens(doc.text, config), config.text_fraction)
    return TokenStream(doc_id=doc.id, tokens=tuple(tokens), weight=doc.weight)
