import random
import shutil
from datetime import datetime, timezone
from pathlib import Path

import pytest

from sbs_analytics.models import AnalysisConfig, BrandSpec, TimeRange
from sbs_analytics.networks import CoocNetwork
from sbs_analytics.preprocess import load_stopwords, normalize_brands
from sbs_analytics.sentiment import SentimentLexicon

FIXTURES = Path(__file__).parent / "fixtures"


def utc(*args) -> datetime:
    return datetime(*args, tzinfo=timezone.utc)


@pytest.fixture
def make_config():
    def factory(brands=None, **kwargs):
        brands = brands or [BrandSpec("alpha", ("Alpha Corp", "alpha")), BrandSpec("beta", ("beta",))]
        intervals = kwargs.pop(
            "intervals",
            (TimeRange(utc(2024, 1, 1), utc(2024, 1, 8)), TimeRange(utc(2024, 1, 8), utc(2024, 1, 15))),
        )
        language = kwargs.get("language", "english")
        stopwords = load_stopwords(language, kwargs.get("stopwords_path"))
        return AnalysisConfig(
            intervals=intervals,
            brands=normalize_brands(brands, stopwords, language),
            **kwargs,
        )

    return factory


@pytest.fixture
def toy_lexicon():
    return SentimentLexicon(
        valence={"good": 2.0, "bad": -2.0, "great": 3.1, "awful": -2.5},
        negators=frozenset({"not", "never"}),
        intensifiers={"very": 0.293, "barely": -0.293},
    )


@pytest.fixture
def random_network():
    """Random connected network: a random spanning tree plus extra edges."""

    def factory(rng: random.Random, n: int, extra: int = 3, weights=(1.0, 2.0, 4.0, 0.5)):
        nodes = [f"w{i}" for i in range(n)]
        edges = dict()
        for i in range(1, n):
            j = rng.randrange(i)
            edges[(nodes[j], nodes[i])] = rng.choice(weights)
        for _ in range(extra):
            a, b = rng.sample(nodes, 2)
            if (a, b) not in edges and (b, a) not in edges:
                edges[(a, b)] = rng.choice(weights)
        freq = {node: float(rng.randint(1, 9)) for node in nodes}
        return CoocNetwork.from_data(freq, edges)

    return factory


@pytest.fixture
def campaign(tmp_path) -> Path:
    """A writable copy of the bundled campaign fixture; returns its config path."""
    target = tmp_path / "campaign"
    shutil.copytree(FIXTURES / "campaign", target)
    return target / "config.yaml"
