import math
import random

import pytest

from sbs_analytics.models import Document
from sbs_analytics.sentiment import (
    EXCLAMATION_INCREMENT,
    NEGATION_SCALAR,
    brand_sentences,
    brand_sentiment,
    load_lexicon,
    parse_lexicon,
    score_sentence,
    split_sentences,
)
from sbs_analytics.utils import ConfigError

from .conftest import utc


def normalized(s: float) -> float:
    return s / math.sqrt(s * s + 15)


def test_single_word(toy_lexicon):
    assert score_sentence("good", toy_lexicon) == pytest.approx(2 / math.sqrt(19), abs=1e-12)
    assert score_sentence("Good.", toy_lexicon) == pytest.approx(0.4588, abs=1e-4)
    assert score_sentence("nothing here", toy_lexicon) == 0.0


def test_negation(toy_lexicon):
    expected = normalized(2 * NEGATION_SCALAR)
    assert score_sentence("not good", toy_lexicon) == pytest.approx(expected, abs=1e-12)
    assert score_sentence("not good", toy_lexicon) == pytest.approx(-0.35696, abs=1e-5)
    # Negators more than three words back do not count.
    assert score_sentence("not one two three good", toy_lexicon) == pytest.approx(normalized(2.0))


def test_intensifier(toy_lexicon):
    assert score_sentence("very good", toy_lexicon) == pytest.approx(normalized(2.293))
    assert score_sentence("very bad", toy_lexicon) == pytest.approx(normalized(-2.293))
    assert score_sentence("barely good", toy_lexicon) == pytest.approx(normalized(1.707))


def test_exclamations(toy_lexicon):
    assert score_sentence("good!", toy_lexicon) == pytest.approx(
        normalized(2 + EXCLAMATION_INCREMENT)
    )
    assert score_sentence("bad!!!!!", toy_lexicon) == pytest.approx(
        normalized(-2 - 3 * EXCLAMATION_INCREMENT)
    )
    assert score_sentence("nothing!", toy_lexicon) == 0.0


def test_scores_are_bounded(toy_lexicon):
    rng = random.Random(2)
    words = ["good", "bad", "great", "awful", "not", "very", "barely", "plain"]
    for _ in range(500):
        sentence = " ".join(rng.choice(words) for _ in range(rng.randint(1, 30)))
        sentence += "!" * rng.randint(0, 4)
        assert -1 < score_sentence(sentence, toy_lexicon) < 1


def test_split_sentences():
    assert split_sentences("Alpha is good. Beta is bad!  Why? ok") == [
        "Alpha is good.",
        "Beta is bad!",
        "Why?",
        "ok",
    ]
    assert split_sentences("version 1.5 ships") == ["version 1.5 ships"]


def test_parse_lexicon():
    valence = parse_lexicon("good\t1.9\t0.5\t[1, 2]\nBad\t-2.5\n\n")
    assert valence == {"good": 1.9, "bad": -2.5}
    with pytest.raises(ConfigError):
        parse_lexicon("good\n")
    with pytest.raises(ConfigError):
        parse_lexicon("good\tvery\n")


def test_default_lexicon():
    lexicon = load_lexicon()
    assert lexicon.valence["good"] > 0
    assert lexicon.valence["terrible"] < 0
    assert "not" in lexicon.negators
    assert "very" in lexicon.intensifiers


def test_custom_lexicon_file(tmp_path):
    path = tmp_path / "lexicon.txt"
    path.write_text("shiny\t2.0\n", encoding="utf-8")
    assert load_lexicon(path).valence == {"shiny": 2.0}


def test_brand_sentiment(make_config, toy_lexicon):
    config = make_config()
    (alpha, beta) = config.brands
    docs = [
        Document("1", utc(2024, 1, 2), "s", "Alpha Corp is good. Beta is bad.", weight=1.0),
        Document("2", utc(2024, 1, 3), "s", "alpha not good", weight=3.0),
        Document("3", utc(2024, 1, 3), "s", "alpha great", weight=0.0),
    ]
    assert brand_sentences(docs[0], alpha, config) == ["Alpha Corp is good."]

    result = brand_sentiment(docs, alpha, toy_lexicon, config, interval="2024-01-01")
    expected = (normalized(2.0) + 3 * normalized(2 * NEGATION_SCALAR)) / 4
    assert result.score == pytest.approx(expected)
    assert result.sentence_count == 2
    assert result.interval == "2024-01-01"

    beta_result = brand_sentiment(docs, beta, toy_lexicon, config)
    assert beta_result.score == pytest.approx(normalized(-2.0))

    nobody = brand_sentiment(docs[2:], beta, toy_lexicon, config)
    assert nobody.score == 0.0
    assert nobody.sentence_count == 0


def test_brand_sentiment_weight_scale_invariant(make_config, toy_lexicon):
    config = make_config()
    alpha = config.brands[0]
    texts = ["Alpha good.", "Alpha very bad!", "alpha great. Alpha not awful"]
    docs = [Document(str(i), utc(2024, 1, 2), "s", t, weight=w) for i, (t, w) in enumerate(zip(texts, [1, 2, 3]))]
    scaled = [Document(d.id, d.timestamp, d.source, d.text, weight=7 * d.weight) for d in docs]
    assert brand_sentiment(docs, alpha, toy_lexicon, config).score == pytest.approx(
        brand_sentiment(scaled, alpha, toy_lexicon, config).score, abs=1e-12
    )


def test_shared_sentence_counts_for_both_brands(make_config, toy_lexicon):
    config = make_config()
    alpha, beta = config.brands
    doc = Document("1", utc(2024, 1, 2), "s", "Alpha Corp and beta are good. Beta alone is bad.")
    assert brand_sentences(doc, alpha, config) == ["Alpha Corp and beta are good."]
    assert brand_sentences(doc, beta, config) == ["Alpha Corp and beta are good.", "Beta alone is bad."]
    assert brand_sentiment([doc], alpha, toy_lexicon, config).score == pytest.approx(normalized(2.0))
    assert brand_sentiment([doc], beta, toy_lexicon, config).sentence_count == 2


def test_brand_sentiment_duplicate_halves(make_config, toy_lexicon):
    config = make_config()
    alpha = config.brands[0]
    rng = random.Random(6)
    words = ["good", "bad", "great", "awful", "not", "very", "plain"]
    docs = list()
    for i in range(20):
        text = f"Alpha {' '.join(rng.choice(words) for _ in range(4))}. beta plain."
        docs.append(Document(str(i), utc(2024, 1, 2), "s", text, weight=float(rng.randint(1, 4))))
    halves = [
        Document(f"{d.id}-{copy}", d.timestamp, d.source, d.text, weight=d.weight / 2)
        for d in docs
        for copy in (1, 2)
    ]
    once = brand_sentiment(docs, alpha, toy_lexicon, config)
    split = brand_sentiment(halves, alpha, toy_lexicon, config)
    assert split.score == pytest.approx(once.score, abs=1e-12)
    assert split.sentence_count == 2 * once.sentence_count
