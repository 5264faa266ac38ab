import random

import pytest

from sbs_analytics.corpus import (
    bucket_documents,
    generate_intervals,
    parse_corpus,
    parse_timestamp,
    truncate_text,
)
from sbs_analytics.models import Document, TimeRange
from sbs_analytics.utils import ConfigError, CorpusError

from .conftest import utc

HEADER = "id,date,source,text\n"


def write(tmp_path, text: str):
    path = tmp_path / "corpus.csv"
    path.write_text(text, encoding="utf-8")
    return path


def test_parse_corpus(tmp_path, make_config):
    path = write(
        tmp_path,
        HEADER
        + '1,2024-01-02,news,"Alpha Corp, again."\n'
        + "2,2024-01-09T10:00:00+02:00,blog,beta rises\n"
        + "3,2023-06-01,blog,too early\n",
    )
    docs = parse_corpus(path, make_config())
    assert [d.id for d in docs] == ["1", "2", "3"]
    assert docs[0].text == "Alpha Corp, again."
    assert docs[1].timestamp == utc(2024, 1, 9, 8)
    assert docs[0].weight == 1.0
    assert [d.in_range for d in docs] == [True, True, False]


def test_parse_corpus_weights(tmp_path, make_config):
    path = write(tmp_path, "id,date,source,weight,text\n1,2024-01-02,news,2.5,x\n2,2024-01-02,news,,y\n")
    docs = parse_corpus(path, make_config())
    assert [d.weight for d in docs] == [2.5, 1.0]


@pytest.mark.parametrize(
    "body,row,fragment",
    [
        ("1,2024-01-02,news,a\n1,2024-01-03,news,b\n", 3, "duplicate id"),
        ("1,2024-01-02,news,a\n2,not-a-date,news,b\n", 3, "invalid date"),
        ("1,2024-01-02,news,a\n,2024-01-02,news,b\n", 3, "missing id"),
        ("1,2024-01-02,news,a\n2,2024-01-02,news,b,extra\n", 3, "malformed row"),
    ],
)
def test_parse_corpus_errors(tmp_path, make_config, body, row, fragment):
    with pytest.raises(CorpusError) as err:
        parse_corpus(write(tmp_path, HEADER + body), make_config())
    assert err.value.row == row
    assert fragment in str(err.value)
    assert str(err.value).startswith(f"row {row}: ")


def test_parse_corpus_negative_weight(tmp_path, make_config):
    path = write(tmp_path, "id,date,source,weight,text\n1,2024-01-02,news,-1,x\n")
    with pytest.raises(CorpusError, match="negative weight"):
        parse_corpus(path, make_config())


def test_parse_corpus_missing_column(tmp_path, make_config):
    with pytest.raises(CorpusError, match="missing column"):
        parse_corpus(write(tmp_path, "id,date,text\n1,2024-01-02,x\n"), make_config())


def test_parse_timestamp_is_utc():
    assert parse_timestamp("2024-01-01") == utc(2024, 1, 1)
    assert parse_timestamp("2024-01-01T03:00:00-02:00") == utc(2024, 1, 1, 5)
    with pytest.raises(ValueError):
        parse_timestamp("")


@pytest.mark.parametrize(
    "fraction,expected",
    [(1.0, 5), (0.5, 3), (0.3, 2), (0.01, 1), (0.7, 4)],
)
def test_truncate_text(fraction, expected):
    tokens = ["a", "b", "c", "d", "e"]
    assert truncate_text(tokens, fraction) == tokens[:expected]
    assert truncate_text([], fraction) == []


def test_bucket_documents_half_open():
    week1 = TimeRange(utc(2024, 1, 1), utc(2024, 1, 8))
    week2 = TimeRange(utc(2024, 1, 8), utc(2024, 1, 15))
    docs = [
        Document("a", utc(2024, 1, 1), "s", "x"),
        Document("b", utc(2024, 1, 8), "s", "x"),
        Document("c", utc(2024, 1, 14, 23, 59), "s", "x"),
        Document("d", utc(2024, 1, 15), "s", "x"),
    ]
    buckets, summary = bucket_documents(docs, [week1, week2])
    assert [d.id for d in buckets[0].documents] == ["a"]
    assert [d.id for d in buckets[1].documents] == ["b", "c"]
    assert summary.dropped == 1
    assert summary.parsed == 4
    assert summary.counts == {"2024-01-01": 1, "2024-01-08": 2}


def test_time_range_rejects_empty():
    with pytest.raises(ConfigError):
        TimeRange(utc(2024, 1, 8), utc(2024, 1, 8))


def test_generate_intervals():
    weeks = generate_intervals(utc(2024, 1, 1), utc(2024, 1, 15), "W-MON")
    assert [w.label for w in weeks] == ["2024-01-01", "2024-01-08"]
    assert weeks[-1].end == utc(2024, 1, 15)

    ragged = generate_intervals(utc(2024, 1, 3), utc(2024, 1, 10), "W-MON")
    assert [(w.start, w.end) for w in ragged] == [
        (utc(2024, 1, 3), utc(2024, 1, 8)),
        (utc(2024, 1, 8), utc(2024, 1, 10)),
    ]


def test_sub_daily_intervals_keep_distinct_labels():
    halves = generate_intervals(utc(2024, 1, 1), utc(2024, 1, 2), "12h")
    assert [h.label for h in halves] == ["2024-01-01", "2024-01-01T120000"]
    docs = [
        Document("a", utc(2024, 1, 1, 3), "s", "x"),
        Document("b", utc(2024, 1, 1, 15), "s", "x"),
    ]
    _, summary = bucket_documents(docs, halves)
    assert summary.counts == {"2024-01-01": 1, "2024-01-01T120000": 1}
    assert sum(summary.counts.values()) == 2


def test_parse_corpus_rows_follow_file_lines(tmp_path, make_config):
    body = (
        '1,2024-01-02,news,"first line\nsecond line\nthird line"\n'
        "2,2024-01-02,news,plain\n"
        "1,2024-01-03,news,again\n"
    )
    with pytest.raises(CorpusError) as err:
        parse_corpus(write(tmp_path, HEADER + body), make_config())
    assert err.value.row == 6
    assert "duplicate id" in str(err.value)


def test_parse_corpus_accepts_byte_order_mark(tmp_path, make_config):
    docs = parse_corpus(write(tmp_path, "\ufeff" + HEADER + "1,2024-01-02,news,x\n"), make_config())
    assert [d.id for d in docs] == ["1"]


def test_truncate_text_repeated():
    rng = random.Random(5)
    for _ in range(200):
        tokens = [f"t{i}" for i in range(rng.randint(0, 40))]
        fraction = rng.choice([0.1, 0.25, 0.5, 0.9, 1.0])
        once = truncate_text(tokens, fraction)
        assert truncate_text(once, 1.0) == once
        twice = truncate_text(once, fraction)
        assert twice == tokens[: len(twice)]
        if fraction == 1.0 or len(once) <= 1:
            assert twice == once
    # Not idempotent below 1: ceil(0.5 * ceil(0.5 * 10)) = 3.
    assert len(truncate_text(truncate_text(list("abcdefghij"), 0.5), 0.5)) == 3


def test_bucket_sizes_and_drops_cover_corpus():
    rng = random.Random(9)
    intervals = [
        TimeRange(utc(2024, 1, 1), utc(2024, 1, 8)),
        TimeRange(utc(2024, 1, 10), utc(2024, 1, 17)),
    ]
    for _ in range(50):
        docs = list()
        for i in range(rng.randint(0, 30)):
            if rng.random() < 0.2:
                moment = utc(2023, 12, rng.randint(28, 31), rng.randint(0, 23))
            else:
                moment = utc(2024, 1, rng.randint(1, 20), rng.randint(0, 23))
            docs.append(Document(str(i), moment, "s", "x"))
        buckets, summary = bucket_documents(docs, intervals)
        assert sum(len(b.documents) for b in buckets) + summary.dropped == len(docs)
        assert summary.parsed == len(docs)
