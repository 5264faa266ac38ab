"""
Corpus ingestion: CSV parsing, text truncation and time bucketing.
"""

import logging
import math
import re
from datetime import datetime, timezone
from pathlib import Path

import pandas as pd

from .models import AnalysisConfig, BucketSummary, Document, TimeBucket, TimeRange
from .utils import CorpusError

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("id", "date", "source", "text")
ALL_COLUMNS = ("id", "date", "source", "weight", "text")

_RE_PARSER_LINE = re.compile(r"line (?P<line>\d+)")


def parse_timestamp(value: str) -> datetime:
    stamp = pd.Timestamp(value)
    if stamp is pd.NaT:
        raise ValueError("empty date")
    if stamp.tzinfo is None:
        stamp = stamp.tz_localize(timezone.utc)
    else:
        stamp = stamp.tz_convert(timezone.utc)
    return stamp.to_pydatetime()


def _parse_weight(value: str, row: int) -> float:
    if not (value := value.strip()):
        return 1.0
    try:
        weight = float(value)
    except ValueError:
        raise CorpusError(f"invalid weight '{value}'", row=row)
    if math.isnan(weight) or math.isinf(weight):
        raise CorpusError(f"invalid weight '{value}'", row=row)
    if weight < 0:
        raise CorpusError("negative weight", row=row)
    return weight


def read_corpus_frame(path: Path) -> pd.DataFrame:
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8-sig",
            on_bad_lines="error",
            engine="python",
        )
    except pd.errors.ParserError as err:
        found = _RE_PARSER_LINE.search(str(err))
        raise CorpusError(
            f"malformed row ({err})", row=int(found.group("line")) if found else None
        )
    except pd.errors.EmptyDataError:
        raise CorpusError("corpus file is empty", row=1)
    except UnicodeDecodeError as err:
        raise CorpusError(f"corpus is not valid UTF-8 ({err.reason})")

    frame.columns = [c.strip().lower() for c in frame.columns]
    if missing := [c for c in REQUIRED_COLUMNS if c not in frame.columns]:
        raise CorpusError(f"missing column(s): {', '.join(missing)}", row=1)
    if unknown := [c for c in frame.columns if c not in ALL_COLUMNS]:
        raise CorpusError(f"unknown column(s): {', '.join(unknown)}", row=1)
    return frame


def parse_corpus(path: Path, config: AnalysisConfig) -> list[Document]:
    """
    Parse a corpus CSV with header id,date,source[,weight],text.

    Documents whose timestamps fall outside every configured interval are
    kept but flagged with in_range=False. Row numbers in errors are the file
    line on which a record starts, the header being line 1; line breaks
    inside quoted fields are counted, blank lines are not.
    """
    frame = read_corpus_frame(Path(path))
    has_weight = "weight" in frame.columns

    documents = list()
    seen = set()
    next_row = 2
    for record in frame.to_dict(orient="records"):
        row = next_row
        if any(not isinstance(value, str) for value in record.values()):
            raise CorpusError("malformed row (missing fields)", row=row)
        next_row = row + 1 + sum(value.count("\n") for value in record.values())
        if not (doc_id := record["id"].strip()):
            raise CorpusError("missing id", row=row)
        if doc_id in seen:
            raise CorpusError(f"duplicate id '{doc_id}'", row=row)
        seen.add(doc_id)

        try:
            timestamp = parse_timestamp(record["date"].strip())
        except ValueError as err:
            raise CorpusError(f"invalid date '{record['date']}' ({err})", row=row)

        weight = _parse_weight(record["weight"], row) if has_weight else 1.0

        documents.append(
            Document(
                id=doc_id,
                timestamp=timestamp,
                source=record["source"].strip(),
                text=record["text"],
                weight=weight,
                in_range=any(timestamp in interval for interval in config.intervals),
            )
        )

    logger.debug("Parsed %d documents from %s.", len(documents), path)
    return documents


def truncate_text(tokens: list[str], fraction: float) -> list[str]:
    """Leading ceil(fraction * len(tokens)) tokens."""
    if fraction >= 1:
        return list(tokens)
    return list(tokens[: math.ceil(fraction * len(tokens))])


def bucket_documents(
    docs: list[Document], intervals: list[TimeRange]
) -> tuple[list[TimeBucket], BucketSummary]:
    placed = {interval: list() for interval in intervals}
    dropped = 0
    for doc in docs:
        for interval in intervals:
            if doc.timestamp in interval:
                placed[interval].append(doc)
                break
        else:
            dropped += 1

    buckets = [TimeBucket(interval, tuple(placed[interval])) for interval in intervals]
    summary = BucketSummary(
        parsed=len(docs),
        dropped=dropped,
        counts={b.interval.label: len(b.documents) for b in buckets},
    )
    if dropped:
        logger.info("%d document(s) fall outside every interval and were dropped.", dropped)
    return buckets, summary


def generate_intervals(start: datetime, end: datetime, frequency: str) -> list[TimeRange]:
    """Consecutive half-open ranges of the given pandas frequency, the last clipped to end."""
    bounds = list(pd.date_range(start=start, end=end, freq=frequency))
    if not bounds or bounds[0] > pd.Timestamp(start):
        bounds.insert(0, pd.Timestamp(start))
    if bounds[-1] < pd.Timestamp(end):
        bounds.append(pd.Timestamp(end))
    return [
        TimeRange(a.to_pydatetime(), b.to_pydatetime())
        for a, b in zip(bounds, bounds[1:])
    ]
