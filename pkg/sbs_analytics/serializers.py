import json
from pathlib import Path

import pandas as pd

from .models import BrandSentiment, Embedding2D, SbsResult

RESULT_COLUMNS = [
    "interval",
    "brand",
    "prev_raw",
    "div_raw",
    "conn_raw",
    "prev_std",
    "div_std",
    "conn_std",
    "sbs",
    "prop_sbs",
    "sentiment",
    "sentences",
]


def write_json(path: Path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def write_frame(path: Path, frame: pd.DataFrame):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")


def result_records(results: list[SbsResult], sentiments: list[BrandSentiment]) -> list[dict]:
    by_key = {(s.interval, s.brand): s for s in sentiments}
    records = list()
    for result in results:
        record = result.serialize()
        sentiment = by_key.get((result.interval, result.brand))
        record["sentiment"] = sentiment.score if sentiment else 0.0
        record["sentences"] = sentiment.sentence_count if sentiment else 0
        records.append(record)
    return records


def write_results(out_dir: Path, records: list[dict]):
    write_frame(out_dir / "results.csv", pd.DataFrame(records, columns=RESULT_COLUMNS))
    write_json(out_dir / "results.json", records)


def write_associations(
    out_dir: Path,
    associations: dict[str, list[tuple[str, float]]],
    unique: dict[str, list[str]],
):
    rows = list()
    for brand, ranked in associations.items():
        special = set(unique.get(brand, ()))
        for rank, (word, weight) in enumerate(ranked, start=1):
            rows.append([brand, rank, word, weight, word in special])
    write_frame(
        out_dir / "associations.csv",
        pd.DataFrame(rows, columns=["brand", "rank", "word", "weight", "unique"]),
    )


def write_similarity(out_dir: Path, similarity: pd.DataFrame):
    frame = similarity.copy()
    frame.insert(0, "brand", frame.index)
    write_frame(out_dir / "similarity.csv", frame)


def write_embedding(out_dir: Path, embedding: Embedding2D):
    rows = [[brand, x, y] for brand, (x, y) in embedding.coordinates.items()]
    write_frame(out_dir / "embedding.csv", pd.DataFrame(rows, columns=["brand", "x", "y"]))


def write_ranked(out_dir: Path, name: str, key: str, ranked: dict[str, list[tuple]], columns: list[str]):
    rows = list()
    for owner, items in ranked.items():
        for rank, item in enumerate(items, start=1):
            rows.append([owner, rank, *item])
    write_frame(out_dir / name, pd.DataFrame(rows, columns=[key, "rank", *columns]))
