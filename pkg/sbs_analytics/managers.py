import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import bucket_documents, parse_corpus
from .insights import (
    association_profile,
    brand_associations,
    brand_similarity,
    extract_topics,
    mds_embed,
    target_words,
    top_words,
    topic_summaries,
    unique_associations,
    word_importance,
)
from .metrics import compute_sbs, node_scores, proportional_sbs
from .models import AnalysisConfig, ChartData, RunManifest, TimeBucket, TokenStream
from .networks import CoocNetwork, build_network, export_pajek, filter_network
from .options import OptionHandler, analysis_config, load_options
from .preprocess import preprocess_document, text_tokens
from .report import emit_report, rescale_0_100
from .sentiment import brand_sentiment, load_lexicon
from .serializers import (
    result_records,
    write_associations,
    write_embedding,
    write_json,
    write_ranked,
    write_results,
    write_similarity,
)
from .utils import ConfigError, ExitStatus, Operation, SbsError, file_digest, utcnow

logger = logging.getLogger(__name__)


class PipelineError(SbsError):
    def __init__(self, stage: str, message: str, status: ExitStatus = ExitStatus.FAILURE):
        self.stage = stage
        self.status = status
        super().__init__(f"[{stage}] {message}")


@dataclass
class BucketAnalysis:
    bucket: TimeBucket
    streams: list[TokenStream] = field(default_factory=list)
    network: CoocNetwork | None = None
    results: list = field(default_factory=list)
    stacked: dict[str, list[float]] = field(default_factory=dict)
    sentiments: list = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.bucket.interval.label

    @property
    def has_data(self) -> bool:
        return self.network is not None and len(self.network) > 0


class AnalysisManager:
    """
    Runs the analysis pipeline for one config file:
    ingest, preprocess, network, metrics, sentiment, insights, emit.
    """

    def __init__(self):
        self.timings = dict()

    @contextmanager
    def stage(self, name: str):
        started = time.perf_counter()
        try:
            yield
        except PipelineError:
            raise
        except ConfigError as err:
            raise PipelineError(name, f"invalid config: {err}", ExitStatus.CONFIG_ERROR)
        except (SbsError, ValueError, OSError) as err:
            raise PipelineError(name, str(err))
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + (time.perf_counter() - started)
        logger.info("Stage '%s' finished in %.3fs.", name, self.timings[name])

    def _map(self, func, items: list, workers: int) -> list:
        if workers <= 1 or len(items) <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))

    @contextmanager
    def process_map(self, workers: int):
        """A map over a process pool for CPU-bound trials, or the builtin map."""
        if workers <= 1:
            yield map
            return
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield lambda func, items: pool.map(
                func, items, chunksize=max(1, math.ceil(len(items) / workers))
            )

    def load(self, config_path: Path, overrides: dict | None = None) -> tuple[OptionHandler, AnalysisConfig]:
        with self.stage("config"):
            handler = load_options(Path(config_path), overrides)
            config = analysis_config(handler)
        return handler, config

    def ingest(self, handler: OptionHandler, config: AnalysisConfig):
        with self.stage("ingest"):
            docs = parse_corpus(handler.get("corpus"), config)
            buckets, summary = bucket_documents(docs, list(config.intervals))
        return buckets, summary

    def preprocess(self, buckets: list[TimeBucket], config: AnalysisConfig, workers: int):
        with self.stage("preprocess"):
            return self._map(
                lambda bucket: BucketAnalysis(
                    bucket, [preprocess_document(doc, config) for doc in bucket.documents]
                ),
                buckets,
                workers,
            )

    def build_networks(self, analyses: list[BucketAnalysis], config: AnalysisConfig, workers: int) -> CoocNetwork:
        with self.stage("network"):

            def build(analysis):
                analysis.network = filter_network(
                    build_network(analysis.streams, config.cooc_range), config.min_cooc
                )

            self._map(build, analyses, workers)
            streams = [s for analysis in analyses for s in analysis.streams]
            return filter_network(build_network(streams, config.cooc_range), config.min_cooc)

    def score(self, analyses: list[BucketAnalysis], config: AnalysisConfig, workers: int):
        with self.stage("metrics"):

            def measure(analysis):
                if not analysis.has_data:
                    logger.info("Interval %s has no tokens; skipping scores.", analysis.label)
                    return
                scores = node_scores(analysis.network)
                analysis.results = proportional_sbs(
                    compute_sbs(
                        analysis.network,
                        list(config.brands),
                        config.standardization,
                        interval=analysis.label,
                        scores=scores,
                    )
                )
                analysis.stacked = rescale_0_100(scores, config.brand_ids)

            self._map(measure, analyses, workers)

    def sentiment(self, analyses: list[BucketAnalysis], config: AnalysisConfig, lexicon_path, workers: int):
        with self.stage("sentiment"):
            lexicon = load_lexicon(lexicon_path)

            def feel(analysis):
                analysis.sentiments = [
                    brand_sentiment(
                        list(analysis.bucket.documents), brand, lexicon, config, interval=analysis.label
                    )
                    for brand in config.brands
                ]

            self._map(feel, analyses, workers)

    def insights(
        self,
        analyses: list[BucketAnalysis],
        overall: CoocNetwork,
        handler: OptionHandler,
        config: AnalysisConfig,
    ) -> dict:
        with self.stage("insights"):
            brands = config.brand_ids
            n = handler.get("associations")
            out = {
                "top_words": {a.label: top_words(a.network, handler.get("top_words")) for a in analyses if a.has_data},
                "unique_trend": {brand: list() for brand in brands},
            }
            out["top_words"]["overall"] = top_words(overall, handler.get("top_words"))

            for analysis in analyses:
                counts = dict()
                if analysis.has_data:
                    profiles = [
                        association_profile(analysis.network, b, exclude=set(brands))
                        for b in brands
                    ]
                    counts = {b: len(w) for b, w in unique_associations(profiles, n).items()}
                for brand in brands:
                    out["unique_trend"][brand].append(counts.get(brand, 0))

            profiles = [association_profile(overall, b, exclude=set(brands)) for b in brands]
            out["associations"] = {
                b: brand_associations(overall, b, n, exclude=set(brands)) for b in brands
            }
            out["unique"] = unique_associations(profiles, n)
            out["similarity"] = brand_similarity(profiles)
            out["embedding"] = mds_embed(out["similarity"])

            prune = handler.get("topic_prune")
            model = extract_topics(
                overall, config.min_cooc if prune is None else prune, handler.get("seed")
            )
            model = word_importance(overall, model)
            out["topics"], out["topic_words"] = topic_summaries(
                overall, model, brands, handler.get("topic_words")
            )

            forbidden = set(brands)
            for word in handler.get("forbidden"):
                forbidden.update(text_tokens(word, config))
            with self.process_map(handler.get("workers")) as trials:
                out["targets"] = {
                    brand: target_words(
                        overall,
                        brand,
                        handler.get("target_budget"),
                        forbidden - {brand},
                        handler.get("target_pool"),
                        map_func=trials,
                    )
                    for brand in brands
                }
        return out

    def chart_data(self, analyses: list[BucketAnalysis], insights: dict, config: AnalysisConfig) -> ChartData:
        brands = config.brand_ids
        chart = ChartData(brands=brands, intervals=[a.label for a in analyses])
        for brand in brands:
            sbs, share, feeling = list(), list(), list()
            for analysis in analyses:
                result = next((r for r in analysis.results if r.brand == brand), None)
                sentiment = next((s for s in analysis.sentiments if s.brand == brand), None)
                sbs.append(result.sbs if result else None)
                share.append(result.proportional_sbs if result else None)
                feeling.append(sentiment.score if result and sentiment else None)
            chart.time_trends[brand] = {"sbs": sbs, "proportional": share}
            chart.positioning[brand] = {"sentiment": feeling, "sbs": sbs}
            if stacks := [a.stacked[brand] for a in analyses if a.stacked]:
                chart.stacked[brand] = [float(v) for v in np.mean(stacks, axis=0)]

        chart.top_words = {k: [list(item) for item in v] for k, v in insights["top_words"].items()}
        chart.associations = {b: [list(item) for item in v] for b, v in insights["associations"].items()}
        chart.unique_associations = insights["unique"]
        chart.unique_trend = insights["unique_trend"]
        similarity = insights["similarity"]
        chart.similarity = {
            b: {o: float(similarity.loc[b, o]) for o in similarity.columns} for b in similarity.index
        }
        chart.embedding = insights["embedding"].serialize()
        chart.topics = insights["topics"].serialize(insights["topic_words"])
        chart.target_words = {b: [list(item) for item in v] for b, v in insights["targets"].items()}
        return chart

    def emit(self, out_dir: Path, analyses: list[BucketAnalysis], insights: dict, config: AnalysisConfig, summary):
        with self.stage("emit"):
            results = [r for a in analyses for r in a.results]
            sentiments = [s for a in analyses for s in a.sentiments if a.has_data]
            write_results(out_dir, result_records(results, sentiments))
            write_json(out_dir / "diagnostics.json", summary.serialize())
            for analysis in analyses:
                if analysis.network is not None:
                    export_pajek(analysis.network, out_dir / "networks" / f"{analysis.label}.net")
            write_associations(out_dir, insights["associations"], insights["unique"])
            write_similarity(out_dir, insights["similarity"])
            write_embedding(out_dir, insights["embedding"])
            write_json(out_dir / "topics.json", insights["topics"].serialize(insights["topic_words"]))
            write_ranked(out_dir, "target_words.csv", "brand", insights["targets"], ["word", "connectivity"])
            write_ranked(out_dir, "top_words.csv", "interval", insights["top_words"], ["word", "freq"])
            emit_report(self.chart_data(analyses, insights, config), out_dir)

    def run_pipeline(
        self,
        config_path: Path,
        out: Path | None = None,
        seed: int | None = None,
        workers: int | None = None,
    ) -> RunManifest:
        self.timings = dict()
        overrides = {
            "output": Path(out).resolve() if out is not None else None,
            "seed": seed,
            "workers": workers,
        }
        handler, config = self.load(config_path, overrides)
        workers = handler.get("workers")
        out_dir = handler.get("output")

        buckets, summary = self.ingest(handler, config)
        analyses = self.preprocess(buckets, config, workers)
        overall = self.build_networks(analyses, config, workers)
        self.score(analyses, config, workers)
        self.sentiment(analyses, config, handler.get("lexicon"), workers)
        insights = self.insights(analyses, overall, handler, config)
        self.emit(out_dir, analyses, insights, config, summary)

        manifest = RunManifest(
            config=handler.serialize(),
            corpus_digest=file_digest(handler.get("corpus")),
            interval_counts=summary.counts,
            seed=handler.get("seed"),
            version=__version__,
            stage_seconds=dict(self.timings),
            created=utcnow().isoformat(),
            output=str(out_dir),
        )
        write_json(out_dir / "manifest.json", manifest.serialize())
        return manifest

    def export_interval(self, config_path: Path, label: str, out: Path | None = None) -> Path:
        self.timings = dict()
        handler, config = self.load(config_path)
        buckets, _ = self.ingest(handler, config)
        if not (bucket := next((b for b in buckets if b.interval.label == label), None)):
            known = ", ".join(b.interval.label for b in buckets)
            raise PipelineError("ingest", f"no interval '{label}' (known: {known})", ExitStatus.CONFIG_ERROR)
        analyses = self.preprocess([bucket], config, 1)
        with self.stage("network"):
            net = filter_network(build_network(analyses[0].streams, config.cooc_range), config.min_cooc)
        path = Path(out) if out is not None else handler.get("output") / "networks" / f"{label}.net"
        with self.stage("emit"):
            export_pajek(net, path)
        return path

    def op_run(self, operation: Operation):
        try:
            manifest = self.run_pipeline(
                operation.kwargs.get("config_path"),
                out=operation.kwargs.get("out", None),
                seed=operation.kwargs.get("seed", None),
                workers=operation.kwargs.get("workers", None),
            )
        except PipelineError as err:
            operation.status = err.status
            raise operation.ex(str(err))

        message = f"Analysis of {sum(manifest.interval_counts.values())} documents written to {manifest.output}."
        operation.results = {
            "success": True,
            "manifest": manifest.serialize(),
            "message": message,
        }
        logger.info(message)

    def op_export_pajek(self, operation: Operation):
        if not (label := operation.kwargs.get("interval", None)):
            operation.status = operation.st.CONFIG_ERROR
            raise operation.ex("You must provide an interval label.")
        try:
            path = self.export_interval(
                operation.kwargs.get("config_path"), label, out=operation.kwargs.get("out", None)
            )
        except PipelineError as err:
            operation.status = err.status
            raise operation.ex(str(err))

        operation.results = {
            "success": True,
            "path": str(path),
            "message": f"Interval {label} network written to {path}.",
        }

    def op_options(self, operation: Operation):
        if config_path := operation.kwargs.get("config_path", None):
            try:
                handler = load_options(Path(config_path))
            except ConfigError as err:
                operation.status = operation.st.CONFIG_ERROR
                raise operation.ex(f"invalid config: {err}")
        else:
            handler = OptionHandler()

        out = list()
        for option in handler.all(return_objs=True):
            out.append(
                {
                    "name": option.key,
                    "description": option.description,
                    "type": handler.options_dict[option.key][1],
                    "value": option.display(),
                }
            )
        operation.results = {"success": True, "config": out}


def run_pipeline(config_path: Path, **kwargs) -> RunManifest:
    return AnalysisManager().run_pipeline(config_path, **kwargs)
