"""
Semantic Brand Score: prevalence, diversity and connectivity of every word,
standardized over the whole network and summed per brand.
"""

import logging
import math
from dataclasses import replace

import networkx as nx
import numpy as np
from sklearn.preprocessing import MinMaxScaler, RobustScaler, StandardScaler

from .models import BrandSpec, NodeScores, SbsResult, Standardization
from .networks import CoocNetwork, edge_lengths
from .utils import NetworkError

logger = logging.getLogger(__name__)

SCALERS = {
    Standardization.Z_SCORE: StandardScaler,
    Standardization.MIN_MAX: MinMaxScaler,
    Standardization.MEDIAN_IQR: lambda: RobustScaler(quantile_range=(25.0, 75.0)),
}


def prevalence(net: CoocNetwork, node: str) -> float:
    if node not in net:
        return 0.0
    return net.graph.nodes[node]["freq"]


def _diversity_of(graph: nx.Graph, node: str, n: int) -> float:
    return math.fsum(math.log10((n - 1) / graph.degree(j)) for j in graph.neighbors(node))


def diversity(net: CoocNetwork, node: str) -> float:
    """Sum over neighbors j of log10((N - 1) / g_j)."""
    if node not in net or (n := len(net)) < 2:
        return 0.0
    return _diversity_of(net.graph, node, n)


def diversity_scores(net: CoocNetwork) -> dict[str, float]:
    n = len(net)
    if n < 2:
        return {node: 0.0 for node in net.nodes}
    return {node: _diversity_of(net.graph, node, n) for node in net.nodes}


def weighted_betweenness(graph: nx.Graph) -> dict[str, float]:
    """
    Betweenness of every node with edge length 1 / w. Every unordered pair
    s, t counts sigma_st(v) / sigma_st, and the sum is divided by
    (N - 1)(N - 2) / 2.
    """
    if graph.number_of_nodes() < 3:
        return {node: 0.0 for node in graph}
    lengths = edge_lengths({(a, b): w for a, b, w in graph.edges(data="weight")})
    measured = nx.Graph()
    measured.add_nodes_from(graph)
    measured.add_edges_from((a, b, {"length": length}) for (a, b), length in lengths.items())
    return nx.betweenness_centrality(measured, weight="length", normalized=True)


def connectivity_scores(net: CoocNetwork) -> dict[str, float]:
    return weighted_betweenness(net.graph)


def connectivity(net: CoocNetwork, node: str) -> float:
    if node not in net:
        return 0.0
    return connectivity_scores(net)[node]


def node_scores(net: CoocNetwork) -> NodeScores:
    return NodeScores(
        prevalence=net.freq,
        diversity=diversity_scores(net),
        connectivity=connectivity_scores(net),
    )


class Standardizer:
    """
    A scaler fitted on one distribution. A zero spread (standard deviation,
    range or interquartile range) maps every input to 0.
    """

    def __init__(self, values, method: Standardization | str):
        method = Standardization(method)
        self.method = method
        data = np.asarray(list(values), dtype=float).reshape(-1, 1)
        if not len(data):
            raise ValueError("Cannot standardize an empty distribution.")
        self.degenerate = self._spread(data[:, 0], method) == 0
        self.scaler = SCALERS[method]().fit(data)

    @staticmethod
    def _spread(values: np.ndarray, method: Standardization) -> float:
        if np.all(values == values[0]):
            return 0.0
        match method:
            case Standardization.Z_SCORE:
                return float(np.std(values))
            case Standardization.MIN_MAX:
                return float(np.ptp(values))
            case Standardization.MEDIAN_IQR:
                q1, q3 = np.percentile(values, [25, 75])
                return float(q3 - q1)

    def transform(self, values) -> np.ndarray:
        data = np.asarray(values, dtype=float).reshape(-1, 1)
        if self.degenerate:
            return np.zeros(len(data))
        return self.scaler.transform(data)[:, 0]

    def __call__(self, value: float) -> float:
        return float(self.transform([value])[0])


def standardize(values: dict[str, float], method: Standardization | str) -> dict[str, float]:
    standardizer = Standardizer(values.values(), method)
    return dict(zip(values, (float(v) for v in standardizer.transform(list(values.values())))))


def compute_sbs(
    net: CoocNetwork,
    brands: list[BrandSpec],
    method: Standardization | str,
    interval: str = "",
    scores: NodeScores | None = None,
) -> list[SbsResult]:
    """
    Standardize each measure over all nodes and read off the brands.
    Brands absent from the network get raw zeros passed through the same
    fitted standardizers.
    """
    if not len(net):
        raise NetworkError("no nodes")
    scores = scores or node_scores(net)

    standardizers = list()
    rescalers = list()
    for name in NodeScores.DIMENSIONS:
        values = list(scores.dimension(name).values())
        standardizers.append(Standardizer(values, method))
        rescalers.append(Standardizer(values, Standardization.MIN_MAX))

    results = list()
    for brand in brands:
        raw = tuple(
            float(scores.dimension(name).get(brand.canonical_id, 0.0))
            for name in NodeScores.DIMENSIONS
        )
        standardized = tuple(s(v) for s, v in zip(standardizers, raw))
        # Absent brands can fall below the distribution minimum.
        rescaled = tuple(min(max(s(v), 0.0), 1.0) for s, v in zip(rescalers, raw))
        results.append(
            SbsResult(
                brand=brand.canonical_id,
                interval=interval,
                raw=raw,
                standardized=standardized,
                rescaled=rescaled,
                sbs=standardized[0] + standardized[1] + standardized[2],
            )
        )
    return results


def proportional_sbs(results: list[SbsResult]) -> list[SbsResult]:
    """Each brand's share of the summed min-max rescaled scores."""
    if not results:
        return list()
    totals = [r.rescaled[0] + r.rescaled[1] + r.rescaled[2] for r in results]
    grand = sum(totals)
    if grand <= 0:
        return [replace(r, proportional_sbs=1.0 / len(results)) for r in results]
    return [replace(r, proportional_sbs=total / grand) for r, total in zip(results, totals)]
