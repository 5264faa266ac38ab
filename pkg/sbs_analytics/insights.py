"""
Brand analytics on a co-occurrence network: common words, associations,
image similarity with a 2-D embedding, Louvain topics with word importance,
and target words for connectivity improvement.
"""

import logging
import math
from collections import defaultdict
from functools import partial

import networkx as nx
import numpy as np
import pandas as pd
from sklearn.feature_extraction import DictVectorizer
from sklearn.metrics.pairwise import cosine_similarity

from .metrics import weighted_betweenness
from .models import AssociationProfile, Embedding2D, TopicModel
from .networks import CoocNetwork

logger = logging.getLogger(__name__)

LOUVAIN_THRESHOLD = 1e-12
EIGEN_TOLERANCE = 1e-12


def _ranked(items, n: int) -> list[tuple[str, float]]:
    return sorted(items, key=lambda item: (-item[1], item[0]))[:n]


def top_words(net: CoocNetwork, n: int) -> list[tuple[str, float]]:
    return _ranked(net.freq.items(), n)


def brand_associations(
    net: CoocNetwork, brand: str, n: int, exclude: set[str] | None = None
) -> list[tuple[str, float]]:
    """The brand's n heaviest links, words in exclude left out."""
    return association_profile(net, brand, exclude).top(n)


def association_profile(
    net: CoocNetwork, brand: str, exclude: set[str] | None = None
) -> AssociationProfile:
    """The brand's network row, without the words in exclude."""
    exclude = exclude or set()
    if brand not in net:
        return AssociationProfile(brand, dict())
    return AssociationProfile(
        brand,
        {
            other: data["weight"]
            for other, data in net.graph[brand].items()
            if other not in exclude and other != brand
        },
    )


def unique_associations(profiles: list[AssociationProfile], n: int) -> dict[str, list[str]]:
    """Words in a brand's top-n that no other brand has in its top-n."""
    tops = {p.brand: [word for word, _ in p.top(n)] for p in profiles}
    out = dict()
    for brand, words in tops.items():
        others = set()
        for other, other_words in tops.items():
            if other != brand:
                others.update(other_words)
        out[brand] = [word for word in words if word not in others]
    return out


def brand_similarity(profiles: list[AssociationProfile]) -> pd.DataFrame:
    """
    Cosine similarity of association-weight vectors over the union of
    associated words, brand ids excluded. A zero vector is similar to
    nothing; the diagonal is 1.
    """
    brands = [p.brand for p in profiles]
    excluded = set(brands)
    rows = [
        {word: weight for word, weight in p.associations.items() if word not in excluded}
        for p in profiles
    ]
    vectors = DictVectorizer(sort=True).fit_transform(rows)
    if vectors.shape[1]:
        matrix = cosine_similarity(vectors)
    else:
        matrix = np.zeros((len(brands), len(brands)))
    matrix = np.clip((matrix + matrix.T) / 2, -1.0, 1.0)
    np.fill_diagonal(matrix, 1.0)
    return pd.DataFrame(matrix, index=brands, columns=brands)


def mds_embed(similarity: pd.DataFrame) -> Embedding2D:
    """
    Classical (Torgerson) scaling of the distances 1 - similarity into two
    dimensions. Each axis is flipped so that its first nonzero coordinate
    is positive.
    """
    brands = list(similarity.index)
    n = len(brands)
    if not n:
        return Embedding2D(dict())

    distances = 1.0 - similarity.to_numpy(dtype=float)
    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    inner = -0.5 * centering @ (distances**2) @ centering
    inner = (inner + inner.T) / 2

    eigenvalues, eigenvectors = np.linalg.eigh(inner)
    order = np.argsort(eigenvalues)[::-1]
    coords = np.zeros((n, 2))
    for axis, k in enumerate(order[:2]):
        if (value := eigenvalues[k]) <= EIGEN_TOLERANCE:
            continue
        column = eigenvectors[:, k] * math.sqrt(value)
        if nonzero := np.flatnonzero(np.abs(column) > EIGEN_TOLERANCE).tolist():
            if column[nonzero[0]] < 0:
                column = -column
        coords[:, axis] = column

    return Embedding2D({b: (float(x), float(y)) for b, (x, y) in zip(brands, coords)})


def prune_network(net: CoocNetwork, threshold: float) -> nx.Graph:
    graph = net.graph.copy()
    graph.remove_edges_from(
        [(a, b) for a, b, w in net.graph.edges(data="weight") if w < threshold]
    )
    graph.remove_nodes_from(list(nx.isolates(graph)))
    return graph


def extract_topics(net: CoocNetwork, prune_threshold: float, seed: int) -> TopicModel:
    """
    Remove links lighter than prune_threshold and then isolated nodes, and
    cluster the rest with weighted Louvain at resolution 1. Cluster ids are
    assigned by decreasing size, then by first member in node order.
    """
    graph = prune_network(net, prune_threshold)
    if not graph.number_of_nodes():
        return TopicModel(seed=seed)

    communities = nx.community.louvain_communities(
        graph, weight="weight", resolution=1, threshold=LOUVAIN_THRESHOLD, seed=seed
    )
    position = {node: i for i, node in enumerate(net.nodes)}
    communities = sorted(
        communities, key=lambda c: (-len(c), min(position[node] for node in c))
    )

    assignment = dict()
    for k, members in enumerate(communities):
        for node in sorted(members, key=position.get):
            assignment[node] = k
    assignment = dict(sorted(assignment.items(), key=lambda item: position[item[0]]))

    modularity = nx.community.modularity(graph, communities, weight="weight", resolution=1)
    return TopicModel(assignment=assignment, modularity=modularity, seed=seed)


def word_importance(net: CoocNetwork, model: TopicModel) -> TopicModel:
    """IW of word i in cluster K: (sum of w_ij, j in K) ** 2 / (sum of all w_ij)."""
    importance = dict()
    for node, k in model.assignment.items():
        weights = net.graph[node] if node in net else dict()
        total = math.fsum(data["weight"] for other, data in weights.items() if other != node)
        inside = math.fsum(
            data["weight"]
            for other, data in weights.items()
            if other != node and model.assignment.get(other) == k
        )
        importance[(node, k)] = inside * inside / total if total > 0 else 0.0
    model.word_importance = importance
    return model


def topic_summaries(
    net: CoocNetwork, model: TopicModel, brands: list[str], top_k: int
) -> tuple[TopicModel, dict[int, list[tuple[str, float]]]]:
    topic_importance = defaultdict(float)
    topic_links = defaultdict(float)
    for a, b, weight in net.graph.edges(data="weight"):
        ka, kb = model.assignment.get(a), model.assignment.get(b)
        if ka is None or kb is None:
            continue
        if ka == kb:
            topic_importance[ka] += weight
        else:
            topic_links[min(ka, kb), max(ka, kb)] += weight
    model.topic_importance = {k: topic_importance.get(k, 0.0) for k in model.clusters}
    model.topic_links = dict(sorted(topic_links.items()))

    brand_links = dict()
    for brand in brands:
        for k in model.clusters:
            brand_links[(brand, k)] = 0.0
        if brand not in net:
            continue
        for other, data in net.graph[brand].items():
            if (k := model.assignment.get(other)) is not None and other != brand:
                brand_links[(brand, k)] += data["weight"]
    model.brand_links = brand_links

    excluded = set(brands)
    words = dict()
    for k in model.clusters:
        words[k] = _ranked(
            (
                (node, iw)
                for (node, cluster), iw in model.word_importance.items()
                if cluster == k and node not in excluded
            ),
            top_k,
        )
    return model, words


def trial_connectivity(graph: nx.Graph, brand: str, weight: float, candidate: str) -> float:
    """The brand's connectivity once linked to candidate; graph is left unchanged."""
    graph.add_edge(brand, candidate, weight=weight)
    try:
        return weighted_betweenness(graph)[brand]
    finally:
        graph.remove_edge(brand, candidate)


def target_words(
    net: CoocNetwork,
    brand: str,
    budget: int,
    forbidden: set[str],
    candidate_pool_size: int,
    map_func=map,
) -> list[tuple[str, float]]:
    """
    Greedy betweenness improvement. Candidates are the candidate_pool_size
    most frequent words that are neither forbidden, the brand, nor already
    linked to it. Each round tries linking every remaining candidate with
    the network's median edge weight, commits the one giving the brand the
    highest connectivity, and reports that connectivity. Ties go to the
    lexically first word.

    The trials of one round are independent and run through map_func, which
    may be a process pool's map.
    """
    if brand not in net:
        return list()

    weights = [w for _, _, w in net.graph.edges(data="weight")]
    trial_weight = float(np.median(weights)) if weights else 1.0

    neighbors = set(net.graph[brand])
    candidates = sorted(
        word
        for word, _ in top_words(net, candidate_pool_size)
        if word != brand and word not in forbidden and word not in neighbors
    )

    augmented = net.graph.copy()
    chosen = list()
    for _ in range(budget):
        if not candidates:
            break
        scores = list(map_func(partial(trial_connectivity, augmented, brand, trial_weight), candidates))
        best, best_score = None, -math.inf
        for candidate, score in zip(candidates, scores):
            if score > best_score:
                best, best_score = candidate, score
        augmented.add_edge(brand, best, weight=trial_weight)
        candidates.remove(best)
        chosen.append((best, best_score))
        logger.debug("Target word for %s: %s (%.6f).", brand, best, best_score)
    return chosen
