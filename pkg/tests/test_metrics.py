import itertools
import math
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from sbs_analytics.metrics import (
    Standardizer,
    compute_sbs,
    connectivity,
    connectivity_scores,
    diversity,
    diversity_scores,
    node_scores,
    prevalence,
    proportional_sbs,
    standardize,
)
from sbs_analytics.models import BrandSpec, SbsResult, Standardization
from sbs_analytics.networks import CoocNetwork
from sbs_analytics.utils import NetworkError


def oracle_betweenness(net: CoocNetwork) -> dict[str, float]:
    """Enumerate every simple path of every pair and keep the shortest ones."""
    graph = net.graph
    nodes = list(graph)
    n = len(nodes)
    score = {v: Fraction(0) for v in nodes}
    for s, t in itertools.combinations(nodes, 2):
        paths = list(nx.all_simple_paths(graph, s, t))
        if not paths:
            continue
        lengths = [
            sum(1 / Fraction(graph[a][b]["weight"]) for a, b in zip(p, p[1:])) for p in paths
        ]
        best = min(lengths)
        shortest = [p for p, length in zip(paths, lengths) if length == best]
        for p in shortest:
            for v in p[1:-1]:
                score[v] += Fraction(1, len(shortest))
    if n < 3:
        return {v: 0.0 for v in nodes}
    scale = Fraction(2, (n - 1) * (n - 2))
    return {v: float(score[v] * scale) for v in nodes}


def oracle_diversity(net: CoocNetwork, node: str) -> float:
    n = len(net)
    return math.fsum(math.log10((n - 1) / net.graph.degree(j)) for j in net.graph[node])


def star(n_leaves: int) -> CoocNetwork:
    leaves = [f"leaf{i}" for i in range(n_leaves)]
    return CoocNetwork.from_data(
        {"hub": 1.0, **{leaf: 1.0 for leaf in leaves}}, {("hub", leaf): 1.0 for leaf in leaves}
    )


def test_prevalence():
    net = CoocNetwork.from_data({"a": 3.5, "b": 1.0}, {("a", "b"): 1.0})
    assert prevalence(net, "a") == 3.5
    assert prevalence(net, "missing") == 0.0


def test_diversity_star():
    net = star(3)
    assert diversity(net, "hub") == pytest.approx(3 * math.log10(3), abs=1e-12)
    assert diversity(net, "hub") == pytest.approx(1.4314, abs=1e-4)
    assert diversity(net, "leaf0") == 0.0
    assert diversity(net, "missing") == 0.0


def test_diversity_matches_formula(random_network):
    rng = random.Random(3)
    for _ in range(200):
        net = random_network(rng, rng.randint(2, 20), extra=rng.randint(0, 15))
        scores = diversity_scores(net)
        for node in net.nodes:
            assert scores[node] == oracle_diversity(net, node)
            assert diversity(net, node) == scores[node]


def test_diversity_tiny_networks():
    single = CoocNetwork.from_data({"a": 1.0}, {})
    assert diversity_scores(single) == {"a": 0.0}


def test_connectivity_matches_oracle(random_network):
    rng = random.Random(5)
    for _ in range(100):
        net = random_network(rng, rng.randint(3, 12), extra=rng.randint(0, 4))
        expected = oracle_betweenness(net)
        found = connectivity_scores(net)
        for node in net.nodes:
            assert abs(found[node] - expected[node]) < 1e-9


def test_connectivity_hand_values():
    path = CoocNetwork.from_data(
        {"a": 1.0, "b": 1.0, "c": 1.0}, {("a", "b"): 1.0, ("b", "c"): 1.0}
    )
    assert connectivity(path, "b") == 1.0
    assert connectivity(path, "a") == 0.0
    assert connectivity(path, "missing") == 0.0

    # a-b-c has length 1/2 + 1/2, tying the direct a-c link.
    tie = CoocNetwork.from_data(
        {"a": 1.0, "b": 1.0, "c": 1.0},
        {("a", "b"): 2.0, ("b", "c"): 2.0, ("a", "c"): 1.0},
    )
    assert connectivity(tie, "b") == pytest.approx(0.5, abs=1e-12)


def test_connectivity_weight_scale_invariant(random_network):
    rng = random.Random(9)
    for _ in range(20):
        net = random_network(rng, rng.randint(3, 12), extra=4)
        scaled = CoocNetwork.from_data(
            net.freq, {pair: 7 * w for pair, w in net.edges.items()}
        )
        assert connectivity_scores(net) == pytest.approx(connectivity_scores(scaled), abs=1e-12)


def test_standardize_z_score():
    found = standardize({"a": 1.0, "b": 2.0, "c": 3.0}, Standardization.Z_SCORE)
    assert [found[k] for k in "abc"] == pytest.approx([-1.2247, 0.0, 1.2247], abs=1e-4)

    rng = random.Random(1)
    values = {str(i): rng.uniform(-50, 50) for i in range(40)}
    out = np.array(list(standardize(values, "z_score").values()))
    assert abs(out.mean()) < 1e-12
    assert abs(out.std() - 1) < 1e-12


def test_standardize_min_max_and_iqr():
    values = {"a": 0.0, "b": 5.0, "c": 10.0, "d": 20.0}
    assert standardize(values, "min_max") == pytest.approx({"a": 0.0, "b": 0.25, "c": 0.5, "d": 1.0})
    # median 7.5, q1 3.75, q3 12.5
    robust = standardize(values, "median_iqr")
    assert robust["a"] == pytest.approx(-7.5 / 8.75)
    assert robust["d"] == pytest.approx(12.5 / 8.75)


@pytest.mark.parametrize("method", list(Standardization))
def test_standardize_zero_spread(method):
    assert standardize({"a": 4.0, "b": 4.0}, method) == {"a": 0.0, "b": 0.0}
    standardizer = Standardizer([4.0, 4.0], method)
    assert standardizer.degenerate
    assert standardizer(9.0) == 0.0


def test_standardize_empty():
    with pytest.raises(ValueError):
        Standardizer([], "z_score")


def two_stars() -> CoocNetwork:
    return CoocNetwork.from_data(
        {"alpha": 6.0, "x": 1.0, "y": 1.0, "z": 1.0, "beta": 2.0, "w": 1.0},
        {
            ("alpha", "x"): 2.0,
            ("alpha", "y"): 2.0,
            ("alpha", "z"): 2.0,
            ("alpha", "beta"): 1.0,
            ("beta", "w"): 1.0,
        },
    )


def test_compute_sbs():
    net = two_stars()
    brands = [BrandSpec("alpha", ("alpha",)), BrandSpec("beta", ("beta",)), BrandSpec("gone", ("gone",))]
    results = compute_sbs(net, brands, "z_score", interval="2024-01-01")
    by_brand = {r.brand: r for r in results}
    scores = node_scores(net)

    alpha = by_brand["alpha"]
    assert alpha.interval == "2024-01-01"
    assert alpha.raw == (6.0, scores.diversity["alpha"], scores.connectivity["alpha"])
    prev = standardize(scores.prevalence, "z_score")
    assert alpha.standardized[0] == pytest.approx(prev["alpha"], abs=1e-12)
    assert alpha.sbs == pytest.approx(sum(alpha.standardized), abs=1e-12)
    assert alpha.sbs > by_brand["beta"].sbs

    gone = by_brand["gone"]
    assert gone.raw == (0.0, 0.0, 0.0)
    assert gone.standardized[0] < 0
    assert all(0.0 <= v <= 1.0 for r in results for v in r.rescaled)


def test_compute_sbs_empty_network():
    with pytest.raises(NetworkError, match="no nodes"):
        compute_sbs(CoocNetwork(), [BrandSpec("a", ("a",))], "z_score")


def test_proportional_sbs():
    results = proportional_sbs(
        compute_sbs(
            two_stars(),
            [BrandSpec("alpha", ("alpha",)), BrandSpec("beta", ("beta",))],
            "min_max",
        )
    )
    assert math.fsum(r.proportional_sbs for r in results) == pytest.approx(1.0, abs=1e-12)
    totals = [sum(r.rescaled) for r in results]
    assert results[0].proportional_sbs == pytest.approx(totals[0] / sum(totals))
    assert results[0].proportional_sbs > results[1].proportional_sbs


def test_proportional_sbs_all_zero():
    zero = SbsResult("a", "", (0, 0, 0), (0, 0, 0), (0.0, 0.0, 0.0), 0.0)
    results = proportional_sbs([zero, zero])
    assert [r.proportional_sbs for r in results] == [0.5, 0.5]
    assert proportional_sbs([]) == []


def test_proportional_sbs_recomputed_from_raw_scores(random_network):
    rng = random.Random(21)
    for _ in range(20):
        net = random_network(rng, rng.randint(4, 10), extra=rng.randint(0, 6))
        brands = rng.sample(net.nodes, 3)
        prev = dict(net.freq)
        div = {v: oracle_diversity(net, v) for v in net.nodes}
        conn = oracle_betweenness(net)

        def share_part(values, brand):
            low, high = min(values.values()), max(values.values())
            return (values[brand] - low) / (high - low) if high > low else 0.0

        totals = {b: sum(share_part(values, b) for values in (prev, div, conn)) for b in brands}
        grand = sum(totals.values())
        results = proportional_sbs(
            compute_sbs(net, [BrandSpec(b, (b,)) for b in brands], "z_score")
        )
        for result in results:
            expected = totals[result.brand] / grand if grand else 1 / 3
            assert abs(result.proportional_sbs - expected) < 1e-9
            assert result.raw == pytest.approx(
                (prev[result.brand], div[result.brand], conn[result.brand]), abs=1e-9
            )
