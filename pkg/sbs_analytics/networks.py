"""
Weighted undirected word co-occurrence networks and their Pajek form.
"""

import logging
import math
import shlex
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

import networkx as nx

from .models import TokenStream
from .utils import PajekError

logger = logging.getLogger(__name__)

MAX_DENOMINATOR = 10**6
MAX_SCALE_BITS = 2048


def edge_lengths(weights: dict) -> dict:
    """
    Path lengths proportional to 1 / w for every key of weights.

    Weights are read as fractions with denominators up to MAX_DENOMINATOR
    and the lengths are scaled by the lcm of their numerators, so every
    length is an exact integer and equally long paths tie exactly under any
    common weight scale. When that lcm outgrows MAX_SCALE_BITS the lengths
    are plain floats.
    """
    ratios = {key: Fraction(w).limit_denominator(MAX_DENOMINATOR) for key, w in weights.items()}
    scale = 1
    for numerator in sorted({r.numerator for r in ratios.values()}):
        scale = math.lcm(scale, numerator)
        if scale.bit_length() > MAX_SCALE_BITS:
            logger.debug("Edge weights share no small scale; using float lengths.")
            return {key: 1.0 / w for key, w in weights.items()}
    return {key: r.denominator * (scale // r.numerator) for key, r in ratios.items()}


class CoocNetwork:
    """
    A co-occurrence network over an nx.Graph.

    Nodes carry 'freq' (weighted occurrence count); edges carry 'weight'
    (weighted co-occurrence count). Node order is first appearance.
    """

    def __init__(self, graph: nx.Graph | None = None, synthetic_freq: bool = False):
        self.graph = graph if graph is not None else nx.Graph()
        self.synthetic_freq = synthetic_freq

    @classmethod
    def from_data(
        cls,
        freq: dict[str, float],
        edges: dict[tuple[str, str], float],
        synthetic_freq: bool = False,
    ) -> "CoocNetwork":
        graph = nx.Graph()
        for node, value in freq.items():
            graph.add_node(node, freq=value)
        for (a, b), weight in edges.items():
            if a == b:
                raise ValueError(f"Self-loop on '{a}'.")
            if weight <= 0:
                raise ValueError(f"Edge {a}-{b} has nonpositive weight {weight}.")
            graph.add_edge(a, b, weight=weight)
        return cls(graph, synthetic_freq=synthetic_freq)

    @property
    def nodes(self) -> list[str]:
        return list(self.graph.nodes)

    @property
    def freq(self) -> dict[str, float]:
        return {node: data["freq"] for node, data in self.graph.nodes(data=True)}

    @property
    def edges(self) -> dict[tuple[str, str], float]:
        """Edges keyed by node pairs in node-index order."""
        order = {node: i for i, node in enumerate(self.graph.nodes)}
        out = dict()
        for a, b, weight in self.graph.edges(data="weight"):
            if order[a] > order[b]:
                a, b = b, a
            out[(a, b)] = weight
        return out

    def __len__(self):
        return self.graph.number_of_nodes()

    def __contains__(self, node: str) -> bool:
        return node in self.graph

    def __eq__(self, other):
        if not isinstance(other, CoocNetwork):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.freq == other.freq
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"<CoocNetwork nodes={len(self)} edges={self.graph.number_of_edges()}>"

    def weight(self, a: str, b: str) -> float:
        if data := self.graph.get_edge_data(a, b):
            return data["weight"]
        return 0.0

    def copy(self) -> "CoocNetwork":
        return CoocNetwork(self.graph.copy(), synthetic_freq=self.synthetic_freq)

    def serialize(self):
        return {
            "nodes": [{"id": node, "freq": freq} for node, freq in self.freq.items()],
            "edges": [[a, b, w] for (a, b), w in self.edges.items()],
        }


def build_network(streams: list[TokenStream], cooc_range: int) -> CoocNetwork:
    """
    Every ordered position pair (p, q) with p < q <= p + cooc_range inside one
    stream adds the stream weight to the edge between their tokens, unless
    the tokens are equal. Windows never cross stream boundaries.
    """
    if cooc_range < 1:
        raise ValueError("cooc_range must be at least 1.")

    freq = defaultdict(float)
    edges = defaultdict(float)
    for stream in streams:
        if stream.weight <= 0:
            continue
        tokens = stream.tokens
        for p, token in enumerate(tokens):
            freq[token] += stream.weight
            for other in tokens[p + 1 : p + 1 + cooc_range]:
                if other == token:
                    continue
                key = (token, other) if token < other else (other, token)
                edges[key] += stream.weight

    return CoocNetwork.from_data(dict(freq), dict(edges))


def filter_network(net: CoocNetwork, min_cooc: float) -> CoocNetwork:
    """Drop edges lighter than min_cooc; nodes and their freq survive."""
    out = net.copy()
    if min_cooc > 0:
        out.graph.remove_edges_from(
            [(a, b) for a, b, w in net.graph.edges(data="weight") if w < min_cooc]
        )
    return out


def format_weight(value: float) -> str:
    if float(value).is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(float(value))


def export_pajek(net: CoocNetwork, path: Path):
    index = {node: i for i, node in enumerate(net.nodes, start=1)}
    lines = [f"*Vertices {len(index)}"]
    for node, i in index.items():
        lines.append(f'{i} "{node}"')
    lines.append("*Edges")
    for (a, b), weight in net.edges.items():
        lines.append(f"{index[a]} {index[b]} {format_weight(weight)}")
    for node, freq in net.freq.items():
        lines.append(f"% freq {index[node]} {format_weight(freq)}")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def import_pajek(path: Path) -> CoocNetwork:
    """
    Read a Pajek file written by export_pajek, or any file with *Vertices
    and *Edges sections. Without '% freq' lines, node frequencies fall back
    to node strengths and the network is flagged synthetic_freq.
    """
    labels = dict()
    edges = dict()
    freq = dict()
    declared = None
    section = None
    saw_edges = False

    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        if not (line := raw.strip()):
            continue
        if line.startswith("%"):
            parts = line[1:].split()
            if len(parts) == 3 and parts[0].lower() == "freq":
                try:
                    freq[int(parts[1])] = float(parts[2])
                except ValueError:
                    raise PajekError(f"invalid freq line '{line}'", line=number)
            continue
        if line.startswith("*"):
            header = line.split()
            keyword = header[0].lower()
            if keyword == "*vertices":
                if len(header) < 2 or not header[1].isdigit():
                    raise PajekError("*Vertices needs a vertex count", line=number)
                declared = int(header[1])
                section = "vertices"
            elif keyword == "*edges":
                if declared is None:
                    raise PajekError("*Edges before *Vertices", line=number)
                section = "edges"
                saw_edges = True
            else:
                raise PajekError(f"unsupported section '{header[0]}'", line=number)
            continue

        try:
            parts = shlex.split(line)
        except ValueError as err:
            raise PajekError(str(err), line=number)

        if section == "vertices":
            if len(parts) < 2 or not parts[0].isdigit():
                raise PajekError(f"invalid vertex line '{line}'", line=number)
            i = int(parts[0])
            if not 1 <= i <= declared or i in labels:
                raise PajekError(f"vertex index {i} out of range or repeated", line=number)
            labels[i] = parts[1]
        elif section == "edges":
            try:
                a, b = int(parts[0]), int(parts[1])
                weight = float(parts[2]) if len(parts) > 2 else 1.0
            except (ValueError, IndexError):
                raise PajekError(f"invalid edge line '{line}'", line=number)
            if a not in labels or b not in labels:
                raise PajekError(f"edge references unknown vertex in '{line}'", line=number)
            if a == b or weight <= 0:
                raise PajekError(f"invalid edge '{line}'", line=number)
            key = (a, b) if a < b else (b, a)
            edges[key] = edges.get(key, 0.0) + weight
        else:
            raise PajekError("data before *Vertices", line=number)

    if declared is None:
        raise PajekError("missing *Vertices section")
    if not saw_edges:
        raise PajekError("missing *Edges section")
    if len(labels) != declared:
        raise PajekError(f"expected {declared} vertices, found {len(labels)}")

    order = sorted(labels)
    synthetic = not freq
    if synthetic:
        strength = defaultdict(float)
        for (a, b), weight in edges.items():
            strength[a] += weight
            strength[b] += weight
        freq = {i: strength[i] for i in order}
    elif missing := [i for i in order if i not in freq]:
        raise PajekError(f"freq missing for vertices {missing}")

    return CoocNetwork.from_data(
        {labels[i]: freq[i] for i in order},
        {(labels[a], labels[b]): w for (a, b), w in sorted(edges.items())},
        synthetic_freq=synthetic,
    )
