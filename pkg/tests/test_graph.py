import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from pald import (CohesionGraph, classical_cohesion, euclidean_distances, export, layout, mutual_cohesion, read_edge_csv,
                  read_json, strong_graph)
from pald.graph import fmt_num


@pytest.fixture
def graph(rng):
    pts = np.vstack([rng.normal(0, 0.3, (6, 2)), rng.normal(4, 0.3, (5, 2)), [[10.0, 10.0]]])
    C = classical_cohesion(euclidean_distances(pts))
    labels = [f"n{i}" for i in range(len(pts))]
    return strong_graph(C, labels, node_values=np.linspace(-1, 1, len(pts))), C


def test_strong_graph_threshold(graph):
    G, C = graph
    M = mutual_cohesion(C)
    assert all(w > G.threshold and w == M[x, y] for x, y, w in G.edges)
    above = np.triu(M > G.threshold, 1).sum()
    assert above == len(G.edges)
    assert strong_graph(C, threshold=0.0).edges  # everything positive survives
    with pytest.raises(ValueError):
        strong_graph(C, threshold=-0.1)


def test_layout_deterministic_and_bounded(graph):
    G, _ = graph
    a = layout(G, seed=3)
    b = layout(G, seed=3)
    assert np.array_equal(a, b)
    deg = G.degree()
    assert np.all(np.abs(a[deg > 0]) <= 1.0 + 1e-12)
    assert np.allclose(np.hypot(*a[deg == 0].T), 1.25)


@pytest.mark.parametrize("fmt", ["dot", "graphml", "json", "edge-csv", "svg"])
def test_exports_deterministic(graph, fmt):
    G, _ = graph
    xy = layout(G)
    assert export(G, fmt, xy) == export(G, fmt, xy)


def _rounded(G):
    # exports carry 12 significant digits
    r = lambda v: float(fmt_num(v))  # noqa: E731
    return CohesionGraph(G.labels, [(x, y, r(w)) for x, y, w in G.edges], r(G.threshold),
                         None if G.node_values is None else [r(v) for v in G.node_values])


def test_json_round_trip(graph):
    G, _ = graph
    data = export(G, "json")
    assert read_json(data) == _rounded(G)
    assert export(read_json(data), "json") == data
    assert json.loads(data)["threshold"] == float(fmt_num(G.threshold))


def test_edge_csv_round_trip(graph):
    G, _ = graph
    data = export(G, "edge-csv")
    back = read_edge_csv(data, labels=G.labels, threshold=G.threshold, node_values=G.node_values)
    assert export(back, "edge-csv") == data
    assert back.edges == _rounded(G).edges
    assert (back.labels, back.threshold, back.node_values) == (G.labels, G.threshold, G.node_values)


def test_graphml_and_svg_parse(graph):
    G, _ = graph
    root = ET.fromstring(export(G, "graphml"))
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    assert len(root.findall(".//g:edge", ns)) == len(G.edges)
    svg = ET.fromstring(export(G, "svg", layout(G)))
    assert svg.tag.endswith("svg")
    with pytest.raises(ValueError):
        export(G, "svg")
    with pytest.raises(ValueError):
        export(G, "png")


def test_three_point_and_equidistant(three_points):
    _, D = three_points
    C = classical_cohesion(D)
    M = mutual_cohesion(C)
    assert M[0, 1] == pytest.approx(1 / 6) and not M[2].any()
    E = 1.0 - np.eye(3)
    assert strong_graph(classical_cohesion(E)).edges == []
    assert np.allclose(mutual_cohesion(classical_cohesion(E)), (1 / 12) * E)


def test_dot_edge_statements():
    G = CohesionGraph(["a", "b", "c"], [(0, 1, 0.3), (1, 2, 0.25)], 0.1)
    lines = [ln for ln in export(G, "dot").decode().splitlines() if "--" in ln]
    assert len(lines) == 2 and all("weight=" in ln for ln in lines)
    empty = CohesionGraph(["a", "b"], [], 0.1)
    assert export(empty, "dot").decode().count('"a"') == 1


def test_layout_separates_clusters():
    from pald import generate_separated_instance
    D, part, _ = generate_separated_instance(5, 5, 3.0, seed=4)
    G = strong_graph(classical_cohesion(D), threshold=0.0)
    xy = layout(G, seed=1)
    A, B = list(part.A), list(part.B)
    dist = lambda I, J: np.mean([np.hypot(*(xy[i] - xy[j])) for i in I for j in J if i != j])  # noqa: E731
    assert dist(A, B) > max(dist(A, A), dist(B, B))
    single = CohesionGraph(["only"], [], 0.0)
    assert np.array_equal(layout(single), [[0.0, 0.0]])
