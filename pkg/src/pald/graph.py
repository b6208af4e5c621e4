"""Cohesion networks: mutual cohesion, strong ties, layout and export.

JSON schema written by :func:`export` with ``fmt="json"``::

    {
      "format": "pald-cohesion-graph",
      "version": 1,
      "threshold": <number>,
      "nodes": [{"id": <int>, "label": <str>, "value": <number|null>}, ...],
      "edges": [{"source": <int>, "target": <int>, "weight": <number>}, ...]
    }

Edges are undirected with ``source < target``.  All numbers are written with
12 significant digits.
"""

import csv
import io
import json
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

import numpy as np

from .core import threshold_bound
from .errors import IngestError

FORMATS = ("dot", "graphml", "json", "edge-csv", "svg")

# SVG presentation constants.
SVG_SIZE = 800
SVG_MARGIN = 60
NODE_RADIUS = 9
EDGE_WIDTH_PER_UNIT = 60.0  # stroke width = constant * mutual cohesion
EDGE_COLOR = "#3b6ea5"
RAMP_LOW = (255, 221, 0)  # yellow
RAMP_HIGH = (204, 0, 0)  # red
NODE_FILL = "#bbbbbb"


def fmt_num(x):
    return format(float(x), ".12g")


def mutual_cohesion(C):
    """Symmetric ``min(C[x, y], C[y, x])`` with a zero diagonal."""
    C = np.asarray(C, dtype=np.float64)
    M = np.minimum(C, C.T)
    np.fill_diagonal(M, 0.0)
    return M


@dataclass
class CohesionGraph:
    labels: tuple
    edges: list
    threshold: float
    node_values: tuple = None

    def __post_init__(self):
        self.labels = tuple(str(label) for label in self.labels)
        self.edges = [(int(x), int(y), float(w)) for x, y, w in self.edges]
        if self.node_values is not None:
            self.node_values = tuple(float(v) for v in self.node_values)
            if len(self.node_values) != len(self.labels):
                raise ValueError("node_values must have one entry per label")
        seen = set()
        for x, y, w in self.edges:
            if not 0 <= x < y < len(self.labels):
                raise ValueError(f"edge ({x}, {y}) must satisfy 0 <= x < y < n")
            if (x, y) in seen:
                raise ValueError(f"duplicate edge ({x}, {y})")
            seen.add((x, y))

    @property
    def n(self):
        return len(self.labels)

    def degree(self):
        deg = np.zeros(self.n, dtype=int)
        for x, y, _ in self.edges:
            deg[x] += 1
            deg[y] += 1
        return deg


def strong_graph(C, labels=None, threshold="auto", node_values=None):
    """Undirected graph of pairs whose mutual cohesion is strictly above a threshold.

    ``threshold="auto"`` uses :func:`pald.core.threshold_bound`.
    """
    C = np.asarray(C, dtype=np.float64)
    n = C.shape[0]
    labels = [str(i) for i in range(n)] if labels is None else list(labels)
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} elements")
    if threshold == "auto":
        t = threshold_bound(C)
    else:
        t = float(threshold)
        if t < 0:
            raise ValueError(f"threshold must be nonnegative, got {t}")
    M = mutual_cohesion(C)
    x, y = np.triu_indices(n, k=1)
    keep = M[x, y] > t
    edges = [(int(a), int(b), float(M[a, b])) for a, b in zip(x[keep], y[keep])]
    return CohesionGraph(labels, edges, t, node_values)


def layout(G, seed=0, iterations=300):
    """Fruchterman-Reingold coordinates in ``[-1, 1]^2``.

    Attraction along an edge is scaled by its weight relative to the
    heaviest edge.  Nodes without edges are spread evenly on a ring of
    radius 1.25 outside the box.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    n = G.n
    pos = np.zeros((n, 2))
    if n <= 1:
        return pos
    deg = G.degree()
    active = np.flatnonzero(deg > 0)
    isolated = np.flatnonzero(deg == 0)

    if active.size:
        rng = np.random.default_rng(seed)
        local = {int(v): k for k, v in enumerate(active)}
        m = active.size
        P = rng.uniform(-1.0, 1.0, size=(m, 2))
        wmax = max(w for _, _, w in G.edges)
        src = np.array([local[x] for x, _, _ in G.edges])
        dst = np.array([local[y] for _, y, _ in G.edges])
        wts = np.array([w / wmax for _, _, w in G.edges])
        k = math.sqrt(4.0 / m)
        temp = 0.2
        cooling = temp / (iterations + 1)
        for _ in range(iterations):
            delta = P[:, None, :] - P[None, :, :]
            dist = np.sqrt((delta * delta).sum(axis=-1))
            np.fill_diagonal(dist, 1.0)
            dist = np.maximum(dist, 1e-9)
            disp = (delta * (k * k / dist**2)[:, :, None]).sum(axis=1)
            d = P[src] - P[dst]
            dl = np.maximum(np.sqrt((d * d).sum(axis=1)), 1e-9)
            pull = d * (wts * dl / k)[:, None]
            np.subtract.at(disp, src, pull)
            np.add.at(disp, dst, pull)
            length = np.maximum(np.sqrt((disp * disp).sum(axis=1)), 1e-12)
            P += disp / length[:, None] * np.minimum(length, temp)[:, None]
            temp -= cooling
        P -= P.mean(axis=0)
        scale = np.abs(P).max()
        if scale > 0:
            P /= scale
        pos[active] = P

    if isolated.size:
        radius = 1.25 if active.size else 1.0
        angles = 2 * np.pi * np.arange(isolated.size) / isolated.size
        pos[isolated] = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    return pos


# -- writers -------------------------------------------------------------------

def _dot_id(label):
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(G, coords):
    lines = ["graph cohesion {", f'  graph [threshold="{fmt_num(G.threshold)}"];']
    for i, label in enumerate(G.labels):
        attrs = []
        if G.node_values is not None:
            attrs.append(f'value="{fmt_num(G.node_values[i])}"')
        if coords is not None:
            attrs.append(f'pos="{fmt_num(coords[i][0])},{fmt_num(coords[i][1])}"')
        tail = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_id(label)}{tail};")
    for x, y, w in G.edges:
        lines.append(f"  {_dot_id(G.labels[x])} -- {_dot_id(G.labels[y])} [weight={fmt_num(w)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_graphml(G, coords):
    ns = "http://graphml.graphdrawing.org/xmlns"
    root = ET.Element("graphml", xmlns=ns)
    keys = [("threshold", "graph"), ("weight", "edge"), ("label", "node")]
    if G.node_values is not None:
        keys.append(("value", "node"))
    if coords is not None:
        keys += [("x", "node"), ("y", "node")]
    for name, domain in keys:
        ET.SubElement(root, "key", {"id": name, "for": domain, "attr.name": name,
                                    "attr.type": "string" if name == "label" else "double"})
    g = ET.SubElement(root, "graph", id="cohesion", edgedefault="undirected")
    ET.SubElement(g, "data", key="threshold").text = fmt_num(G.threshold)
    for i, label in enumerate(G.labels):
        node = ET.SubElement(g, "node", id=f"n{i}")
        ET.SubElement(node, "data", key="label").text = label
        if G.node_values is not None:
            ET.SubElement(node, "data", key="value").text = fmt_num(G.node_values[i])
        if coords is not None:
            ET.SubElement(node, "data", key="x").text = fmt_num(coords[i][0])
            ET.SubElement(node, "data", key="y").text = fmt_num(coords[i][1])
    for k, (x, y, w) in enumerate(G.edges):
        edge = ET.SubElement(g, "edge", id=f"e{k}", source=f"n{x}", target=f"n{y}")
        ET.SubElement(edge, "data", key="weight").text = fmt_num(w)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _json_num(x):
    return float(fmt_num(x))


def _to_json(G, coords):
    doc = {
        "format": "pald-cohesion-graph",
        "version": 1,
        "threshold": _json_num(G.threshold),
        "nodes": [
            {"id": i, "label": label,
             "value": None if G.node_values is None else _json_num(G.node_values[i]),
             **({} if coords is None else {"x": _json_num(coords[i][0]), "y": _json_num(coords[i][1])})}
            for i, label in enumerate(G.labels)
        ],
        "edges": [{"source": x, "target": y, "weight": _json_num(w)} for x, y, w in G.edges],
    }
    return json.dumps(doc, indent=2) + "\n"


def _to_edge_csv(G):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x_label", "y_label", "mutual_cohesion"])
    for x, y, w in G.edges:
        writer.writerow([G.labels[x], G.labels[y], fmt_num(w)])
    return buf.getvalue()


def _ramp(t):
    t = min(max(t, 0.0), 1.0)
    r, g, b = (round(lo + (hi - lo) * t) for lo, hi in zip(RAMP_LOW, RAMP_HIGH))
    return f"#{r:02x}{g:02x}{b:02x}"


def _to_svg(G, coords):
    coords = np.asarray(coords, dtype=np.float64)
    span = max(float(np.abs(coords).max()), 1e-12) if coords.size else 1.0
    half = (SVG_SIZE - 2 * SVG_MARGIN) / 2

    def px(p):
        return SVG_SIZE / 2 + p[0] / span * half, SVG_SIZE / 2 - p[1] / span * half

    fills = [NODE_FILL] * G.n
    if G.node_values is not None and G.n:
        lo, hi = min(G.node_values), max(G.node_values)
        fills = [_ramp(0.5 if hi == lo else (v - lo) / (hi - lo)) for v in G.node_values]

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
           f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
           '<rect width="100%" height="100%" fill="white"/>',
           '<g id="edges">']
    for x, y, w in G.edges:
        (x1, y1), (x2, y2) = px(coords[x]), px(coords[y])
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="{EDGE_COLOR}" stroke-width="{fmt_num(EDGE_WIDTH_PER_UNIT * w)}" '
                   f'data-weight="{fmt_num(w)}"/>')
    out.append("</g>")
    out.append('<g id="nodes" font-family="sans-serif" font-size="11">')
    for i, label in enumerate(G.labels):
        cx, cy = px(coords[i])
        text = label.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{NODE_RADIUS}" fill="{fills[i]}" '
                   f'stroke="black" stroke-width="0.8"/>')
        out.append(f'<text x="{cx + NODE_RADIUS + 2:.2f}" y="{cy + 4:.2f}">{text}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export(G, fmt, coords=None):
    """Serialize a graph; returns UTF-8 bytes.

    ``fmt`` is one of ``dot``, ``graphml``, ``json``, ``edge-csv`` or ``svg``;
    ``svg`` requires ``coords`` (see :func:`layout`).
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if coords is not None:
        coords = np.asarray(coords, dtype=np.float64)
    if fmt == "dot":
        text = _to_dot(G, coords)
    elif fmt == "graphml":
        text = _to_graphml(G, coords)
    elif fmt == "json":
        text = _to_json(G, coords)
    elif fmt == "edge-csv":
        text = _to_edge_csv(G)
    else:
        if coords is None:
            raise ValueError("svg export requires a layout")
        text = _to_svg(G, coords)
    return text.encode("utf-8")


# -- readers -------------------------------------------------------------------

def read_edge_csv(data, labels=None, threshold=0.0, node_values=None):
    """Inverse of the ``edge-csv`` writer.

    The CSV holds edges only, so the node list, threshold and node values
    are supplied by the caller; without ``labels`` nodes are taken in order
    of first appearance.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["x_label", "y_label", "mutual_cohesion"]:
        raise IngestError("edge CSV must start with header x_label,y_label,mutual_cohesion")
    order = list(labels) if labels is not None else []
    edges = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise IngestError(f"line {lineno}: expected 3 columns, got {len(row)}")
        a, b, w = row
        for lab in (a, b):
            if lab not in order:
                if labels is not None:
                    raise IngestError(f"line {lineno}: unknown label {lab!r}")
                order.append(lab)
        try:
            weight = float(w)
        except ValueError:
            raise IngestError(f"line {lineno}: non-numeric weight {w!r}") from None
        x, y = sorted((order.index(a), order.index(b)))
        edges.append((x, y, weight))
    return CohesionGraph(order, edges, threshold, node_values)


def read_json(data):
    """Inverse of the ``json`` writer."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise IngestError(f"invalid JSON: {exc}") from None
    if doc.get("format") != "pald-cohesion-graph":
        raise IngestError("not a pald cohesion graph document")
    nodes = sorted(doc["nodes"], key=lambda nd: nd["id"])
    values = [nd.get("value") for nd in nodes]
    node_values = None if all(v is None for v in values) else values
    edges = [(e["source"], e["target"], e["weight"]) for e in doc["edges"]]
    return CohesionGraph([nd["label"] for nd in nodes], edges, doc["threshold"], node_values)
