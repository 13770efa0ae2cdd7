"""Node-link diagram model: GraphML loading, validation and derived values.

Position convention: normalized screen units in the unit square, origin at
the top-left corner, y increasing downward. Loading rescales arbitrary input
coordinates uniformly (aspect ratio preserved) so the drawing's bounding box
fits the unit square, centered along the shorter axis.

GraphML convention: per-node data keys ``x``, ``y`` (floats, arbitrary
units), ``label`` (display name) and optional ``size`` (hit radius, same
units as x/y). Any other node or edge data key becomes an ordered attribute.
A graph-level ``alt_text`` key carries the textual description and ``title``
names the diagram. Edges must be undirected; edge ids are optional and
default to ``"<u>--<v>"`` with endpoints sorted.
"""
from __future__ import annotations

import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .errors import (
    EmptyDiagram,
    MalformedDocument,
    SchemaViolation,
    UnknownLink,
    UnknownNode,
    UnsupportedFeature,
)

DEFAULT_NODE_RADIUS = 0.045
# Above this the diagram loads with a warning; interaction degrades but works.
COMPLEXITY_WARNING_NODES = 60

Position = tuple[float, float]
Attributes = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Node:
    id: str
    label: str
    position: Position
    radius: float = DEFAULT_NODE_RADIUS
    attributes: Attributes = ()


@dataclass(frozen=True)
class Link:
    id: str
    endpoints: tuple[str, str]
    label: str = ""
    attributes: Attributes = ()

    def other_end(self, node_id: str) -> str:
        a, b = self.endpoints
        return b if node_id == a else a


@dataclass(frozen=True)
class PitchMap:
    """Equal-temperament ranges for node and link sounds.

    Node pitch rises with connection count; link pitch rises as links get
    shorter (long strings vibrate at lower frequencies).
    """

    node_base_hz: float = 220.0
    node_span_semitones: int = 12
    link_base_hz: float = 330.0
    link_span_semitones: int = 12

    def __post_init__(self):
        if self.node_base_hz <= 0 or self.link_base_hz <= 0:
            raise ValueError("base frequencies must be positive")
        if self.node_span_semitones < 1 or self.link_span_semitones < 1:
            raise ValueError("spans must be at least one semitone")


@dataclass(frozen=True)
class Diagram:
    nodes: tuple[Node, ...]
    links: tuple[Link, ...]
    alt_text: str = ""
    title: str = ""
    bounds: tuple[Position, Position] = ((0.0, 0.0), (1.0, 1.0))
    warnings: tuple[str, ...] = ()
    _node_index: dict = field(default_factory=dict, compare=False, repr=False)
    _link_index: dict = field(default_factory=dict, compare=False, repr=False)
    _adjacency: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        node_index = {n.id: n for n in self.nodes}
        link_index = {l.id: l for l in self.links}
        adjacency: dict[str, list[Link]] = {n.id: [] for n in self.nodes}
        for link in self.links:
            a, b = link.endpoints
            adjacency[a].append(link)
            adjacency[b].append(link)
        object.__setattr__(self, "_node_index", node_index)
        object.__setattr__(self, "_link_index", link_index)
        object.__setattr__(self, "_adjacency", adjacency)

    def node(self, node_id: str) -> Node:
        try:
            return self._node_index[node_id]
        except KeyError:
            raise UnknownNode(f"no node {node_id!r}") from None

    def link(self, link_id: str) -> Link:
        try:
            return self._link_index[link_id]
        except KeyError:
            raise UnknownLink(f"no link {link_id!r}") from None

    def incident_links(self, node_id: str) -> tuple[Link, ...]:
        self.node(node_id)
        return tuple(self._adjacency[node_id])


def build_diagram(
    nodes: Iterable[Node],
    links: Iterable[Link],
    alt_text: str = "",
    title: str = "",
    warnings: Iterable[str] = (),
) -> Diagram:
    """Validate and assemble a diagram from already-normalized parts."""
    nodes = tuple(nodes)
    links = tuple(links)
    if not nodes:
        raise EmptyDiagram("diagram has no nodes")
    node_ids = set()
    for n in nodes:
        if n.id in node_ids:
            raise SchemaViolation(f"duplicate node id {n.id!r}")
        node_ids.add(n.id)
        if n.radius <= 0:
            raise SchemaViolation(f"node {n.id!r} has non-positive radius")
        seen_keys = set()
        for key, _ in n.attributes:
            if key in seen_keys:
                raise SchemaViolation(f"node {n.id!r} repeats attribute {key!r}")
            seen_keys.add(key)
        x, y = n.position
        if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
            raise SchemaViolation(f"node {n.id!r} position outside bounds")
    link_ids = set()
    seen_pairs = set()
    for l in links:
        if l.id in link_ids:
            raise SchemaViolation(f"duplicate link id {l.id!r}")
        link_ids.add(l.id)
        a, b = l.endpoints
        if a == b:
            raise UnsupportedFeature(f"link {l.id!r} is a self-loop")
        if a not in node_ids or b not in node_ids:
            raise SchemaViolation(f"link {l.id!r} references a missing node")
        pair = frozenset((a, b))
        if pair in seen_pairs:
            raise UnsupportedFeature(f"parallel link {l.id!r} between {a!r} and {b!r}")
        seen_pairs.add(pair)
    warning_list = list(warnings)
    if len(nodes) > COMPLEXITY_WARNING_NODES:
        warning_list.append(
            f"{len(nodes)} nodes exceeds the recommended complexity bound"
            f" of {COMPLEXITY_WARNING_NODES}"
        )
    return Diagram(nodes, links, alt_text, title, warnings=tuple(warning_list))


# -- normalization ----------------------------------------------------------

def normalize_positions(
    positions: list[Position],
) -> tuple[list[Position], float]:
    """Fit positions into the unit square, preserving aspect ratio.

    Returns the new positions and the length scale factor applied. The larger
    bounding-box axis maps onto [0, 1]; the shorter axis is centered. When
    the input is already in canonical position the original coordinates are
    returned untouched, which makes normalization exactly idempotent.
    """
    xs = [p[0] for p in positions]
    ys = [p[1] for p in positions]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y)
    if span == 0.0:
        return [(0.5, 0.5) for _ in positions], 1.0
    off_x = (1.0 - (max_x - min_x) / span) / 2.0
    off_y = (1.0 - (max_y - min_y) / span) / 2.0
    moved = [
        ((x - min_x) / span + off_x, (y - min_y) / span + off_y)
        for x, y in positions
    ]
    drift = max(
        max(abs(a[0] - b[0]), abs(a[1] - b[1])) for a, b in zip(moved, positions)
    )
    if drift < 1e-12:
        return list(positions), 1.0
    return moved, 1.0 / span


# -- GraphML loading --------------------------------------------------------

_RESERVED_NODE_KEYS = ("x", "y", "label", "size")
_RESERVED_EDGE_KEYS = ("label",)
_RESERVED_GRAPH_KEYS = ("alt_text", "title")


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def load_graphml(source: bytes | str | Path | IO) -> Diagram:
    """Load and validate a GraphML document into a normalized Diagram.

    Accepts raw bytes/str content, a path, or a readable stream. Directed
    graphs, self-loops and parallel edges raise UnsupportedFeature; missing
    x/y/label data raises SchemaViolation; unparseable XML raises
    MalformedDocument; a graph without nodes raises EmptyDiagram.
    """
    text = _read_source(source)
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise MalformedDocument(f"not well-formed XML: {exc}") from exc
    if _local(root.tag) != "graphml":
        raise SchemaViolation(f"root element is <{_local(root.tag)}>, expected <graphml>")

    keys: dict[str, tuple[str, str, str | None]] = {}
    for el in root:
        if _local(el.tag) != "key":
            continue
        key_id = el.get("id")
        domain = el.get("for", "all")
        name = el.get("attr.name")
        if key_id is None or name is None:
            raise SchemaViolation("<key> requires id and attr.name")
        default = None
        for child in el:
            if _local(child.tag) == "default":
                default = child.text or ""
        keys[key_id] = (domain, name, default)

    graph = next((el for el in root if _local(el.tag) == "graph"), None)
    if graph is None:
        raise SchemaViolation("document has no <graph> element")
    if graph.get("edgedefault", "undirected") == "directed":
        raise UnsupportedFeature("directed graphs are not supported")

    def data_of(el: ET.Element) -> list[tuple[str, str]]:
        out = []
        for child in el:
            if _local(child.tag) != "data":
                continue
            ref = child.get("key")
            if ref not in keys:
                raise SchemaViolation(f"<data> references undeclared key {ref!r}")
            _, name, _ = keys[ref]
            out.append((name, (child.text or "").strip()))
        return out

    def defaults_for(domain: str) -> dict[str, str]:
        out = {}
        for key_domain, name, default in keys.values():
            if default is not None and key_domain in (domain, "all"):
                out[name] = default
        return out

    raw_nodes: list[tuple[str, str, float, float, float | None, Attributes]] = []
    node_defaults = defaults_for("node")
    for el in graph:
        if _local(el.tag) != "node":
            continue
        node_id = el.get("id")
        if node_id is None:
            raise SchemaViolation("<node> without id")
        data = data_of(el)
        values = dict(node_defaults)
        extras: list[tuple[str, str]] = []
        for name, value in data:
            if name in _RESERVED_NODE_KEYS:
                values[name] = value
            else:
                extras.append((name, value))
        for required in ("x", "y", "label"):
            if required not in values:
                raise SchemaViolation(f"node {node_id!r} is missing key {required!r}")
        try:
            x = float(values["x"])
            y = float(values["y"])
        except ValueError as exc:
            raise SchemaViolation(f"node {node_id!r} has non-numeric position") from exc
        size = None
        if "size" in values:
            try:
                size = float(values["size"])
            except ValueError as exc:
                raise SchemaViolation(f"node {node_id!r} has non-numeric size") from exc
        raw_nodes.append((node_id, values["label"], x, y, size, tuple(extras)))

    if not raw_nodes:
        raise EmptyDiagram("document contains no nodes")

    raw_links: list[Link] = []
    edge_defaults = defaults_for("edge")
    for el in graph:
        if _local(el.tag) != "edge":
            continue
        if el.get("directed", "false").lower() == "true":
            raise UnsupportedFeature("directed edges are not supported")
        source_id, target_id = el.get("source"), el.get("target")
        if source_id is None or target_id is None:
            raise SchemaViolation("<edge> requires source and target")
        edge_id = el.get("id") or "--".join(sorted((source_id, target_id)))
        values = dict(edge_defaults)
        extras = []
        for name, value in data_of(el):
            if name in _RESERVED_EDGE_KEYS:
                values[name] = value
            else:
                extras.append((name, value))
        raw_links.append(
            Link(edge_id, (source_id, target_id), values.get("label", ""), tuple(extras))
        )

    graph_values = dict(defaults_for("graph"))
    for name, value in data_of(graph):
        graph_values[name] = value
    alt_text = graph_values.get("alt_text", "")
    title = graph_values.get("title", graph.get("id", ""))

    positions, scale = normalize_positions([(x, y) for _, _, x, y, _, _ in raw_nodes])
    nodes = tuple(
        Node(
            node_id,
            label,
            positions[i],
            radius=(size * scale if size is not None else DEFAULT_NODE_RADIUS),
            attributes=extras,
        )
        for i, (node_id, label, _, _, size, extras) in enumerate(raw_nodes)
    )
    return build_diagram(nodes, raw_links, alt_text=alt_text, title=title)


def _read_source(source: bytes | str | Path | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, str):
        if source.lstrip().startswith("<"):
            return source
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


# -- canonical serialization ------------------------------------------------

def serialize_graphml(d: Diagram) -> str:
    """Emit canonical GraphML: fixed key order, normalized coordinates.

    Loading the output reproduces the diagram exactly (the coordinates are
    already canonical so normalization leaves them untouched).
    """
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<graphml xmlns="http://graphml.graphdrawing.org/xmlns">\n')

    node_attr_keys: list[str] = []
    for n in d.nodes:
        for key, _ in n.attributes:
            if key not in node_attr_keys:
                node_attr_keys.append(key)
    edge_attr_keys: list[str] = []
    for l in d.links:
        for key, _ in l.attributes:
            if key not in edge_attr_keys:
                edge_attr_keys.append(key)

    key_ids: dict[tuple[str, str], str] = {}

    def declare(domain: str, name: str, kind: str) -> None:
        key_id = f"k{len(key_ids)}"
        key_ids[(domain, name)] = key_id
        out.write(
            f'  <key id="{key_id}" for="{domain}" attr.name="{_esc(name)}"'
            f' attr.type="{kind}"/>\n'
        )

    declare("graph", "title", "string")
    declare("graph", "alt_text", "string")
    declare("node", "x", "double")
    declare("node", "y", "double")
    declare("node", "label", "string")
    declare("node", "size", "double")
    for key in node_attr_keys:
        declare("node", key, "string")
    declare("edge", "label", "string")
    for key in edge_attr_keys:
        declare("edge", key, "string")

    def data(domain: str, name: str, value: str) -> str:
        return f'<data key="{key_ids[(domain, name)]}">{_esc(value)}</data>'

    out.write('  <graph edgedefault="undirected">\n')
    out.write(f"    {data('graph', 'title', d.title)}\n")
    out.write(f"    {data('graph', 'alt_text', d.alt_text)}\n")
    for n in d.nodes:
        out.write(f'    <node id="{_esc(n.id)}">\n')
        out.write(f"      {data('node', 'x', repr(n.position[0]))}\n")
        out.write(f"      {data('node', 'y', repr(n.position[1]))}\n")
        out.write(f"      {data('node', 'label', n.label)}\n")
        out.write(f"      {data('node', 'size', repr(n.radius))}\n")
        for key, value in n.attributes:
            out.write(f"      {data('node', key, value)}\n")
        out.write("    </node>\n")
    for l in d.links:
        a, b = l.endpoints
        out.write(f'    <edge id="{_esc(l.id)}" source="{_esc(a)}" target="{_esc(b)}">\n')
        out.write(f"      {data('edge', 'label', l.label)}\n")
        for key, value in l.attributes:
            out.write(f"      {data('edge', key, value)}\n")
        out.write("    </edge>\n")
    out.write("  </graph>\n")
    out.write("</graphml>\n")
    return out.getvalue()


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


# -- derived quantities -----------------------------------------------------

def node_degree(d: Diagram, node_id: str) -> int:
    """Number of links incident to the node."""
    return len(d.incident_links(node_id))


def max_degree(d: Diagram) -> int:
    return max((node_degree(d, n.id) for n in d.nodes), default=0)


def node_pitch(d: Diagram, node_id: str, pm: PitchMap) -> float:
    """Frequency for a node: base pitch raised by degree.

    Degree maps linearly onto [0, node_span_semitones] over the diagram's
    degree range, so the best-connected node always sounds highest. If every
    node shares one degree the mapping collapses to the base frequency.
    """
    degree = node_degree(d, node_id)
    top = max_degree(d)
    semitones = pm.node_span_semitones * (degree / top) if top > 0 else 0.0
    return pm.node_base_hz * 2.0 ** (semitones / 12.0)


def link_length(d: Diagram, link_id: str) -> float:
    """Euclidean distance between the link's endpoint centers."""
    link = d.link(link_id)
    (ax, ay) = d.node(link.endpoints[0]).position
    (bx, by) = d.node(link.endpoints[1]).position
    return math.sqrt((ax - bx) ** 2 + (ay - by) ** 2)


def link_pitch(d: Diagram, link_id: str, pm: PitchMap) -> float:
    """Frequency for a link: shorter links sound higher.

    The diagram's longest link maps to the base frequency and the shortest
    to the top of the span; a single length collapses to the base.
    """
    length = link_length(d, link_id)
    lengths = [link_length(d, l.id) for l in d.links]
    lo, hi = min(lengths), max(lengths)
    if hi > lo:
        semitones = pm.link_span_semitones * ((hi - length) / (hi - lo))
    else:
        semitones = 0.0
    return pm.link_base_hz * 2.0 ** (semitones / 12.0)
