"""Serialization of networks (GraphML, DOT, edge CSV) and topology reports (JSON).

All writers emit nodes then edges in sorted order, so exporting the same
network twice gives identical bytes. GraphML is also read back, which lets
``analyze`` work from files written by ``extract``.
"""

from __future__ import annotations

import csv
import io
import json
import re
import xml.etree.ElementTree as ET
from enum import Enum
from typing import BinaryIO, Optional, Union

from .analysis import TopologyReport
from .errors import ParseError
from .model import Edge, Granularity, Model, Network, NetworkSpec, Node

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


class ExportFormat(str, Enum):
    GRAPHML = "graphml"
    DOT = "dot"
    EDGECSV = "edgecsv"
    REPORTJSON = "reportjson"

    @property
    def extension(self) -> str:
        return {"graphml": "graphml", "dot": "dot", "edgecsv": "csv", "reportjson": "json"}[self.value]


GRAPH_FORMATS = (ExportFormat.GRAPHML, ExportFormat.DOT, ExportFormat.EDGECSV)


def _sorted(net: Network) -> tuple[list[Node], list[Edge]]:
    return sorted(net.nodes, key=lambda n: n.id), sorted(net.edges, key=lambda e: e.pair)


# ----------------------------------------------------------------------------
# GraphML
# ----------------------------------------------------------------------------

_GRAPH_KEYS = [
    ("model", "string"),
    ("description", "string"),
    ("granularity", "string"),
    ("mode", "string"),
    ("matching", "string"),
    ("similarityFunction", "string"),
    ("threshold", "double"),
    ("serviceScope", "boolean"),
]
_NODE_KEYS = [("label", "string"), ("kind", "string"), ("memberCount", "int"), ("members", "string")]
_EDGE_KEYS = [("provenanceCount", "int"), ("provenance", "string")]


def _graphml_bytes(net: Network) -> bytes:
    ET.register_namespace("", GRAPHML_NS)
    ns = f"{{{GRAPHML_NS}}}"

    def sub(parent, tag, attrib, text=None):
        el = ET.SubElement(parent, ns + tag, attrib)
        el.text = text
        return el

    root = ET.Element(ns + "graphml")
    for prefix, where, keys in (("g", "graph", _GRAPH_KEYS), ("n", "node", _NODE_KEYS), ("e", "edge", _EDGE_KEYS)):
        for name, typ in keys:
            sub(root, "key", {"id": f"{prefix}_{name}", "for": where, "attr.name": name, "attr.type": typ})
    graph = sub(root, "graph", {"id": "G", "edgedefault": "directed" if net.directed else "undirected"})
    if net.spec is not None:
        for name, value in net.spec.to_dict().items():
            if value is None:
                continue
            text = ("true" if value else "false") if isinstance(value, bool) else str(value)
            sub(graph, "data", {"key": f"g_{name}"}, text)
    nodes, edges = _sorted(net)
    for n in nodes:
        el = sub(graph, "node", {"id": n.id})
        sub(el, "data", {"key": "n_label"}, n.label)
        sub(el, "data", {"key": "n_kind"}, n.kind.value)
        sub(el, "data", {"key": "n_memberCount"}, str(len(n.members)))
        sub(el, "data", {"key": "n_members"}, json.dumps(list(n.members), ensure_ascii=False))
    for e in edges:
        el = sub(graph, "edge", {"source": e.tail, "target": e.head})
        sub(el, "data", {"key": "e_provenanceCount"}, str(len(e.provenance)))
        sub(el, "data", {"key": "e_provenance"}, json.dumps(list(e.provenance), ensure_ascii=False))
    ET.indent(root)
    body = ET.tostring(root, encoding="unicode")
    return ('<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n").encode("utf-8")


def read_graphml(source: Union[str, bytes, BinaryIO]) -> Network:
    """Parse GraphML written by this module back into a Network."""
    try:
        if isinstance(source, bytes):
            root = ET.fromstring(source)
        else:
            root = ET.parse(source).getroot()
    except ET.ParseError as exc:
        raise ParseError(f"GraphML: {exc}") from exc

    def q(tag):
        return f"{{{GRAPHML_NS}}}{tag}"

    keys = {k.get("id"): k.get("attr.name") for k in root.iter(q("key"))}
    graph = root.find(q("graph"))
    if graph is None:
        raise ParseError("GraphML: no graph element")

    def data_of(el) -> dict[str, str]:
        return {keys.get(d.get("key"), d.get("key")): (d.text or "") for d in el.findall(q("data"))}

    gdata = data_of(graph)
    spec = None
    if "model" in gdata:
        spec = NetworkSpec.from_dict({
            "model": gdata["model"],
            "description": gdata.get("description"),
            "granularity": gdata.get("granularity"),
            "mode": gdata.get("mode"),
            "matching": gdata.get("matching"),
            "similarityFunction": gdata.get("similarityFunction"),
            "threshold": float(gdata["threshold"]) if "threshold" in gdata else None,
            "serviceScope": gdata.get("serviceScope") == "true",
        })
    try:
        nodes = []
        for el in graph.findall(q("node")):
            d = data_of(el)
            nodes.append(Node(el.get("id"), d.get("label", el.get("id")), Granularity(d.get("kind", "operation")),
                              tuple(json.loads(d.get("members", "[]")))))
        edges = []
        for el in graph.findall(q("edge")):
            d = data_of(el)
            edges.append(Edge(el.get("source"), el.get("target"), tuple(json.loads(d.get("provenance", "[]")))))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"GraphML: {exc}") from exc
    return Network(spec, graph.get("edgedefault", "directed") == "directed", tuple(nodes), tuple(edges))


# ----------------------------------------------------------------------------
# DOT
# ----------------------------------------------------------------------------

_UNSAFE = re.compile(r"[^0-9A-Za-z_]")


def dot_ids(node_ids: list[str]) -> dict[str, str]:
    """Map raw ids to DOT identifiers: non-alphanumerics become ``_``, collisions get ``_2``, ``_3``..."""
    out: dict[str, str] = {}
    used: set[str] = set()
    for raw in sorted(node_ids):
        base = _UNSAFE.sub("_", raw) or "_"
        if base[0].isdigit():
            base = "n" + base
        cand, k = base, 1
        while cand in used:
            k += 1
            cand = f"{base}_{k}"
        used.add(cand)
        out[raw] = cand
    return out


def _dot_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _dot_bytes(net: Network) -> bytes:
    nodes, edges = _sorted(net)
    ids = dot_ids([n.id for n in nodes])
    name = net.spec.name if net.spec else "network"
    kw, arrow = ("digraph", "->") if net.directed else ("graph", "--")
    lines = [f"{kw} {_dot_str(name)} {{"]
    for n in nodes:
        lines.append(f"  {ids[n.id]} [label={_dot_str(n.label)}, kind={n.kind.value}, memberCount={len(n.members)}];")
    pairs = {e.pair for e in edges}
    collapse = net.directed and net.spec is not None and net.spec.model is Model.SIMILARITY
    for e in edges:
        if collapse and (e.head, e.tail) in pairs:
            # symmetric relation stored as two arcs: one undirected statement
            if e.tail < e.head:
                lines.append(f"  {ids[e.tail]} {arrow} {ids[e.head]} [dir=none];")
            continue
        lines.append(f"  {ids[e.tail]} {arrow} {ids[e.head]};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


# ----------------------------------------------------------------------------
# CSV
# ----------------------------------------------------------------------------


def _csv_bytes(net: Network) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["tail", "head", "provenanceCount"])
    for e in _sorted(net)[1]:
        writer.writerow([e.tail, e.head, len(e.provenance)])
    return buf.getvalue().encode("utf-8")


_WRITERS = {
    ExportFormat.GRAPHML: _graphml_bytes,
    ExportFormat.DOT: _dot_bytes,
    ExportFormat.EDGECSV: _csv_bytes,
}


def graph_bytes(net: Network, fmt: Union[ExportFormat, str]) -> bytes:
    fmt = ExportFormat(fmt)
    if fmt not in _WRITERS:
        raise ValueError(f"{fmt.value} is not a graph format")
    return _WRITERS[fmt](net)


def export_graph(net: Network, fmt: Union[ExportFormat, str], sink: BinaryIO) -> None:
    sink.write(graph_bytes(net, fmt))


# ----------------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------------


def report_bytes(rep: TopologyReport) -> bytes:
    return (json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n").encode("utf-8")


def export_report(rep: TopologyReport, sink: BinaryIO) -> None:
    sink.write(report_bytes(rep))


def read_report(source: Union[bytes, str]) -> TopologyReport:
    return TopologyReport.from_dict(json.loads(source))


SUMMARY_COLUMNS = [
    "network",
    "isolated_nodes",
    "trimmed_nodes",
    "components",
    "links",
    "total_nodes",
    "total_links",
    "isolated_percent",
    "giant_node_percent",
    "giant_link_percent",
    "small_component_min",
    "small_component_max",
    "components_for_90_percent",
]


def summary_csv(rows: list[tuple[str, TopologyReport]]) -> bytes:
    """One row per network: isolated nodes, trimmed nodes, components and links
    (computed on the trimmed network), followed by the giant-component figures."""

    def pct(x: float) -> str:
        return f"{100 * x:.4f}"

    def opt(x: Optional[int]) -> str:
        return "" if x is None else str(x)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(SUMMARY_COLUMNS)
    for name, r in rows:
        writer.writerow([
            name, r.isolated_nodes, r.trimmed_nodes, r.component_count, r.trimmed_edges,
            r.total_nodes, r.total_edges, pct(r.isolated_fraction), pct(r.giant_node_fraction),
            pct(r.giant_edge_fraction), opt(r.small_component_min), opt(r.small_component_max),
            r.components_for_90_percent,
        ])
    return buf.getvalue().encode("utf-8")
