"""Serializers for resonance graphs and property reports."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

from .matchings import PerfectMatching
from .resonance import ResonanceGraph


def _label(x) -> str:
    if isinstance(x, PerfectMatching):
        return "-".join(map(str, x.edges))
    return str(x)


def to_dot(g: ResonanceGraph, name: str = "R") -> str:
    lines = [f"graph {name} {{"]
    for i, lab in enumerate(g.labels):
        lines.append(f'  v{i} [label="{_label(lab)}"];')
    for a, b in sorted(g.edges):
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphml(g: ResonanceGraph) -> str:
    ns = "http://graphml.graphdrawing.org/xmlns"
    root = ET.Element("graphml", xmlns=ns)
    ET.SubElement(
        root, "key", id="code", attrib={"for": "node", "attr.name": "code", "attr.type": "string"}
    )
    graph = ET.SubElement(root, "graph", id="R", edgedefault="undirected")
    for i, lab in enumerate(g.labels):
        node = ET.SubElement(graph, "node", id=f"v{i}")
        ET.SubElement(node, "data", key="code").text = _label(lab)
    for k, (a, b) in enumerate(sorted(g.edges)):
        ET.SubElement(graph, "edge", id=f"e{k}", source=f"v{a}", target=f"v{b}")
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def to_json_graph(g: ResonanceGraph) -> str:
    labels = [_label(x) for x in g.labels]
    return json.dumps(
        {
            "provenance": g.provenance,
            "vertices": labels,
            "edges": [[labels[a], labels[b]] for a, b in sorted(g.edges)],
        },
        indent=2,
    ) + "\n"


def to_text(g: ResonanceGraph) -> str:
    labels = [_label(x) for x in g.labels]
    out = [f"vertices {g.order} edges {len(g.edges)}"]
    out += [f"{labels[a]} {labels[b]}" for a, b in sorted(g.edges)]
    return "\n".join(out) + "\n"


FORMATS = {"dot": to_dot, "graphml": to_graphml, "json": to_json_graph, "text": to_text}


def property_report(entries) -> str:
    """JSON list of ``{property, holds, witness}`` records."""
    return json.dumps(
        [{"property": p, "holds": bool(h), "witness": w} for p, h, w in entries], indent=2
    ) + "\n"
