"""Byte-stable JSON and DOT for graphs, gadgets and tree systems."""

from __future__ import annotations

import json
from typing import Any

from .gadgets import Gadget
from .graph import Graph, GraphError, SpanningTree, TreeSystem
from .verify import SCHEMA


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def graph_to_dict(g: Graph) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "labels": {str(v): g.labels[v] for v in sorted(g.labels)},
    }


def graph_from_dict(d: dict[str, Any]) -> Graph:
    if d.get("schema", SCHEMA) != SCHEMA:
        raise GraphError(f"unknown graph schema {d.get('schema')!r}")
    try:
        labels = {int(k): str(v) for k, v in d.get("labels", {}).items()}
        return Graph(int(d["n"]), [tuple(e) for e in d["edges"]], labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None


def gadget_to_dict(gd: Gadget) -> dict[str, Any]:
    out = graph_to_dict(gd.graph)
    out["gadget"] = {
        "name": gd.name,
        "root": gd.root,
        "terminals": list(gd.terminals),
        "terminal_edges": [list(e) for e in gd.terminal_edges],
    }
    return out


def gadget_from_dict(d: dict[str, Any]) -> Gadget:
    g = graph_from_dict(d)
    meta = d.get("gadget")
    if meta is None:
        raise GraphError("JSON has no gadget roles")
    return Gadget(
        g,
        int(meta["root"]),
        tuple(int(t) for t in meta["terminals"]),
        name=meta.get("name", "gadget"),
        terminal_edges=tuple(tuple(e) for e in meta.get("terminal_edges", [])),
    )


def trees_to_dict(ts: TreeSystem) -> dict[str, Any]:
    return {"schema": SCHEMA, "trees": [[list(e) for e in sorted(t.edges)] for t in ts.trees]}


def trees_from_dict(host: Graph, d: dict[str, Any]) -> TreeSystem:
    return TreeSystem(host, [SpanningTree(host, t) for t in d["trees"]])


def to_dot(g: Graph, gd: Gadget | None = None, name: str = "G") -> str:
    """DOT text; the root is drawn as a double circle and terminals as boxes."""
    root = gd.root if gd is not None else None
    terms = set(gd.terminals) if gd is not None else set()
    tedges = set(gd.terminal_edges) if gd is not None else set()
    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    for v in range(g.n):
        attrs = [f"label={_quote(g.label(v))}"]
        if v == root:
            attrs.append("shape=doublecircle")
        elif v in terms:
            attrs.append("shape=box")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges:
        style = " [style=bold]" if (u, v) in tedges else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
