"""Graphviz DOT rendering."""

from __future__ import annotations

import json

from .graph import OpenGraph


def _q(s: str) -> str:
    return json.dumps(s)


def export_dot(g: OpenGraph, name: str = "G") -> str:
    """Vertices become labelled boxes and edge-points small dots.

    Inputs and outputs carry an ``in``/``out`` xlabel; a circle in proper
    form shows up as a dot with a self-loop.  Output is sorted by id.
    """
    bd = g.boundary
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for p in g.sorted_points:
        if g.is_vertex(p):
            lines.append(f"  {_q(p)} [shape=box, label={_q(g.label(p))}];")
            continue
        attrs = ["shape=point", "width=0.08"]
        if p in bd.inputs:
            attrs.append('xlabel="in"')
        elif p in bd.outputs:
            attrs.append('xlabel="out"')
        lines.append(f"  {_q(p)} [{', '.join(attrs)}];")
    for e in g.sorted_edges:
        s, t = g.edges[e]
        lines.append(f"  {_q(s)} -> {_q(t)} [id={_q(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
