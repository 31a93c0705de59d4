"""Merging (pushouts of open embeddings), plugging, tensor, subtraction and substitution.

Pushouts are computed concretely: the left graph keeps its ids, the right
graph's unshared elements keep theirs unless they clash, in which case they
get fresh ids from :class:`~opengraph.graph.FreshIds`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Optional

from .errors import (
    BoundaryMismatch,
    BranchingEdgePoint,
    IncoherentBoundaries,
    NotAnOpenEmbedding,
    NotAPointGraph,
    OpenConditionViolated,
)
from .graph import EMPTY, FreshIds, OpenGraph, is_point_graph, point_graph, sort_ids
from .homeo import proper
from .matching import Embedding, check_open_embedding


@dataclass(frozen=True)
class MergeSpec:
    K: OpenGraph
    e1: Embedding
    e2: Embedding


@dataclass(frozen=True)
class PlugSpec:
    P: OpenGraph
    b: Mapping[str, str]
    b2: Mapping[str, str]

    def embeddings(self, left: OpenGraph, right: OpenGraph) -> tuple[Embedding, Embedding]:
        return Embedding(self.P, left, dict(self.b), {}), Embedding(self.P, right, dict(self.b2), {})


@dataclass(frozen=True)
class Interface:
    P_I: OpenGraph
    b_I: Mapping[str, str]
    P_O: OpenGraph
    b_O: Mapping[str, str]


class Merged(NamedTuple):
    graph: OpenGraph
    i1: Embedding
    i2: Embedding


def boundary_coherent(e1: Embedding, e2: Embedding) -> bool:
    K, G1, G2 = e1.source, e1.target, e2.target
    b1, b2 = G1.boundary, G2.boundary
    bk = K.boundary
    for p in bk.bound:
        if e1(p) not in b1.bound and e2(p) not in b2.bound:
            return False
    for p in bk.isolated:
        x, y = e1(p), e2(p)
        if x in b1.isolated or y in b2.isolated:
            continue
        if (x in b1.inputs and y in b2.outputs) or (x in b1.outputs and y in b2.inputs):
            continue
        return False
    return True


def merge(G1: OpenGraph, G2: OpenGraph, spec: MergeSpec) -> Merged:
    """Pushout of ``G1 <- K -> G2``."""
    e1, e2 = spec.e1, spec.e2
    for name, f, tgt in (("e1", e1, G1), ("e2", e2, G2)):
        if f.source != spec.K or f.target != tgt:
            raise NotAnOpenEmbedding(f"{name} does not go from K into the graph being merged")
        why = check_open_embedding(f)
        if why:
            raise NotAnOpenEmbedding(f"{name}: {why}")
    if not boundary_coherent(e1, e2):
        raise IncoherentBoundaries("embeddings are not boundary-coherent")
    fresh = FreshIds(G1.ids | G2.ids)
    glued_p = {e2.points[k]: e1.points[k] for k in spec.K.points}
    glued_e = {e2.edges[k]: e1.edges[k] for k in spec.K.edges}
    pmap, emap = {}, {}
    for q in G2.sorted_points:
        if q in glued_p:
            pmap[q] = glued_p[q]
        else:
            pmap[q] = fresh.point() if q in G1.ids else q
    for f in G2.sorted_edges:
        if f in glued_e:
            emap[f] = glued_e[f]
        else:
            emap[f] = fresh.edge() if f in G1.ids else f
    points = dict(G1.points)
    edges = dict(G1.edges)
    for q, lab in G2.points.items():
        points.setdefault(pmap[q], lab)
    for f, (s, t) in G2.edges.items():
        if f not in glued_e:
            edges[emap[f]] = (pmap[s], pmap[t])
    try:
        M = OpenGraph(points, edges)
    except BranchingEdgePoint as exc:
        raise OpenConditionViolated(str(exc)) from None
    i1 = Embedding(G1, M, {p: p for p in G1.points}, {e: e for e in G1.edges})
    i2 = Embedding(G2, M, pmap, emap)
    return Merged(M, i1, i2)


def tensor(G: OpenGraph, H: OpenGraph) -> OpenGraph:
    empty1 = Embedding(EMPTY, G, {}, {})
    empty2 = Embedding(EMPTY, H, {}, {})
    return merge(G, H, MergeSpec(EMPTY, empty1, empty2)).graph


def _check_plug_side(spec: PlugSpec, g: OpenGraph, side: Mapping, other: OpenGraph, other_side: Mapping) -> None:
    bd = g.boundary
    for x, y in side.items():
        if y in bd.bound or y in bd.isolated:
            continue
        if other_side[x] in other.boundary.isolated:
            continue
        raise IncoherentBoundaries(f"plug point {x!r} maps to {y!r}, which is not on the boundary")


def plug_merge(G: OpenGraph, H: OpenGraph, spec: PlugSpec) -> Merged:
    if not is_point_graph(spec.P):
        raise NotAPointGraph("the shared graph of a plugging must consist of isolated points")
    if set(spec.b) != set(spec.P.points) or set(spec.b2) != set(spec.P.points):
        raise IncoherentBoundaries("plug maps must be total on the point graph")
    _check_plug_side(spec, G, spec.b, H, spec.b2)
    _check_plug_side(spec, H, spec.b2, G, spec.b)
    e1, e2 = spec.embeddings(G, H)
    return merge(G, H, MergeSpec(spec.P, e1, e2))


def plug(G: OpenGraph, H: OpenGraph, spec: PlugSpec) -> OpenGraph:
    return plug_merge(G, H, spec).graph


def interface(G: OpenGraph) -> Interface:
    ins, outs = G.inputs, G.outputs
    return Interface(point_graph(ins), {p: p for p in ins}, point_graph(outs), {p: p for p in outs})


def same_boundary(G: OpenGraph, H: OpenGraph) -> Optional[tuple[dict, dict]]:
    """Canonical input and output bijections, pairing ids in sorted order."""
    gi, go, hi, ho = G.inputs, G.outputs, H.inputs, H.outputs
    if len(gi) != len(hi) or len(go) != len(ho):
        return None
    return dict(zip(gi, hi)), dict(zip(go, ho))


def subtract(M: OpenGraph, e: Embedding) -> tuple[OpenGraph, PlugSpec]:
    """The part of ``M`` outside the image of ``e``.

    Images of the pattern's boundary and isolated points are kept, and the
    returned spec plugs the pattern back on: ``plug(G, H, spec) ~= M``.
    """
    why = check_open_embedding(e)
    if why or e.target != M:
        raise NotAnOpenEmbedding(why or "embedding does not target the graph")
    G = e.source
    shared = sort_ids(G.boundary.bound | G.boundary.isolated)
    keep = {e.points[x] for x in shared}
    image_p = set(e.points.values())
    image_e = set(e.edges.values())
    points = {q: lab for q, lab in M.points.items() if q not in image_p or q in keep}
    edges = {f: st for f, st in M.edges.items() if f not in image_e}
    H = OpenGraph(points, edges)
    spec = PlugSpec(point_graph(shared), {x: x for x in shared}, {x: e.points[x] for x in shared})
    return H, spec


def check_correspondence(G: OpenGraph, G2: OpenGraph, inputs: Mapping, outputs: Mapping) -> None:
    if set(inputs) != G.boundary.inputs or set(inputs.values()) != G2.boundary.inputs:
        raise BoundaryMismatch("input correspondence is not a bijection In(L) -> In(R)")
    if set(outputs) != G.boundary.outputs or set(outputs.values()) != G2.boundary.outputs:
        raise BoundaryMismatch("output correspondence is not a bijection Out(L) -> Out(R)")
    if len(set(inputs.values())) != len(inputs) or len(set(outputs.values())) != len(outputs):
        raise BoundaryMismatch("boundary correspondence is not injective")
    if len(G.isolated) != len(G2.isolated):
        raise BoundaryMismatch("graphs have different numbers of isolated points")


def isolated_pairing(G: OpenGraph, G2: OpenGraph) -> dict:
    """Isolated points are boundary too; they correspond in sorted id order."""
    return dict(zip(G.isolated, G2.isolated))


def substitute(M: OpenGraph, e: Embedding, G2: OpenGraph, corr=None, normalise: bool = True) -> OpenGraph:
    """Replace the image of ``e`` in ``M`` by ``G2``.

    ``corr`` is a pair ``(inputs, outputs)`` of maps from the boundary of
    the embedded graph to the boundary of ``G2``; by default the canonical
    :func:`same_boundary` witness.  Boundary ids of ``M`` survive unchanged.
    """
    G = e.source
    if corr is None:
        corr = same_boundary(G, G2)
        if corr is None:
            raise BoundaryMismatch("graphs do not have the same boundary")
    inputs, outputs = corr
    check_correspondence(G, G2, inputs, outputs)
    H, _ = subtract(M, e)
    glue = {**inputs, **outputs, **isolated_pairing(G, G2)}
    shared = sort_ids(glue)
    spec = PlugSpec(point_graph(shared), {x: e.points[x] for x in shared}, {x: glue[x] for x in shared})
    result = plug_merge(H, G2, spec).graph
    return proper(result) if normalise else result
