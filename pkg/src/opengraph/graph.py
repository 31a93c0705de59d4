"""Open graphs: the data model, boundary classification, wires and isomorphism.

A graph is a set of points and a set of directed edges.  Each point is
either a *vertex* carrying an opaque string label, or an *edge-point*
(label ``None``).  Edge-points have at most one in-edge and at most one
out-edge; vertices may have any degree.

Ids are strings.  Point ids and edge ids live in one namespace and must
not collide.  They are ordered by :func:`id_key` ("natural" order, so
``p2 < p10``).  Fresh ids are ``p<n>`` for points and ``e<n>`` for edges,
where ``n`` counts upwards from 0 and skips anything already in use, see
:class:`FreshIds`.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .errors import BranchingEdgePoint, DanglingEndpoint, DuplicateId, InvalidGraph

EDGE_POINT = None

VERTEX_TO_VERTEX = "vertex-to-vertex"
VERTEX_TO_BOUNDARY = "vertex-to-boundary"
BOUNDARY_TO_BOUNDARY = "boundary-to-boundary"
CIRCLE = "circle"

_DIGITS = re.compile(r"(\d+)")


def id_key(ident: str):
    """Sort key giving the natural total order on ids."""
    parts = _DIGITS.split(ident)
    return tuple(int(x) if i % 2 else x for i, x in enumerate(parts)), ident


def sort_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=id_key)


class FreshIds:
    """Deterministic generator of unused point and edge ids."""

    def __init__(self, used: Iterable[str] = ()):
        self.used = set(used)
        self._next = {"p": 0, "e": 0}

    def _take(self, prefix: str) -> str:
        n = self._next[prefix]
        while f"{prefix}{n}" in self.used:
            n += 1
        self._next[prefix] = n + 1
        ident = f"{prefix}{n}"
        self.used.add(ident)
        return ident

    def point(self) -> str:
        return self._take("p")

    def edge(self) -> str:
        return self._take("e")

    def reserve(self, ident: str) -> None:
        self.used.add(ident)


def _as_pairs(data) -> list:
    if isinstance(data, Mapping):
        return list(data.items())
    return list(data)


class OpenGraph:
    """An immutable, validated open graph."""

    def __init__(self, points=(), edges=()):
        point_pairs = _as_pairs(points)
        edge_pairs = _as_pairs(edges)
        pts: dict[str, Optional[str]] = {}
        for p, label in point_pairs:
            if p in pts:
                raise DuplicateId(f"duplicate point id {p!r}")
            if label is not None and not isinstance(label, str):
                raise InvalidGraph(f"label of {p!r} must be a string or None")
            pts[p] = label
        eds: dict[str, tuple[str, str]] = {}
        for e, ends in edge_pairs:
            if e in eds:
                raise DuplicateId(f"duplicate edge id {e!r}")
            if e in pts:
                raise DuplicateId(f"id {e!r} used for both a point and an edge")
            s, t = ends
            for x in (s, t):
                if x not in pts:
                    raise DanglingEndpoint(f"edge {e!r} references missing point {x!r}")
            eds[e] = (s, t)
        ins: dict[str, list[str]] = {p: [] for p in pts}
        outs: dict[str, list[str]] = {p: [] for p in pts}
        for e, (s, t) in eds.items():
            outs[s].append(e)
            ins[t].append(e)
        for p, label in pts.items():
            if label is None and (len(ins[p]) > 1 or len(outs[p]) > 1):
                raise BranchingEdgePoint(
                    f"edge-point {p!r} has {len(ins[p])} in-edges and {len(outs[p])} out-edges"
                )
        self._points = pts
        self._edges = eds
        self._ins = {p: tuple(sort_ids(v)) for p, v in ins.items()}
        self._outs = {p: tuple(sort_ids(v)) for p, v in outs.items()}

    # -- accessors -------------------------------------------------------

    @property
    def points(self) -> Mapping[str, Optional[str]]:
        return MappingProxyType(self._points)

    @property
    def edges(self) -> Mapping[str, tuple[str, str]]:
        return MappingProxyType(self._edges)

    def label(self, p: str) -> Optional[str]:
        return self._points[p]

    def is_vertex(self, p: str) -> bool:
        return self._points[p] is not None

    def is_edge_point(self, p: str) -> bool:
        return self._points[p] is None

    def src(self, e: str) -> str:
        return self._edges[e][0]

    def tgt(self, e: str) -> str:
        return self._edges[e][1]

    def in_edges(self, p: str) -> tuple[str, ...]:
        return self._ins[p]

    def out_edges(self, p: str) -> tuple[str, ...]:
        return self._outs[p]

    def in_edge(self, p: str) -> Optional[str]:
        es = self._ins[p]
        return es[0] if es else None

    def out_edge(self, p: str) -> Optional[str]:
        es = self._outs[p]
        return es[0] if es else None

    @cached_property
    def sorted_points(self) -> tuple[str, ...]:
        return tuple(sort_ids(self._points))

    @cached_property
    def sorted_edges(self) -> tuple[str, ...]:
        return tuple(sort_ids(self._edges))

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(p for p in self.sorted_points if self._points[p] is not None)

    @cached_property
    def edge_points(self) -> tuple[str, ...]:
        return tuple(p for p in self.sorted_points if self._points[p] is None)

    @cached_property
    def ids(self) -> frozenset[str]:
        return frozenset(self._points) | frozenset(self._edges)

    def fresh(self) -> FreshIds:
        return FreshIds(self.ids)

    def __len__(self) -> int:
        return len(self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OpenGraph):
            return NotImplemented
        return self._points == other._points and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((frozenset(self._points.items()), frozenset(self._edges.items())))

    def __repr__(self) -> str:
        return (
            f"OpenGraph({len(self.vertices)} vertices, {len(self.edge_points)} edge-points, "
            f"{len(self._edges)} edges)"
        )

    # -- derived structure ---------------------------------------------

    @cached_property
    def boundary(self) -> "BoundaryReport":
        ins, outs, iso = set(), set(), set()
        for p in self.edge_points:
            i, o = len(self._ins[p]), len(self._outs[p])
            if i == 0 and o == 1:
                ins.add(p)
            elif i == 1 and o == 0:
                outs.add(p)
            elif i == 0 and o == 0:
                iso.add(p)
        return BoundaryReport(frozenset(ins), frozenset(outs), frozenset(iso))

    @property
    def inputs(self) -> list[str]:
        return sort_ids(self.boundary.inputs)

    @property
    def outputs(self) -> list[str]:
        return sort_ids(self.boundary.outputs)

    @property
    def isolated(self) -> list[str]:
        return sort_ids(self.boundary.isolated)


def new_graph(points=(), edges=()) -> OpenGraph:
    """Validate raw point and edge data, returning an :class:`OpenGraph`.

    ``points`` maps ids to labels (``None`` for an edge-point), ``edges``
    maps ids to ``(src, tgt)`` pairs.  Either may also be given as an
    iterable of pairs, in which case repeated ids raise :class:`DuplicateId`.
    """
    return OpenGraph(points, edges)


EMPTY = OpenGraph()


@dataclass(frozen=True)
class BoundaryReport:
    inputs: frozenset
    outputs: frozenset
    isolated: frozenset

    @property
    def bound(self) -> frozenset:
        return self.inputs | self.outputs


def boundary(g: OpenGraph) -> BoundaryReport:
    return g.boundary


def is_point_graph(g: OpenGraph) -> bool:
    return not g.edges and all(g.is_edge_point(p) for p in g.points)


def point_graph(ids: Iterable[str]) -> OpenGraph:
    return OpenGraph([(p, None) for p in ids], ())


# -- wires -----------------------------------------------------------------


@dataclass(frozen=True)
class Wire:
    """A maximal chain of edges through edge-points.

    ``points`` lists every point along the wire in order; for an open wire
    it starts at ``src_end`` and finishes at ``tgt_end``, for a circle the
    first point is the source of the first edge and is not repeated.
    """

    edges: tuple[str, ...]
    points: tuple[str, ...]
    kind: str
    src_end: Optional[str]
    tgt_end: Optional[str]

    @property
    def interior(self) -> tuple[str, ...]:
        if self.kind == CIRCLE:
            return self.points
        return self.points[1:-1]

    def __len__(self) -> int:
        return len(self.edges)


def _continues(g: OpenGraph, p: str) -> bool:
    return g.is_edge_point(p) and bool(g.in_edges(p)) and bool(g.out_edges(p))


def wires(g: OpenGraph) -> list[Wire]:
    """Decompose ``g`` into wires, ordered by their least edge id."""
    seen: set[str] = set()
    result = []
    for e in g.sorted_edges:
        if e in seen:
            continue
        start = e
        closed = False
        while True:
            s = g.src(start)
            if not _continues(g, s):
                break
            prev = g.in_edge(s)
            if prev == e:
                closed = True
                break
            start = prev
        chain = []
        cur = e if closed else start
        while True:
            chain.append(cur)
            t = g.tgt(cur)
            if not _continues(g, t):
                break
            cur = g.out_edge(t)
            if cur == chain[0]:
                break
        seen.update(chain)
        points = [g.src(chain[0])] + [g.tgt(x) for x in chain]
        if closed:
            result.append(Wire(tuple(chain), tuple(points[:-1]), CIRCLE, None, None))
            continue
        a, b = points[0], points[-1]
        va, vb = g.is_vertex(a), g.is_vertex(b)
        if va and vb:
            kind = VERTEX_TO_VERTEX
        elif va or vb:
            kind = VERTEX_TO_BOUNDARY
        else:
            kind = BOUNDARY_TO_BOUNDARY
        result.append(Wire(tuple(chain), tuple(points), kind, a, b))
    return result


def graph_from_wires(vertices: Mapping[str, str], ws: Iterable[Wire], isolated=()) -> OpenGraph:
    """Rebuild a graph from its vertices, wires and isolated points."""
    points: dict[str, Optional[str]] = dict(vertices)
    edges = {}
    for w in ws:
        pts = list(w.points)
        if w.kind == CIRCLE:
            pts.append(pts[0])
        for i, e in enumerate(w.edges):
            for p in (pts[i], pts[i + 1]):
                points.setdefault(p, None)
            edges[e] = (pts[i], pts[i + 1])
    for p in isolated:
        points[p] = None
    return OpenGraph(points, edges)


# -- isomorphism -----------------------------------------------------------


@dataclass(frozen=True)
class Iso:
    points: Mapping[str, str]
    edges: Mapping[str, str]

    def inverse(self) -> "Iso":
        return Iso({v: k for k, v in self.points.items()}, {v: k for k, v in self.edges.items()})

    def then(self, other: "Iso") -> "Iso":
        return Iso(
            {k: other.points[v] for k, v in self.points.items()},
            {k: other.edges[v] for k, v in self.edges.items()},
        )


def _signature(g: OpenGraph, p: str):
    loops = sum(1 for e in g.out_edges(p) if g.tgt(e) == p)
    return (g.label(p) is not None, g.label(p) or "", len(g.in_edges(p)), len(g.out_edges(p)), loops)


def _pair_counts(g: OpenGraph) -> Counter:
    return Counter(g.edges.values())


def _search_order(g: OpenGraph, sigs, rarity) -> list[str]:
    remaining = set(g.points)
    order: list[str] = []
    frontier: set[str] = set()
    while remaining:
        pool = frontier & remaining or remaining
        p = min(pool, key=lambda x: (rarity[sigs[x]], id_key(x)))
        order.append(p)
        remaining.discard(p)
        for e in g.in_edges(p) + g.out_edges(p):
            frontier.update(g.edges[e])
    return order


def isomorphic(g: OpenGraph, h: OpenGraph) -> Optional[Iso]:
    """Find a kind- and label-preserving isomorphism ``g -> h``, or ``None``."""
    if len(g.points) != len(h.points) or len(g.edges) != len(h.edges):
        return None
    gs = {p: _signature(g, p) for p in g.points}
    hs = {p: _signature(h, p) for p in h.points}
    hist = Counter(gs.values())
    if hist != Counter(hs.values()):
        return None
    gc, hc = _pair_counts(g), _pair_counts(h)
    by_sig: dict = {}
    for q in h.sorted_points:
        by_sig.setdefault(hs[q], []).append(q)
    order = _search_order(g, gs, hist)
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(p: str, q: str) -> bool:
        for p2, q2 in mapping.items():
            if gc[(p, p2)] != hc[(q, q2)] or gc[(p2, p)] != hc[(q2, q)]:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        for q in by_sig[gs[p]]:
            if q in used or not consistent(p, q):
                continue
            mapping[p] = q
            used.add(q)
            if search(i + 1):
                return True
            del mapping[p]
            used.discard(q)
        return False

    if not search(0):
        return None
    groups: dict = {}
    for e in h.sorted_edges:
        groups.setdefault(h.edges[e], []).append(e)
    edge_map = {}
    taken: Counter = Counter()
    for e in g.sorted_edges:
        s, t = g.edges[e]
        key = (mapping[s], mapping[t])
        edge_map[e] = groups[key][taken[key]]
        taken[key] += 1
    return Iso(mapping, edge_map)


def tag_points(g: OpenGraph, tags: Mapping[str, str]) -> OpenGraph:
    """Turn the given edge-points into vertices labelled by their tag.

    Used to compare graphs up to isomorphism while pinning down chosen
    points, e.g. the boundary of a rewrite result.
    """
    points = {p: (("\x00" + tags[p]) if p in tags else lab) for p, lab in g.points.items()}
    return OpenGraph(points, g.edges)


def pin_boundary(g: OpenGraph) -> OpenGraph:
    """Tag every boundary point with its own id."""
    return tag_points(g, {p: p for p in g.boundary.bound})


# -- renaming and serialisation -------------------------------------------


def rename(g: OpenGraph, point_map: Mapping[str, str], edge_map: Mapping[str, str] = MappingProxyType({})) -> OpenGraph:
    """Rename ids; ids absent from the maps are kept."""
    pm = lambda p: point_map.get(p, p)  # noqa: E731
    return OpenGraph(
        [(pm(p), lab) for p, lab in g.points.items()],
        [(edge_map.get(e, e), (pm(s), pm(t))) for e, (s, t) in g.edges.items()],
    )


def graph_to_dict(g: OpenGraph) -> dict:
    points = {}
    for p, lab in g.points.items():
        points[p] = {"kind": "edge-point"} if lab is None else {"kind": "vertex", "label": lab}
    edges = {e: {"src": s, "tgt": t} for e, (s, t) in g.edges.items()}
    return {"points": points, "edges": edges}


def graph_from_dict(data: Mapping) -> OpenGraph:
    try:
        raw_points = data["points"]
        raw_edges = data.get("edges", {})
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvalidGraph(f"malformed graph document: {exc}") from None
    points = []
    for p, spec in _as_pairs(raw_points):
        kind = spec.get("kind")
        if kind == "vertex":
            if "label" not in spec:
                raise InvalidGraph(f"vertex {p!r} has no label")
            points.append((p, spec["label"]))
        elif kind == "edge-point":
            points.append((p, None))
        else:
            raise InvalidGraph(f"point {p!r} has unknown kind {kind!r}")
    edges = []
    for e, spec in _as_pairs(raw_edges):
        try:
            edges.append((e, (spec["src"], spec["tgt"])))
        except (KeyError, TypeError):
            raise InvalidGraph(f"edge {e!r} needs src and tgt") from None
    return OpenGraph(points, edges)


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DuplicateId(f"duplicate key {k!r}")
        out[k] = v
    return out


def loads(text: str):
    """Parse JSON, rejecting duplicate object keys."""
    return json.loads(text, object_pairs_hook=_no_duplicates)


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, two-space indent)."""
    return json.dumps(obj, sort_keys=True, indent=2)


def read_graph(path) -> OpenGraph:
    with open(path) as fh:
        return graph_from_dict(loads(fh.read()))


def write_graph(g: OpenGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(graph_to_dict(g)) + "\n")


def iter_incident(g: OpenGraph, p: str) -> Iterator[str]:
    seen = set()
    for e in g.in_edges(p) + g.out_edges(p):
        if e not in seen:
            seen.add(e)
            yield e

