"""Open embeddings and matching of a pattern into a host up to homeomorphism.

The matcher works on the proper form of the host, where every wire is a
single edge (or a one-point circle).  A pattern is cut into wires, and each
wire is placed on host edges:

* a wire between two pattern vertices covers a whole host edge;
* a wire from a vertex to a boundary point covers the start (or end) of a
  host edge leaving (or entering) the image vertex;
* a boundary-to-boundary wire sits somewhere in the middle of any host
  edge or circle, in some order relative to other such wires;
* a circle covers a whole host circle.

The host edges are then subdivided just enough to realise the placement,
which yields the expansion ``G'`` and an open embedding into it.  Pattern
boundary points always land on fresh points of the expansion.

Two matchings count as the same when they induce the same substitution for
every possible right-hand side, see :func:`rewrite_key`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .graph import (
    BOUNDARY_TO_BOUNDARY,
    CIRCLE,
    VERTEX_TO_VERTEX,
    FreshIds,
    OpenGraph,
    Wire,
    id_key,
    iter_incident,
    sort_ids,
    wires,
)
from .homeo import proper


@dataclass(frozen=True)
class Embedding:
    source: OpenGraph
    target: OpenGraph
    points: Mapping[str, str]
    edges: Mapping[str, str]

    def __call__(self, p: str) -> str:
        return self.points[p]

    def then(self, other: "Embedding") -> "Embedding":
        return Embedding(
            self.source,
            other.target,
            {k: other.points[v] for k, v in self.points.items()},
            {k: other.edges[v] for k, v in self.edges.items()},
        )


def identity_embedding(g: OpenGraph) -> Embedding:
    return Embedding(g, g, {p: p for p in g.points}, {e: e for e in g.edges})


def check_open_embedding(f: Embedding) -> Optional[str]:
    """Return ``None`` if ``f`` is an open embedding, else the first violation."""
    src, tgt = f.source, f.target
    for p in src.points:
        if p not in f.points:
            return f"point {p!r} is not mapped"
        if f.points[p] not in tgt.points:
            return f"point {p!r} maps outside the target"
    for e in src.edges:
        if e not in f.edges:
            return f"edge {e!r} is not mapped"
        if f.edges[e] not in tgt.edges:
            return f"edge {e!r} maps outside the target"
    if len(set(f.points.values())) != len(f.points) or len(set(f.edges.values())) != len(f.edges):
        return "map is not injective"
    for p, q in f.points.items():
        if src.label(p) != tgt.label(q):
            return f"point {p!r} changes kind or label"
    for e, (s, t) in src.edges.items():
        if tgt.edges[f.edges[e]] != (f.points[s], f.points[t]):
            return f"edge {e!r} does not commute with source/target"
    image = set(f.edges.values())
    for p in src.vertices:
        for e in iter_incident(tgt, f.points[p]):
            if e not in image:
                return f"not full on vertex {p!r}: edge {e!r} of the target is missed"
    return None


def is_open_embedding(f: Embedding) -> bool:
    return check_open_embedding(f) is None


@dataclass(frozen=True)
class Matching:
    """An open embedding of ``pattern`` into an expansion of ``host``.

    ``host`` is the proper form of the graph that was matched against;
    ``ancestry`` sends every expansion edge to the host edge it subdivides.
    """

    pattern: OpenGraph
    host: OpenGraph
    expansion: OpenGraph
    ancestry: Mapping[str, str]
    embedding: Embedding
    key: tuple = field(default=(), compare=False, repr=False)


# -- pattern analysis ------------------------------------------------------


@dataclass
class _Pattern:
    whole: list[Wire]
    prefix: list[Wire]
    suffix: list[Wire]
    middle: list[Wire]
    circles: list[Wire]
    isolated: list[str]


def _analyse(L: OpenGraph) -> _Pattern:
    pat = _Pattern([], [], [], [], [], L.isolated)
    for w in wires(L):
        if w.kind == CIRCLE:
            pat.circles.append(w)
        elif w.kind == VERTEX_TO_VERTEX:
            pat.whole.append(w)
        elif w.kind == BOUNDARY_TO_BOUNDARY:
            pat.middle.append(w)
        elif L.is_vertex(w.src_end):
            pat.prefix.append(w)
        else:
            pat.suffix.append(w)
    return pat


def _host_parts(H: OpenGraph) -> tuple[list[str], list[str]]:
    edges, circles = [], []
    for e in H.sorted_edges:
        s, t = H.edges[e]
        if s == t and H.is_edge_point(s):
            circles.append(s)
        else:
            edges.append(e)
    return edges, circles


def _vertex_maps(L: OpenGraph, H: OpenGraph, pat: _Pattern) -> Iterator[dict]:
    label_count = Counter(H.label(v) for v in H.vertices)
    order = sorted(L.vertices, key=lambda v: (label_count[L.label(v)], id_key(v)))
    cands = {}
    for v in order:
        deg = (len(L.in_edges(v)), len(L.out_edges(v)))
        cands[v] = [
            w
            for w in H.vertices
            if H.label(w) == L.label(v) and (len(H.in_edges(w)), len(H.out_edges(w))) == deg
        ]
    needed = Counter((w.src_end, w.tgt_end) for w in pat.whole)
    host_pairs = Counter(H.edges.values())
    phi: dict[str, str] = {}
    used: set[str] = set()

    def ok(v: str, w: str) -> bool:
        for (a, b), n in needed.items():
            if v not in (a, b):
                continue
            if (a in phi or a == v) and (b in phi or b == v):
                ia = w if a == v else phi[a]
                ib = w if b == v else phi[b]
                if host_pairs[(ia, ib)] < n:
                    return False
        return True

    def search(i: int) -> Iterator[dict]:
        if i == len(order):
            yield dict(phi)
            return
        v = order[i]
        for w in cands[v]:
            if w in used or not ok(v, w):
                continue
            phi[v] = w
            used.add(w)
            yield from search(i + 1)
            del phi[v]
            used.discard(w)

    yield from search(0)


def _claims(H: OpenGraph, pat: _Pattern, phi: dict) -> Iterator[tuple[dict, dict]]:
    """Assign vertex-attached pattern wires to host edges.

    Yields ``(start, end)`` where ``start[e]`` / ``end[e]`` is the pattern
    wire index covering the start / end of host edge ``e``; whole wires
    appear in both.
    """
    jobs = (
        [("whole", i, w) for i, w in enumerate(pat.whole)]
        + [("prefix", i, w) for i, w in enumerate(pat.prefix)]
        + [("suffix", i, w) for i, w in enumerate(pat.suffix)]
    )
    start: dict[str, tuple] = {}
    end: dict[str, tuple] = {}

    def options(kind: str, w: Wire) -> list[str]:
        if kind == "whole":
            a, b = phi[w.src_end], phi[w.tgt_end]
            return [e for e in H.out_edges(a) if H.tgt(e) == b and e not in start and e not in end]
        if kind == "prefix":
            return [e for e in H.out_edges(phi[w.src_end]) if e not in start]
        return [e for e in H.in_edges(phi[w.tgt_end]) if e not in end]

    def search(i: int) -> Iterator[tuple[dict, dict]]:
        if i == len(jobs):
            yield dict(start), dict(end)
            return
        kind, j, w = jobs[i]
        for e in options(kind, w):
            tag = (kind, j)
            if kind != "suffix":
                start[e] = tag
            if kind != "prefix":
                end[e] = tag
            yield from search(i + 1)
            if kind != "suffix":
                del start[e]
            if kind != "prefix":
                del end[e]

    yield from search(0)


def _arrangements(hosts: list, n: int) -> Iterator[dict]:
    """Every way of distributing ``n`` middle wires over ``hosts`` in order."""
    for choice in itertools.product(range(len(hosts)), repeat=n):
        groups: dict[int, list[int]] = {}
        for piece, h in enumerate(choice):
            groups.setdefault(h, []).append(piece)
        keys = sorted(groups)
        for perms in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
            yield {hosts[k]: list(p) for k, p in zip(keys, perms)}


class _Builder:
    def __init__(self, L: OpenGraph, H: OpenGraph):
        self.L = L
        self.H = H
        self.fresh = FreshIds(H.ids)
        self.points = dict(H.points)
        self.edges = dict(H.edges)
        self.ancestry = {e: e for e in H.edges}
        self.pmap: dict[str, str] = {}
        self.emap: dict[str, str] = {}

    def new_point(self) -> str:
        p = self.fresh.point()
        self.points[p] = None
        return p

    def new_edge(self, s: str, t: str, origin: str) -> str:
        e = self.fresh.edge()
        self.edges[e] = (s, t)
        self.ancestry[e] = origin
        return e

    def lay(self, w: Wire, first: Optional[str], last: Optional[str], origin: str) -> None:
        """Map the points and edges of an open pattern wire onto a fresh chain."""
        imgs = []
        for k, p in enumerate(w.points):
            if k == 0 and first is not None:
                img = first
            elif k == len(w.points) - 1 and last is not None:
                img = last
            else:
                img = self.new_point()
            if self.L.is_edge_point(p):
                self.pmap[p] = img
            imgs.append(img)
        for k, e in enumerate(w.edges):
            self.emap[e] = self.new_edge(imgs[k], imgs[k + 1], origin)

    def fill_edge(self, e: str, items: list) -> None:
        s, t = self.H.edges[e]
        del self.edges[e]
        del self.ancestry[e]
        cur = s
        closed = False
        for kind, obj in items:
            if kind == "whole":
                self.lay(obj, s, t, e)
                closed = True
            elif kind == "prefix":
                self.lay(obj, s, None, e)
                cur = self.pmap[obj.points[-1]]
            elif kind == "middle":
                self.lay(obj, None, None, e)
                self.new_edge(cur, self.pmap[obj.points[0]], e)
                cur = self.pmap[obj.points[-1]]
            elif kind == "iso":
                q = self.new_point()
                self.pmap[obj] = q
                self.new_edge(cur, q, e)
                cur = q
            else:  # suffix
                self.lay(obj, None, t, e)
                self.new_edge(cur, self.pmap[obj.points[0]], e)
                closed = True
        if not closed:
            self.new_edge(cur, t, e)

    def fill_circle(self, c: str, items: list) -> None:
        loop = self.H.out_edge(c)
        self.fill_edge(loop, items)

    def lay_circle(self, c: str, w: Wire) -> None:
        loop = self.H.out_edge(c)
        del self.edges[loop]
        del self.ancestry[loop]
        imgs = [c] + [self.new_point() for _ in w.points[1:]]
        for p, img in zip(w.points, imgs):
            self.pmap[p] = img
        for k, e in enumerate(w.edges):
            self.emap[e] = self.new_edge(imgs[k], imgs[(k + 1) % len(imgs)], loop)


def _build(L, H, pat, phi, start, end, circle_map, middles, host_edges, free_circles):
    b = _Builder(L, H)
    contents: dict[str, list] = {}
    for e in host_edges:
        items = []
        s_tag, e_tag = start.get(e), end.get(e)
        if s_tag is not None and s_tag[0] == "whole":
            items.append(("whole", pat.whole[s_tag[1]]))
        else:
            if s_tag is not None:
                items.append(("prefix", pat.prefix[s_tag[1]]))
            items.extend(("middle", pat.middle[i]) for i in middles.get(("edge", e), ()))
            if e_tag is not None:
                items.append(("suffix", pat.suffix[e_tag[1]]))
        contents[e] = items
    circ_items = {c: [("middle", pat.middle[i]) for i in middles.get(("circle", c), ())] for c in free_circles}

    used_circle_points = set(circle_map.values())
    spare = [p for p in H.edge_points if p not in used_circle_points]
    iso_fresh = []
    for x, p in itertools.zip_longest(pat.isolated, spare):
        if x is None:
            break
        if p is not None:
            b.pmap[x] = p
        else:
            iso_fresh.append(x)
    if iso_fresh:
        room = [e for e in host_edges if not (start.get(e) and start[e][0] == "whole")]
        if room:
            items = contents[room[0]]
            pos = len(items) - (1 if items and items[-1][0] == "suffix" else 0)
            items[pos:pos] = [("iso", x) for x in iso_fresh]
        elif free_circles:
            circ_items[free_circles[0]].extend(("iso", x) for x in iso_fresh)
        else:
            return None

    for e in host_edges:
        if contents[e]:
            b.fill_edge(e, contents[e])
    for c, items in circ_items.items():
        if items:
            b.fill_circle(c, items)
    circles = {w.points[0]: w for w in pat.circles}
    for q0, c in circle_map.items():
        b.lay_circle(c, circles[q0])
    b.pmap.update(phi)
    expansion = OpenGraph(b.points, b.edges)
    emb = Embedding(L, expansion, b.pmap, b.emap)
    return Matching(L, H, expansion, b.ancestry, emb)


def rewrite_key(m: Matching) -> tuple:
    """Canonical summary of the substitution a matching induces.

    It describes the proper form of the context (host minus the matched
    part) with the images of the pattern's boundary points tagged.  Host
    vertices and host boundary points keep their ids, so the summary is a
    multiset of wire descriptions plus the circle count, the leftover
    isolated host points and the edgeless host vertices.
    """
    from .compose import subtract

    ctx, _ = subtract(m.expansion, m.embedding)
    L = m.pattern
    tags = {m.embedding.points[p]: p for p in L.boundary.bound}
    ctx = proper(ctx)

    def desc(p: str) -> str:
        if ctx.is_vertex(p):
            return "V:" + p
        if p in tags:
            return "@" + tags[p]
        return "B:" + p

    wire_descs = []
    circles = 0
    for w in wires(ctx):
        if w.kind == CIRCLE:
            circles += 1
        else:
            wire_descs.append((desc(w.src_end), desc(w.tgt_end)))
    loose = sort_ids(p for p in ctx.isolated if p not in tags and p in m.host.points)
    bare = sort_ids(v for v in ctx.vertices if not ctx.in_edges(v) and not ctx.out_edges(v))
    return tuple(sorted(wire_descs)), circles, tuple(loose), tuple(bare)


def iter_matchings(L: OpenGraph, G: OpenGraph) -> Iterator[Matching]:
    """Yield the distinct matchings of ``L`` on ``G`` in deterministic order."""
    H = proper(G)
    pat = _analyse(L)
    host_edges, host_circles = _host_parts(H)
    if len(pat.circles) > len(host_circles):
        return
    seen = set()
    pattern_circles = [w.points[0] for w in pat.circles]
    for phi in _vertex_maps(L, H, pat):
        for start, end in _claims(H, pat, phi):
            for chosen in itertools.permutations(host_circles, len(pattern_circles)):
                circle_map = dict(zip(pattern_circles, chosen))
                free_circles = [c for c in host_circles if c not in chosen]
                hosts = [("edge", e) for e in host_edges if not (start.get(e) and start[e][0] == "whole")]
                hosts += [("circle", c) for c in free_circles]
                if pat.middle and not hosts:
                    continue
                for middles in _arrangements(hosts, len(pat.middle)):
                    m = _build(L, H, pat, phi, start, end, circle_map, middles, host_edges, free_circles)
                    if m is None:
                        continue
                    key = rewrite_key(m)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield Matching(m.pattern, m.host, m.expansion, m.ancestry, m.embedding, key)


def find_matchings(L: OpenGraph, G: OpenGraph) -> list[Matching]:
    return list(iter_matchings(L, G))


def matches(L: OpenGraph, G: OpenGraph) -> bool:
    return next(iter_matchings(L, G), None) is not None


def describe(m: Matching) -> dict:
    """Point and edge listing of a matching, for printing."""
    emb = m.embedding
    return {
        "points": {p: emb.points[p] for p in sort_ids(emb.points)},
        "edges": {e: emb.edges[e] for e in sort_ids(emb.edges)},
        "ancestry": {e: m.ancestry[emb.edges[e]] for e in sort_ids(emb.edges)},
    }
