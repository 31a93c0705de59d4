"""Seeded generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random

from opengraph.compose import substitute
from opengraph.graph import OpenGraph, isomorphic, rename
from opengraph.homeo import expand_edge, proper
from opengraph.matching import Embedding, check_open_embedding

LABELS = ("a", "b")


def random_graph(rng: random.Random, max_vertices: int = 4, max_wires: int = 6, labels=LABELS) -> OpenGraph:
    """A random open graph built wire by wire.

    Wires join two vertices, a vertex and a boundary point, or two boundary
    points; a few circles and isolated points are thrown in.  Each wire gets
    0-2 interior points so the graph is usually not proper.
    """
    points: dict = {}
    edges: dict = {}
    counter = itertools.count()
    vs = [f"v{i}" for i in range(rng.randint(0, max_vertices))]
    for v in vs:
        points[v] = rng.choice(labels)

    def pt() -> str:
        p = f"q{next(counter)}"
        points[p] = None
        return p

    def chain(s: str, t: str) -> None:
        cur = s
        for _ in range(rng.randint(0, 2)):
            nxt = pt()
            edges[f"d{len(edges)}"] = (cur, nxt)
            cur = nxt
        edges[f"d{len(edges)}"] = (cur, t)

    for _ in range(rng.randint(0, max_wires)):
        r = rng.random()
        if vs and r < 0.4:
            chain(rng.choice(vs), rng.choice(vs))
        elif vs and r < 0.6:
            chain(pt(), rng.choice(vs))
        elif vs and r < 0.8:
            chain(rng.choice(vs), pt())
        elif r < 0.9:
            chain(pt(), pt())
        else:
            c = pt()
            chain(c, c)
    if rng.random() < 0.15:
        pt()
    return OpenGraph(points, edges)


def scramble(rng: random.Random, g: OpenGraph, prefix: str = "r") -> OpenGraph:
    """Rename every id at random."""
    ps = list(g.points)
    es = list(g.edges)
    rng.shuffle(ps)
    rng.shuffle(es)
    return rename(g, {p: f"{prefix}p{i}" for i, p in enumerate(ps)}, {e: f"{prefix}e{i}" for i, e in enumerate(es)})


def random_expansion(rng: random.Random, g: OpenGraph, extra: int) -> OpenGraph:
    for _ in range(extra):
        if not g.edges:
            break
        g, _ = expand_edge(g, rng.choice(g.sorted_edges))
    return g


def random_fragment(rng: random.Random, g: OpenGraph) -> OpenGraph:
    """An open subgraph of an expansion of ``g``, with fresh ids.

    Picks some vertices (with all their edges, cut short at fresh points
    when they lead elsewhere) and maybe one boundary-to-boundary piece.
    """
    h = proper(g)
    for e in h.sorted_edges:
        if rng.random() < 0.8:
            h, _ = expand_edge(h, e)
    h, _ = expand_edge(h, rng.choice(h.sorted_edges)) if h.edges else (h, None)
    chosen = {v for v in h.vertices if rng.random() < 0.5}
    keep_p = set(chosen)
    keep_e = set()
    for v in chosen:
        for e in h.in_edges(v) + h.out_edges(v):
            keep_e.add(e)
            keep_p.update(h.edges[e])
    # stop kept edges at edge-points; an edge to an unchosen vertex is dropped
    keep_e = {e for e in keep_e if all(p in chosen or h.is_edge_point(p) for p in h.edges[e])}
    keep_p = chosen | {p for e in keep_e for p in h.edges[e]}
    loose = [e for e in h.sorted_edges if e not in keep_e and all(h.is_edge_point(p) for p in h.edges[e])]
    if loose and rng.random() < 0.4:
        e = rng.choice(loose)
        s, t = h.edges[e]
        if s != t and s not in keep_p and t not in keep_p:
            keep_e.add(e)
            keep_p.update((s, t))
    # a vertex whose neighbour edge was dropped breaks fullness; drop it too
    # repeat, since dropping one vertex can cut an edge of another
    while True:
        keep_e = {e for e in keep_e if all(not h.is_vertex(p) or p in chosen for p in h.edges[e])}
        broken = {v for v in chosen if any(e not in keep_e for e in h.in_edges(v) + h.out_edges(v))}
        if not broken:
            break
        chosen -= broken
    keep_p = chosen | {p for e in keep_e for p in h.edges[e]}
    frag = OpenGraph({p: h.label(p) for p in keep_p}, {e: h.edges[e] for e in keep_e})
    return scramble(rng, frag, "f")


# -- brute-force matching oracle ------------------------------------------


def _count_vectors(n_edges: int, budget: int):
    for total in range(budget + 1):
        for combo in itertools.combinations_with_replacement(range(n_edges), total):
            yield combo


def expansions_up_to(g: OpenGraph, budget: int):
    """Every expansion of ``g`` adding at most ``budget`` points, one per edge distribution."""
    edges = g.sorted_edges
    if not edges:
        yield g
        return
    for combo in _count_vectors(len(edges), budget):
        h = g
        names = {e: e for e in edges}
        for i in combo:
            # always split the last segment of the original edge
            h, p = expand_edge(h, names[edges[i]])
            names[edges[i]] = h.out_edge(p)
        yield h


def open_embeddings(L: OpenGraph, G: OpenGraph):
    """All open embeddings of ``L`` into ``G`` by plain backtracking."""
    order = []
    seen = set()
    for start in L.sorted_points:
        if start in seen:
            continue
        stack = [start]
        while stack:
            p = stack.pop()
            if p in seen:
                continue
            seen.add(p)
            order.append(p)
            for e in L.in_edges(p) + L.out_edges(p):
                stack.extend(q for q in L.edges[e] if q not in seen)
    pmap: dict = {}
    used: set = set()

    def consistent(p: str, q: str) -> bool:
        if L.label(p) != G.label(q):
            return False
        if L.is_vertex(p) and (len(L.in_edges(p)), len(L.out_edges(p))) != (len(G.in_edges(q)), len(G.out_edges(q))):
            return False
        for e in L.in_edges(p) + L.out_edges(p):
            s, t = L.edges[e]
            if s in pmap or s == p:
                if t in pmap or t == p:
                    a = q if s == p else pmap[s]
                    b = q if t == p else pmap[t]
                    need = sum(1 for f in L.edges.values() if f == (s, t))
                    have = sum(1 for f in G.edges.values() if f == (a, b))
                    if have < need:
                        return False
        return True

    def edge_maps():
        groups: dict = {}
        for e in L.sorted_edges:
            s, t = L.edges[e]
            groups.setdefault((pmap[s], pmap[t]), []).append(e)
        per = []
        for (a, b), es in groups.items():
            cands = [f for f in G.sorted_edges if G.edges[f] == (a, b)]
            per.append([dict(zip(es, perm)) for perm in itertools.permutations(cands, len(es))])
        for parts in itertools.product(*per):
            em = {}
            for part in parts:
                em.update(part)
            yield em

    def search(i: int):
        if i == len(order):
            for em in edge_maps():
                f = Embedding(L, G, dict(pmap), em)
                if check_open_embedding(f) is None:
                    yield f
            return
        p = order[i]
        for q in G.sorted_points:
            if q in used or not consistent(p, q):
                continue
            pmap[p] = q
            used.add(q)
            yield from search(i + 1)
            del pmap[p]
            used.discard(q)

    yield from search(0)


def probe_rhs(L: OpenGraph) -> OpenGraph:
    """A right-hand side that ends every boundary wire of ``L`` in its own marker vertex."""
    points: dict = {}
    edges: dict = {}
    for x in L.isolated:
        points[x] = None
    for x in L.inputs:
        points[x] = None
        points["X_" + x] = "\x00in:" + x
        edges["xe_" + x] = (x, "X_" + x)
    for y in L.outputs:
        points[y] = None
        points["Y_" + y] = "\x00out:" + y
        edges["ye_" + y] = ("Y_" + y, y)
    return OpenGraph(points, edges)


def result_signature(f: Embedding, host: OpenGraph) -> OpenGraph:
    """Substitute the probe at ``f`` and pin every surviving host vertex and boundary point."""
    L = f.source
    corr = ({x: x for x in L.inputs}, {y: y for y in L.outputs})
    res = substitute(f.target, f, probe_rhs(L), corr)
    bd = res.boundary
    pts = {}
    for p, lab in res.points.items():
        if p in host.vertices and lab == host.label(p):
            pts[p] = "\x00V:" + p
        elif p in host.points and host.is_edge_point(p) and (p in bd.bound or p in bd.isolated):
            pts[p] = "\x00B:" + p
        else:
            pts[p] = lab
    return OpenGraph(pts, res.edges)


def distinct_classes(graphs):
    classes = []
    for g in graphs:
        if not any(isomorphic(g, h) is not None for h in classes):
            classes.append(g)
    return classes


def brute_force_classes(L: OpenGraph, G: OpenGraph):
    """Equivalence classes of matchings of ``L`` on ``G``, by brute force."""
    H = proper(G)
    budget = len(L.edge_points)
    sigs = []
    for Gx in expansions_up_to(H, budget):
        for f in open_embeddings(L, Gx):
            sigs.append(result_signature(f, H))
    return distinct_classes(sigs)


# -- rules up to isomorphism -----------------------------------------------


def rule_picture(r) -> OpenGraph:
    """One graph holding both sides of ``r``, with corresponding boundary points joined.

    Side labels are prefixed ``L:``/``R:``; each input pair hangs off a
    marker vertex and each output pair runs into one, so an isomorphism of
    pictures is an isomorphism of rules respecting the correspondence.
    """
    points: dict = {}
    edges: dict = {}
    for side, g in (("L", r.lhs), ("R", r.rhs)):
        for p, lab in g.points.items():
            points[side + p] = None if lab is None else side + ":" + lab
        for e, (s, t) in g.edges.items():
            edges[side + e] = (side + s, side + t)
    for x, y in r.inputs.items():
        points["I" + x] = "\x00in"
        points["J" + x] = "\x00side"
        edges["i1" + x] = ("I" + x, "L" + x)
        edges["i2" + x] = ("I" + x, "J" + x)
        edges["i3" + x] = ("J" + x, "R" + y)
    for x, y in r.outputs.items():
        points["O" + x] = "\x00out"
        points["P" + x] = "\x00side"
        edges["o1" + x] = ("L" + x, "O" + x)
        edges["o2" + x] = ("R" + y, "P" + x)
        edges["o3" + x] = ("P" + x, "O" + x)
    return OpenGraph(points, edges)


def rules_isomorphic(r, s) -> bool:
    from opengraph.homeo import circle_count

    if (circle_count(r.lhs), circle_count(r.rhs)) != (circle_count(s.lhs), circle_count(s.rhs)):
        return False
    return isomorphic(rule_picture(r), rule_picture(s)) is not None
