"""Contraction of interior edge-points, proper forms and homeomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .errors import NotContractible
from .graph import FreshIds, OpenGraph, isomorphic, pin_boundary, sort_ids


@dataclass(frozen=True)
class ContractionStep:
    point: str
    merged: tuple[str, str]
    new_edge: str


ContractionTrace = tuple[ContractionStep, ...]


def is_contractible(g: OpenGraph, p: str) -> bool:
    if not g.is_edge_point(p):
        return False
    e1, e2 = g.in_edge(p), g.out_edge(p)
    return e1 is not None and e2 is not None and e1 != e2


def _contract(g: OpenGraph, p: str, new_edge: str) -> tuple[OpenGraph, ContractionStep]:
    if not is_contractible(g, p):
        raise NotContractible(f"{p!r} is not an interior edge-point of a wire")
    e1, e2 = g.in_edge(p), g.out_edge(p)
    points = {q: lab for q, lab in g.points.items() if q != p}
    edges = {e: st for e, st in g.edges.items() if e not in (e1, e2)}
    edges[new_edge] = (g.src(e1), g.tgt(e2))
    return OpenGraph(points, edges), ContractionStep(p, (e1, e2), new_edge)


def contract_point(g: OpenGraph, p: str) -> OpenGraph:
    """Remove the interior edge-point ``p``, fusing its two edges."""
    return _contract(g, p, g.fresh().edge())[0]


def replay(g: OpenGraph, trace: Iterable[ContractionStep]) -> OpenGraph:
    for step in trace:
        g, _ = _contract(g, step.point, step.new_edge)
    return g


@lru_cache(maxsize=8192)
def _proper(g: OpenGraph) -> tuple[OpenGraph, ContractionTrace]:
    fresh = FreshIds(g.ids)
    trace = []
    for p in g.edge_points:
        if is_contractible(g, p):
            g, step = _contract(g, p, fresh.edge())
            trace.append(step)
    return g, tuple(trace)


def proper_form(g: OpenGraph) -> tuple[OpenGraph, ContractionTrace]:
    """Contract every contractible point, in ascending id order.

    The result keeps the ids of all surviving points.  A circle ends up as
    a single edge-point carrying a self-loop.
    """
    return _proper(g)


def proper(g: OpenGraph) -> OpenGraph:
    return _proper(g)[0]


def is_proper(g: OpenGraph) -> bool:
    return not any(is_contractible(g, p) for p in g.edge_points)


def expand_edge(g: OpenGraph, e: str) -> tuple[OpenGraph, str]:
    """Subdivide edge ``e`` with a fresh edge-point."""
    fresh = g.fresh()
    p, a, b = fresh.point(), fresh.edge(), fresh.edge()
    s, t = g.edges[e]
    points = dict(g.points)
    points[p] = None
    edges = {x: st for x, st in g.edges.items() if x != e}
    edges[a] = (s, p)
    edges[b] = (p, t)
    return OpenGraph(points, edges), p


def homeomorphic(g: OpenGraph, h: OpenGraph, fix_boundary: bool = False) -> bool:
    """Decide ``g ~ h`` by comparing proper forms up to isomorphism.

    With ``fix_boundary`` the isomorphism must send every boundary point of
    ``g`` to the boundary point of ``h`` with the same id.
    """
    pg, ph = proper(g), proper(h)
    if fix_boundary:
        if pg.boundary.inputs != ph.boundary.inputs or pg.boundary.outputs != ph.boundary.outputs:
            return False
        pg, ph = pin_boundary(pg), pin_boundary(ph)
    return isomorphic(pg, ph) is not None


def circle_count(g: OpenGraph) -> int:
    pg = proper(g)
    return sum(1 for p in pg.edge_points if pg.in_edge(p) is not None and pg.in_edge(p) == pg.out_edge(p))


def contractible_points(g: OpenGraph) -> list[str]:
    return sort_ids(p for p in g.edge_points if is_contractible(g, p))


def proper_form_in_order(g: OpenGraph, order: Optional[Iterable[str]] = None) -> OpenGraph:
    """Contract points in a caller-chosen order, skipping non-contractible ones.

    Only a maximal order yields the proper form; used to exercise confluence.
    """
    fresh = FreshIds(g.ids)
    for p in order if order is not None else g.edge_points:
        if p in g.points and is_contractible(g, p):
            g, _ = _contract(g, p, fresh.edge())
    return g


def homeomorphic_tagged(g: OpenGraph, g_tags, h: OpenGraph, h_tags) -> bool:
    """``g ~ h`` by an isomorphism sending each tagged point to the equally tagged one.

    Tagged points must be boundary or isolated points, which survive
    contraction.
    """
    from .graph import tag_points

    pg, ph = proper(g), proper(h)
    if not (set(g_tags) <= set(pg.points) and set(h_tags) <= set(ph.points)):
        return False
    return isomorphic(tag_points(pg, g_tags), tag_points(ph, h_tags)) is not None
