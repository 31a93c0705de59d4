"""Rewrite rules, their application, and composition of rules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .compose import (
    MergeSpec,
    PlugSpec,
    boundary_coherent,
    check_correspondence,
    merge,
    plug_merge,
    same_boundary,
    substitute,
)
from .errors import BoundaryMismatch, IncoherentBoundaries, NotAnOpenEmbedding, StaleMatching
from .graph import EMPTY, OpenGraph, point_graph, sort_ids
from .homeo import proper
from .matching import Embedding, Matching, check_open_embedding, find_matchings


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: OpenGraph
    rhs: OpenGraph
    inputs: Mapping[str, str]
    outputs: Mapping[str, str]
    derived: bool = field(default=False, compare=False)

    @property
    def corr(self) -> tuple[Mapping[str, str], Mapping[str, str]]:
        return self.inputs, self.outputs

    def reversed(self) -> "Rule":
        inv = lambda m: {v: k for k, v in m.items()}  # noqa: E731
        return Rule(self.name + "^-1", self.rhs, self.lhs, inv(self.inputs), inv(self.outputs))

    def renamed(self, name: str) -> "Rule":
        return Rule(name, self.lhs, self.rhs, self.inputs, self.outputs, self.derived)


def make_rule(name: str, lhs: OpenGraph, rhs: OpenGraph, inputs=None, outputs=None) -> Rule:
    """Build a rule, checking the boundary correspondence.

    Without explicit maps, boundary points with equal ids on both sides are
    paired; failing that, ids are paired in sorted order.
    """
    if inputs is None and outputs is None:
        lb, rb = lhs.boundary, rhs.boundary
        if lb.inputs == rb.inputs and lb.outputs == rb.outputs:
            inputs = {p: p for p in lb.inputs}
            outputs = {p: p for p in lb.outputs}
        else:
            corr = same_boundary(lhs, rhs)
            if corr is None:
                raise BoundaryMismatch(f"rule {name!r}: sides have different boundaries")
            inputs, outputs = corr
    inputs, outputs = dict(inputs or {}), dict(outputs or {})
    try:
        check_correspondence(lhs, rhs, inputs, outputs)
    except BoundaryMismatch as exc:
        raise BoundaryMismatch(f"rule {name!r}: {exc}") from None
    return Rule(name, lhs, rhs, inputs, outputs)


def identity_rule(H: OpenGraph, name: str = "id") -> Rule:
    bd = H.boundary
    return Rule(name, H, H, {p: p for p in bd.inputs}, {p: p for p in bd.outputs})


@dataclass(frozen=True)
class RewriteStep:
    rule: Rule
    matching: Matching
    before: OpenGraph
    after: OpenGraph

    @property
    def rule_name(self) -> str:
        return self.rule.name


def check_matching(rule: Rule, G: OpenGraph, m: Matching) -> None:
    if m.pattern != rule.lhs:
        raise StaleMatching(f"matching is for a different pattern than rule {rule.name!r}")
    if m.host != proper(G):
        raise StaleMatching("matching was computed for a different host graph")
    why = check_open_embedding(m.embedding)
    if why or m.embedding.target != m.expansion:
        raise StaleMatching(f"matching embedding is invalid: {why}")


def apply(rule: Rule, G: OpenGraph, m: Matching, normalise: bool = True) -> RewriteStep:
    """Rewrite ``G`` with ``rule`` at matching ``m``."""
    check_matching(rule, G, m)
    after = substitute(m.expansion, m.embedding, rule.rhs, rule.corr, normalise=normalise)
    return RewriteStep(rule, m, G, after)


def rewrites(rule: Rule, G: OpenGraph) -> Iterator[RewriteStep]:
    for m in find_matchings(rule.lhs, G):
        yield apply(rule, G, m)


def seq_merge(r1: Rule, r2: Rule, spec: MergeSpec, name: Optional[str] = None) -> Rule:
    """Sequential merging: overlap ``r1.rhs`` and ``r2.lhs`` on ``spec.K``."""
    M, m1, m2 = merge(r1.rhs, r2.lhs, spec)
    back = r1.reversed()
    lhs = substitute(M, m1, r1.lhs, back.corr)
    rhs = substitute(M, m2, r2.rhs, r2.corr)
    bd = M.boundary
    for side in (lhs, rhs):
        if side.boundary.inputs != bd.inputs or side.boundary.outputs != bd.outputs:
            raise IncoherentBoundaries("merged rewrite does not preserve the boundary")
    out = Rule(
        name or f"({r1.name};{r2.name})",
        lhs,
        rhs,
        {p: p for p in bd.inputs},
        {p: p for p in bd.outputs},
        derived=True,
    )
    return out


def _transport(spec: PlugSpec, r1: Rule, r2: Rule) -> PlugSpec:
    c1 = {**r1.inputs, **r1.outputs}
    c2 = {**r2.inputs, **r2.outputs}
    try:
        b = {x: c1[y] for x, y in spec.b.items()}
        b2 = {x: c2[y] for x, y in spec.b2.items()}
    except KeyError as exc:
        raise IncoherentBoundaries(f"plug point {exc} is not on the rule boundary") from None
    return PlugSpec(spec.P, b, b2)


def par_plug(r1: Rule, r2: Rule, spec: PlugSpec, name: Optional[str] = None) -> Rule:
    """Parallel composition: plug both sides of two rules together."""
    lhs, i1, i2 = plug_merge(r1.lhs, r2.lhs, spec)
    rhs, j1, j2 = plug_merge(r1.rhs, r2.rhs, _transport(spec, r1, r2))
    back1 = {v: k for k, v in i1.points.items()}
    back2 = {v: k for k, v in i2.points.items()}
    corr = {}
    for x in lhs.boundary.bound:
        if x in back1 and back1[x] in r1.lhs.boundary.bound:
            y = back1[x]
            corr[x] = j1.points[{**r1.inputs, **r1.outputs}[y]]
        else:
            y = back2[x]
            corr[x] = j2.points[{**r2.inputs, **r2.outputs}[y]]
    inputs = {x: corr[x] for x in lhs.boundary.inputs}
    outputs = {x: corr[x] for x in lhs.boundary.outputs}
    rule = make_rule(name or f"({r1.name}|{r2.name})", lhs, rhs, inputs, outputs)
    return Rule(rule.name, rule.lhs, rule.rhs, rule.inputs, rule.outputs, derived=True)


def tensor_rules(r1: Rule, r2: Rule) -> Rule:
    return par_plug(r1, r2, PlugSpec(EMPTY, {}, {}), name=f"({r1.name}*{r2.name})")


def extend(r: Rule, H: OpenGraph, spec: PlugSpec) -> Rule:
    """Plug the identity rule on ``H`` onto ``r``."""
    return par_plug(r, identity_rule(H), spec, name=f"{r.name}+ctx")


# -- overlaps ---------------------------------------------------------------


def _with_lhs(r: Rule, lhs: OpenGraph) -> Rule:
    return Rule(r.name, lhs, r.rhs, r.inputs, r.outputs, r.derived)


def _with_rhs(r: Rule, rhs: OpenGraph) -> Rule:
    return Rule(r.name, r.lhs, rhs, r.inputs, r.outputs, r.derived)


def _cut_subgraph(R: OpenGraph, keep_vertices: set, keep_wires: set) -> tuple[OpenGraph, OpenGraph]:
    """An open subgraph K of an expansion R' of R.

    K holds the chosen vertices with all their edges; edges that run to an
    unchosen vertex are subdivided in R' and K stops at the new point.
    Whole boundary-to-boundary wires and circles listed in ``keep_wires``
    (by edge id of the proper form) are included as well.
    """
    fresh = R.fresh()
    points = dict(R.points)
    edges = dict(R.edges)
    k_points: dict = {}
    k_edges: dict = {}
    for v in keep_vertices:
        k_points[v] = R.label(v)
    for e, (s, t) in R.edges.items():
        s_in, t_in = s in keep_vertices, t in keep_vertices
        if e in keep_wires:
            k_edges[e] = (s, t)
            k_points[s] = R.label(s)
            k_points[t] = R.label(t)
            continue
        if not (s_in or t_in):
            continue
        if s_in and t_in:
            k_edges[e] = (s, t)
            continue
        other = t if s_in else s
        if R.is_edge_point(other):
            k_edges[e] = (s, t)
            k_points[other] = None
            continue
        # cut the edge at a fresh point so K can stop short of the other vertex
        p = fresh.point()
        a, b = fresh.edge(), fresh.edge()
        del edges[e]
        points[p] = None
        edges[a] = (s, p)
        edges[b] = (p, t)
        k_points[p] = None
        if s_in:
            k_edges[a] = (s, p)
        else:
            k_edges[b] = (p, t)
    return OpenGraph(points, edges), OpenGraph(k_points, k_edges)


def overlaps(r1: Rule, r2: Rule) -> Iterator[tuple[MergeSpec, Rule, Rule]]:
    """Enumerate merge specs between ``r1.rhs`` and ``r2.lhs``.

    Each overlap K is taken from (an expansion of) the proper form of
    ``r1.rhs``: a set of its vertices with their edges, plus any choice of
    its boundary-to-boundary wires and circles.  K is located in ``r2.lhs``
    by matching, which may subdivide it.  The rules are returned with the
    homeomorphic sides that the merge spec actually embeds into.
    """
    R = proper(r1.rhs)
    free_wires = [e for e, (s, t) in R.edges.items() if R.is_edge_point(s) and R.is_edge_point(t)]
    free_wires = sort_ids(free_wires)
    seen = set()
    for n in range(len(R.vertices) + 1):
        for vs in itertools.combinations(R.vertices, n):
            for k in range(len(free_wires) + 1):
                for ws in itertools.combinations(free_wires, k):
                    R2, K = _cut_subgraph(R, set(vs), set(ws))
                    e1 = Embedding(K, R2, {p: p for p in K.points}, {e: e for e in K.edges})
                    for m in find_matchings(K, r2.lhs):
                        spec = MergeSpec(K, e1, m.embedding)
                        if not boundary_coherent(spec.e1, spec.e2):
                            continue
                        sig = (vs, ws, m.key)
                        if sig in seen:
                            continue
                        seen.add(sig)
                        yield spec, _with_rhs(r1, R2), _with_lhs(r2, m.expansion)


def derive_all(r1: Rule, r2: Rule) -> Iterator[Rule]:
    """Every sequential merging of ``r1`` then ``r2`` over :func:`overlaps`."""
    for spec, a, b in overlaps(r1, r2):
        try:
            yield seq_merge(a, b, spec)
        except (IncoherentBoundaries, NotAnOpenEmbedding):
            continue


def point_spec(pairs: Mapping[str, str] | list) -> PlugSpec:
    """Plug spec gluing ``left`` boundary points to ``right`` ones, pairwise."""
    items = list(pairs.items()) if isinstance(pairs, Mapping) else list(pairs)
    names = [f"x{i}" for i in range(len(items))]
    return PlugSpec(point_graph(names), {n: a for n, (a, _) in zip(names, items)}, {n: b for n, (_, b) in zip(names, items)})
