"""The boolean-circuit theory, a truth-table evaluator and a satisfiability search.

Truth tables are computed by direct evaluation of the graph and never touch
the rewrite engine, so they serve as an independent oracle for it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import CyclicCircuit, NonBooleanVertex, OpenGraphError
from .graph import OpenGraph
from .homeo import homeomorphic_tagged, proper
from .rewrite import Rule, make_rule
from .theory import Theory, normalize, plug_units

SIGNATURE = {
    "AND": (2, 1),
    "NOT": (1, 1),
    "COPY": (1, 2),
    "T": (0, 1),
    "F": (0, 1),
    "IGN": (1, 0),
}
VALUES = {"T": True, "F": False}
UNIT_OF = {True: "T", False: "F"}

Assignment = dict  # input point id -> bool


def _g(points: Mapping, edges: Mapping) -> OpenGraph:
    return OpenGraph(points, edges)


def unit(b: str, out: str = "z", vertex: str = "u") -> OpenGraph:
    return _g({vertex: b, out: None}, {"e0": (vertex, out)})


def _neg(b: str) -> str:
    return "F" if b == "T" else "T"


def copy_rule(b: str) -> Rule:
    lhs = _g({"u": b, "c": "COPY", "y1": None, "y2": None}, {"e0": ("u", "c"), "e1": ("c", "y1"), "e2": ("c", "y2")})
    rhs = _g({"u1": b, "u2": b, "y1": None, "y2": None}, {"e0": ("u1", "y1"), "e1": ("u2", "y2")})
    return make_rule(f"copy-{b}", lhs, rhs)


def ignore_rule(b: str) -> Rule:
    lhs = _g({"u": b, "g": "IGN"}, {"e0": ("u", "g")})
    return make_rule(f"ignore-{b}", lhs, OpenGraph())


def and_f_rule() -> Rule:
    lhs = _g({"x": None, "f": "F", "a": "AND", "z": None}, {"e0": ("x", "a"), "e1": ("f", "a"), "e2": ("a", "z")})
    rhs = _g({"x": None, "g": "IGN", "f": "F", "z": None}, {"e0": ("x", "g"), "e1": ("f", "z")})
    return make_rule("and-F", lhs, rhs)


def and_t_rule() -> Rule:
    lhs = _g({"x": None, "t": "T", "a": "AND", "z": None}, {"e0": ("x", "a"), "e1": ("t", "a"), "e2": ("a", "z")})
    rhs = _g({"x": None, "z": None}, {"e0": ("x", "z")})
    return make_rule("and-T", lhs, rhs)


def not_rule(b: str) -> Rule:
    lhs = _g({"u": b, "n": "NOT", "z": None}, {"e0": ("u", "n"), "e1": ("n", "z")})
    return make_rule(f"not-{b}", lhs, unit(_neg(b)))


def boolean_theory() -> Theory:
    rules = (
        copy_rule("T"),
        copy_rule("F"),
        ignore_rule("T"),
        ignore_rule("F"),
        and_f_rule(),
        and_t_rule(),
        not_rule("T"),
        not_rule("F"),
    )
    return Theory("boolean", dict(SIGNATURE), rules, ("F", "T"))


# -- named circuits --------------------------------------------------------


def wire(a: str = "x", b: str = "z") -> OpenGraph:
    return _g({a: None, b: None}, {"e0": (a, b)})


def double_negation_rule() -> Rule:
    lhs = _g({"x": None, "n1": "NOT", "n2": "NOT", "z": None}, {"e0": ("x", "n1"), "e1": ("n1", "n2"), "e2": ("n2", "z")})
    return make_rule("not-not", lhs, wire())


def not_is_wire_rule() -> Rule:
    """A deliberately false rule: negation equals the identity wire."""
    lhs = _g({"x": None, "n": "NOT", "z": None}, {"e0": ("x", "n"), "e1": ("n", "z")})
    return make_rule("not-wire", lhs, wire())


def or_gate() -> OpenGraph:
    """x OR y built as NOT(AND(NOT x, NOT y))."""
    return _g(
        {"x": None, "y": None, "nx": "NOT", "ny": "NOT", "a": "AND", "n": "NOT", "z": None},
        {"e0": ("x", "nx"), "e1": ("y", "ny"), "e2": ("nx", "a"), "e3": ("ny", "a"), "e4": ("a", "n"), "e5": ("n", "z")},
    )


def or_gate_with_f() -> OpenGraph:
    """The or-gate with the F unit feeding its ``y`` input."""
    return _g(
        {"x": None, "f": "F", "nx": "NOT", "ny": "NOT", "a": "AND", "n": "NOT", "z": None},
        {"e0": ("x", "nx"), "e1": ("f", "ny"), "e2": ("nx", "a"), "e3": ("ny", "a"), "e4": ("a", "n"), "e5": ("n", "z")},
    )


def or_gate_chain() -> list[OpenGraph]:
    """The expected intermediate graphs when F is given to the or-gate."""
    step1 = _g(
        {"x": None, "t": "T", "nx": "NOT", "a": "AND", "n": "NOT", "z": None},
        {"e0": ("x", "nx"), "e1": ("t", "a"), "e2": ("nx", "a"), "e4": ("a", "n"), "e5": ("n", "z")},
    )
    step2 = _g(
        {"x": None, "nx": "NOT", "n": "NOT", "z": None},
        {"e0": ("x", "nx"), "e1": ("nx", "n"), "e2": ("n", "z")},
    )
    return [or_gate_with_f(), step1, step2, wire()]


def contradiction(x: str = "x") -> OpenGraph:
    """NOT x AND x, sharing x through a COPY."""
    return _g(
        {x: None, "c": "COPY", "n": "NOT", "a": "AND", "z": None},
        {"e0": (x, "c"), "e1": ("c", "n"), "e2": ("n", "a"), "e3": ("c", "a"), "e4": ("a", "z")},
    )


def contradiction_rule() -> Rule:
    rhs = _g({"x": None, "g": "IGN", "f": "F", "z": None}, {"e0": ("x", "g"), "e1": ("f", "z")})
    return make_rule("not-x-and-x", contradiction(), rhs)


def copy_beta() -> OpenGraph:
    """The F unit fed through a COPY into ``NOT y AND y``."""
    return _g(
        {"f": "F", "c": "COPY", "n": "NOT", "a": "AND", "z": None},
        {"e0": ("f", "c"), "e1": ("c", "n"), "e2": ("n", "a"), "e3": ("c", "a"), "e4": ("a", "z")},
    )


def and_gate() -> OpenGraph:
    return _g({"x": None, "y": None, "a": "AND", "z": None}, {"e0": ("x", "a"), "e1": ("y", "a"), "e2": ("a", "z")})


def not_gate() -> OpenGraph:
    return _g({"x": None, "n": "NOT", "z": None}, {"e0": ("x", "n"), "e1": ("n", "z")})


# -- truth tables ----------------------------------------------------------


@dataclass(frozen=True)
class TruthTable:
    """Rows map input values (in ``inputs`` order) to output values (in ``outputs`` order)."""

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    rows: dict

    def __call__(self, assignment: Mapping[str, bool]) -> dict[str, bool]:
        row = self.rows[tuple(assignment[x] for x in self.inputs)]
        return dict(zip(self.outputs, row))

    def to_json(self) -> list:
        return [
            {"inputs": dict(zip(self.inputs, k)), "outputs": dict(zip(self.outputs, v))}
            for k, v in sorted(self.rows.items())
        ]


def _check_vertex(g: OpenGraph, v: str) -> None:
    lab = g.label(v)
    if lab not in SIGNATURE:
        raise NonBooleanVertex(f"vertex {v!r} has label {lab!r}")
    if (len(g.in_edges(v)), len(g.out_edges(v))) != SIGNATURE[lab]:
        raise NonBooleanVertex(f"vertex {v!r} ({lab}) has the wrong arity")


def evaluate(g: OpenGraph, assignment: Mapping[str, bool]) -> dict[str, bool]:
    """Output values of ``g`` under ``assignment`` (for its inputs)."""
    g = proper(g)
    for v in g.vertices:
        _check_vertex(g, v)
    memo: dict[str, bool] = {}
    active: set[str] = set()

    def point_value(p: str) -> bool:
        if p in memo:
            return memo[p]
        if p in active:
            raise CyclicCircuit(f"directed cycle through {p!r}")
        active.add(p)
        if g.is_edge_point(p):
            e = g.in_edge(p)
            if e is None:
                val = bool(assignment[p])
            else:
                val = point_value(g.src(e))
        else:
            lab = g.label(p)
            ins = [point_value(g.src(e)) for e in g.in_edges(p)]
            if lab in VALUES:
                val = VALUES[lab]
            elif lab == "NOT":
                val = not ins[0]
            elif lab == "AND":
                val = ins[0] and ins[1]
            else:  # COPY (IGN has no outputs to ask about)
                val = ins[0]
        active.discard(p)
        memo[p] = val
        return val

    for p in g.edge_points:
        e = g.in_edge(p)
        if e is not None and e == g.out_edge(p):
            raise CyclicCircuit(f"circle through {p!r}")
    # vertices with no path to an output still have to be acyclic
    for v in g.vertices:
        point_value(v)
    return {o: point_value(o) for o in g.outputs}


def truth_table(g: OpenGraph, inputs: Optional[Sequence[str]] = None, outputs: Optional[Sequence[str]] = None) -> TruthTable:
    ins = tuple(inputs) if inputs is not None else tuple(g.inputs)
    outs = tuple(outputs) if outputs is not None else tuple(g.outputs)
    rows = {}
    for vals in itertools.product((False, True), repeat=len(ins)):
        res = evaluate(g, dict(zip(ins, vals)))
        rows[vals] = tuple(res[o] for o in outs)
    return TruthTable(ins, outs, rows)


def check_rule_against_tables(rule: Rule) -> bool:
    lt = truth_table(rule.lhs)
    rt = truth_table(rule.rhs, [rule.inputs[x] for x in lt.inputs], [rule.outputs[o] for o in lt.outputs])
    return lt.rows == rt.rows


# -- rewriting as evaluation -----------------------------------------------


def unit_tensor(values: Mapping[str, bool]) -> OpenGraph:
    """One value unit per output id."""
    points: dict = {}
    edges: dict = {}
    for i, o in enumerate(sorted(values)):
        points[f"u{i}"] = UNIT_OF[values[o]]
        points[o] = None
        edges[f"e{i}"] = (f"u{i}", o)
    return OpenGraph(points, edges)


def normal_form_values(g: OpenGraph) -> Optional[dict[str, bool]]:
    """Read output values off a graph that is a tensor of value units."""
    g = proper(g)
    if g.inputs or g.boundary.isolated:
        return None
    out = {}
    for v in g.vertices:
        lab = g.label(v)
        if lab not in VALUES or g.in_edges(v) or len(g.out_edges(v)) != 1:
            return None
        o = g.tgt(g.out_edges(v)[0])
        if o not in g.outputs:
            return None
        out[o] = VALUES[lab]
    if set(out) != set(g.outputs) or len(g.points) != 2 * len(out):
        return None
    return out


def satisfiable(g: OpenGraph, theory: Optional[Theory] = None, max_steps: int = 1000) -> Optional[Assignment]:
    """The least assignment (inputs by id, F before T) that makes the single output T."""
    theory = theory or boolean_theory()
    outs = g.outputs
    if len(outs) != 1:
        raise OpenGraphError("satisfiability needs exactly one output")
    table = truth_table(g)
    (z,) = outs
    for vals in itertools.product((False, True), repeat=len(table.inputs)):
        asg = dict(zip(table.inputs, vals))
        closed = plug_units(g, {x: UNIT_OF[b] for x, b in asg.items()})
        nf = normalize(theory, closed, max_steps=max_steps).final
        got = normal_form_values(nf)
        if got is None:
            raise OpenGraphError(f"rewriting left a non-value normal form under {asg}")
        if got[z] != table(asg)[z]:
            raise OpenGraphError(f"rewriting and truth table disagree under {asg}")
        if got[z]:
            return asg
    return None


def same_normal_form(g: OpenGraph, h: OpenGraph) -> bool:
    """Homeomorphic with outputs matched by id."""
    if g.outputs != h.outputs or g.inputs != h.inputs:
        return False
    tags = {p: p for p in g.inputs + g.outputs}
    return homeomorphic_tagged(proper(g), tags, proper(h), tags)


# -- random circuits -------------------------------------------------------

GATES = ("AND", "NOT", "COPY", "IGN")


def random_circuit(rng: random.Random, n_gates: int, closed: bool = True) -> OpenGraph:
    """A random acyclic circuit with ``n_gates`` logic gates.

    Gates are added one at a time, each consuming signals only from earlier
    gates, value units or (when ``closed`` is false) fresh inputs, so the
    result is a layered DAG.  Value units are sources and are not counted as
    gates.  Every signal left unused at the end becomes an output.
    """
    points: dict = {}
    edges: dict = {}
    pool: list[str] = []  # vertices or inputs with an unused outgoing signal
    counter = itertools.count()

    def source() -> str:
        if closed or rng.random() < 0.3:
            s = f"u{next(counter)}"
            points[s] = rng.choice(("T", "F"))
        else:
            s = f"x{next(counter)}"
            points[s] = None
        return s

    def take() -> str:
        if not pool or rng.random() < 0.25:
            return source()
        return pool.pop(rng.randrange(len(pool)))

    def connect(s: str, t: str) -> None:
        edges[f"e{len(edges)}"] = (s, t)

    for _ in range(n_gates):
        kind = rng.choice(GATES)
        v = f"g{next(counter)}"
        points[v] = kind
        for _ in range(SIGNATURE[kind][0]):
            connect(take(), v)
        pool.extend([v] * SIGNATURE[kind][1])
    # unit sources that never got used still need somewhere to go
    used = {s for s, _ in edges.values()}
    pool.extend(p for p in sorted(points) if points[p] in VALUES and p not in used)
    for s in pool:
        o = f"o{next(counter)}"
        points[o] = None
        connect(s, o)
    return OpenGraph(points, edges)
