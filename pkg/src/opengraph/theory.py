"""Graphical theories: a signature and generating rules, plus normalisation,
rule derivation and proof by case analysis."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .compose import MergeSpec, PlugSpec, plug
from .errors import ArityViolation, BoundaryMismatch, InvalidRule, StaleMatching, StepLimitExceeded
from .graph import OpenGraph, point_graph
from .homeo import homeomorphic, homeomorphic_tagged, proper
from .matching import Matching, iter_matchings
from .rewrite import Rule, RewriteStep, apply, make_rule, seq_merge

FIRST_MATCH = "first-match"
RANDOM = "random"
DEFAULT_MAX_STEPS = 1000


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Mapping[str, tuple[int, int]]
    rules: tuple[Rule, ...]
    value_units: tuple[str, ...] = ()

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_rules(self, *extra: Rule) -> "Theory":
        return Theory(self.name, self.signature, self.rules + tuple(extra), self.value_units)


@dataclass(frozen=True)
class Problem:
    kind: str  # "arity" or "rule"
    subject: str
    message: str


def arity_problems(signature: Mapping[str, tuple[int, int]], g: OpenGraph, where: str = "") -> list[Problem]:
    out = []
    for v in g.vertices:
        lab = g.label(v)
        if lab not in signature:
            out.append(Problem("arity", lab, f"{where}vertex {v!r} has unknown label {lab!r}"))
            continue
        want = tuple(signature[lab])
        got = (len(g.in_edges(v)), len(g.out_edges(v)))
        if got != want:
            out.append(Problem("arity", lab, f"{where}vertex {v!r} ({lab}) has arity {got}, expected {want}"))
    return out


def validate_theory(t: Theory) -> list[Problem]:
    """Return every arity or rule problem; an empty list means the theory is valid."""
    problems = []
    for u in t.value_units:
        if tuple(t.signature.get(u, ())) != (0, 1):
            problems.append(Problem("arity", u, f"value unit {u!r} must have arity (0, 1)"))
    for r in t.rules:
        for side, g in (("lhs", r.lhs), ("rhs", r.rhs)):
            problems += arity_problems(t.signature, g, f"rule {r.name!r} {side}: ")
        try:
            make_rule(r.name, r.lhs, r.rhs, r.inputs, r.outputs)
        except BoundaryMismatch as exc:
            problems.append(Problem("rule", r.name, str(exc)))
    return problems


def check_theory(t: Theory) -> Theory:
    """Raise :class:`ArityViolation` or :class:`InvalidRule` for the first problem found."""
    for prob in validate_theory(t):
        raise (ArityViolation if prob.kind == "arity" else InvalidRule)(prob.message)
    return t


def applicable(t: Theory, G: OpenGraph) -> list[tuple[Rule, Matching]]:
    return [(r, m) for r in t.rules for m in iter_matchings(r.lhs, G)]


@dataclass
class Derivation:
    initial: OpenGraph
    steps: list[RewriteStep] = field(default_factory=list)
    final: Optional[OpenGraph] = None
    # position of each step's matching in its rule's matching order
    indices: list[int] = field(default_factory=list)

    @property
    def graphs(self) -> list[OpenGraph]:
        return [self.initial] + [s.after for s in self.steps]


def _first(t: Theory, G: OpenGraph) -> Optional[tuple[Rule, Matching, int]]:
    for r in t.rules:
        m = next(iter_matchings(r.lhs, G), None)
        if m is not None:
            return r, m, 0
    return None


def _random(t: Theory, G: OpenGraph, rng: random.Random) -> Optional[tuple[Rule, Matching, int]]:
    options = [(r, m, i) for r in t.rules for i, m in enumerate(iter_matchings(r.lhs, G))]
    return rng.choice(options) if options else None


def normalize(
    t: Theory,
    G: OpenGraph,
    strategy: str = FIRST_MATCH,
    max_steps: int = DEFAULT_MAX_STEPS,
    seed: Optional[int] = None,
) -> Derivation:
    """Rewrite until no rule applies.

    ``first-match`` takes the first matching of the first applicable rule in
    theory order; ``random`` picks uniformly among all of them.
    """
    if strategy not in (FIRST_MATCH, RANDOM):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    d = Derivation(G)
    cur = proper(G)
    while True:
        choice = _first(t, cur) if strategy == FIRST_MATCH else _random(t, cur, rng)
        if choice is None:
            d.final = cur
            return d
        if len(d.steps) >= max_steps:
            d.final = cur
            raise StepLimitExceeded(f"no normal form within {max_steps} steps", d)
        step = apply(choice[0], cur, choice[1])
        d.steps.append(step)
        d.indices.append(choice[2])
        cur = step.after


def replay(t_rules: Mapping[str, Rule], initial: OpenGraph, steps: Iterable[tuple[str, int]]) -> OpenGraph:
    """Re-run ``(rule name, matching index)`` steps from ``initial``."""
    cur = proper(initial)
    for name, index in steps:
        rule = t_rules[name]
        m = next(itertools.islice(iter_matchings(rule.lhs, cur), index, None), None)
        if m is None:
            raise StaleMatching(f"rule {name!r} has no matching number {index}")
        cur = apply(rule, cur, m).after
    return cur


def derive_rule(t: Theory, names: Sequence[str], specs: Sequence[MergeSpec], name: Optional[str] = None) -> Rule:
    """Fold :func:`seq_merge` over the named rules, left to right."""
    if len(specs) != len(names) - 1:
        raise ValueError("need one merge spec between each pair of rules")
    acc = t.rule(names[0])
    for nxt, spec in zip(names[1:], specs):
        acc = seq_merge(acc, t.rule(nxt), spec)
    if name is not None or len(names) > 1:
        acc = Rule(name or acc.name, acc.lhs, acc.rhs, acc.inputs, acc.outputs, derived=True)
    return acc


# -- case analysis ---------------------------------------------------------


def unit_graph(label: str, out: str = "out") -> OpenGraph:
    return OpenGraph({f"val_{out}": label, out: None}, {f"w_{out}": (f"val_{out}", out)})


def plug_units(G: OpenGraph, assignment: Mapping[str, str]) -> OpenGraph:
    """Feed the named value unit into each listed input of ``G``."""
    for x in sorted(assignment):
        u = unit_graph(assignment[x], "o")
        G = plug(G, u, PlugSpec(point_graph(["x"]), {"x": x}, {"x": "o"}))
    return G


@dataclass
class CaseReport:
    assignment: dict[str, str]
    status: str  # "equal", "differ" or "unknown"
    lhs: Optional[OpenGraph] = None
    rhs: Optional[OpenGraph] = None
    message: str = ""


@dataclass
class CaseVerdict:
    verdict: Optional[bool]
    cases: list[CaseReport]

    @property
    def counterexample(self) -> Optional[CaseReport]:
        return next((c for c in self.cases if c.status == "differ"), None)


def verify_rule_by_cases(t: Theory, candidate: Rule, max_steps: int = DEFAULT_MAX_STEPS) -> CaseVerdict:
    """Check ``candidate`` by normalising both sides under every input assignment."""
    ins = candidate.lhs.inputs
    if not t.value_units:
        return CaseVerdict(None, [])
    out_tags_l = {o: o for o in candidate.outputs}
    out_tags_r = {r: l for l, r in candidate.outputs.items()}
    cases = []
    for values in itertools.product(t.value_units, repeat=len(ins)):
        asg = dict(zip(ins, values))
        left = plug_units(candidate.lhs, asg)
        right = plug_units(candidate.rhs, {candidate.inputs[x]: b for x, b in asg.items()})
        try:
            nl = normalize(t, left, max_steps=max_steps).final
            nr = normalize(t, right, max_steps=max_steps).final
        except StepLimitExceeded as exc:
            cases.append(CaseReport(asg, "unknown", message=str(exc)))
            continue
        same = homeomorphic_tagged(nl, out_tags_l, nr, out_tags_r)
        cases.append(CaseReport(asg, "equal" if same else "differ", nl, nr))
    statuses = {c.status for c in cases}
    if "differ" in statuses:
        verdict = False
    elif "unknown" in statuses:
        verdict = None
    else:
        verdict = True
    return CaseVerdict(verdict, cases)


def equivalent_results(g: OpenGraph, h: OpenGraph) -> bool:
    """Homeomorphic with every boundary point fixed by id."""
    return homeomorphic(g, h, fix_boundary=True)
