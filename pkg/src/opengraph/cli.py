"""Command-line front end.

Exit codes: 0 success or true, 1 false / no match / unsatisfiable,
2 bad input, 3 step limit reached.  Results go to stdout as canonical JSON
(sorted keys) unless noted; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import serial
from .circuits import satisfiable, truth_table
from .compose import plug, subtract, substitute, tensor
from .dot import export_dot
from .errors import OpenGraphError, StepLimitExceeded
from .graph import dumps, graph_from_dict, graph_to_dict, read_graph
from .homeo import homeomorphic, is_proper, proper
from .matching import Embedding, describe, find_matchings
from .rewrite import Rule, apply, seq_merge
from .theory import DEFAULT_MAX_STEPS, FIRST_MATCH, RANDOM, check_theory, normalize, replay, verify_rule_by_cases

OK, FALSE, INPUT_ERROR, STEP_LIMIT = 0, 1, 2, 3
SEED_ENV = "OPENGRAPH_SEED"


def _emit(obj) -> None:
    print(dumps(obj))


def _graph(g) -> dict:
    return graph_to_dict(g)


def _embedding(path: Optional[str], G, M) -> Embedding:
    if path is None:
        return Embedding(G, M, {p: p for p in G.points}, {e: e for e in G.edges})
    data = serial.read_json(path)
    return Embedding(G, M, dict(data.get("points", {})), dict(data.get("edges", {})))


def cmd_validate(a) -> int:
    g = read_graph(a.graph)
    _emit({
        "valid": True,
        "vertices": len(g.vertices),
        "edge_points": len(g.edge_points),
        "edges": len(g.edges),
        "inputs": g.inputs,
        "outputs": g.outputs,
        "isolated": g.isolated,
        "proper": is_proper(g),
    })
    return OK


def cmd_normalize_proper(a) -> int:
    _emit(_graph(proper(read_graph(a.graph))))
    return OK


def cmd_match(a) -> int:
    ms = find_matchings(read_graph(a.pattern), read_graph(a.host))
    _emit([{"index": i, **describe(m)} for i, m in enumerate(ms)])
    return OK if ms else FALSE


def cmd_apply(a) -> int:
    rule = serial.read_rule(a.rule)
    g = read_graph(a.graph)
    ms = find_matchings(rule.lhs, g)
    if not 0 <= a.at < len(ms):
        print(f"rule {rule.name!r} has {len(ms)} matching(s); no matching number {a.at}", file=sys.stderr)
        return FALSE
    _emit(_graph(apply(rule, g, ms[a.at]).after))
    return OK


def _seed(a) -> Optional[int]:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        return int(env)
    return a.seed


def cmd_normalize(a) -> int:
    t = check_theory(serial.read_theory(a.theory))
    g = read_graph(a.graph)
    code = OK
    try:
        d = normalize(t, g, strategy=a.strategy, max_steps=a.max_steps, seed=_seed(a))
    except StepLimitExceeded as exc:
        print(str(exc), file=sys.stderr)
        d, code = exc.derivation, STEP_LIMIT
    if a.trace:
        serial.write_json(serial.trace_to_dict(t, d), a.trace)
    _emit({"steps": [s.rule_name for s in d.steps], "final": _graph(d.final)})
    return code


def cmd_verify_rule(a) -> int:
    t = check_theory(serial.read_theory(a.theory))
    r = serial.read_rule(a.rule)
    v = verify_rule_by_cases(t, r, max_steps=a.max_steps)
    cases = []
    for c in v.cases:
        entry = {"assignment": c.assignment, "status": c.status}
        if c.lhs is not None:
            entry["lhs"] = _graph(c.lhs)
            entry["rhs"] = _graph(c.rhs)
        if c.message:
            entry["message"] = c.message
        cases.append(entry)
    ce = v.counterexample
    _emit({"rule": r.name, "verdict": v.verdict, "cases": cases, "counterexample": ce.assignment if ce else None})
    return {True: OK, False: FALSE, None: STEP_LIMIT}[v.verdict]


def cmd_compose_rules(a) -> int:
    t = check_theory(serial.read_theory(a.theory))
    r1, r2 = t.rule(a.first), t.rule(a.second)
    raw = serial.read_json(a.spec)
    # the merge spec may name expansions of r1.rhs / r2.lhs that the embeddings target
    for key, side in (("rhs1", r1.rhs), ("lhs2", r2.lhs)):
        if key in raw:
            g = graph_from_dict(raw[key])
            if not homeomorphic(g, side, fix_boundary=True):
                print(f"{key} is not homeomorphic to the rule side it replaces", file=sys.stderr)
                return INPUT_ERROR
            if key == "rhs1":
                r1 = Rule(r1.name, r1.lhs, g, r1.inputs, r1.outputs)
            else:
                r2 = Rule(r2.name, g, r2.rhs, r2.inputs, r2.outputs)
    spec = serial.merge_spec_from_dict(raw, r1.rhs, r2.lhs)
    _emit(serial.rule_to_dict(seq_merge(r1, r2, spec, name=a.name)))
    return OK


def cmd_truth_table(a) -> int:
    _emit(truth_table(read_graph(a.graph)).to_json())
    return OK


def cmd_sat(a) -> int:
    theory = check_theory(serial.read_theory(a.theory)) if a.theory else None
    asg = satisfiable(read_graph(a.graph), theory, max_steps=a.max_steps)
    _emit({"satisfiable": asg is not None, "assignment": asg})
    return OK if asg is not None else FALSE


def cmd_export_dot(a) -> int:
    sys.stdout.write(export_dot(read_graph(a.graph)))
    return OK


def cmd_plug(a) -> int:
    spec = serial.plug_spec_from_dict(serial.read_json(a.spec))
    _emit(_graph(plug(read_graph(a.left), read_graph(a.right), spec)))
    return OK


def cmd_tensor(a) -> int:
    _emit(_graph(tensor(read_graph(a.left), read_graph(a.right))))
    return OK


def cmd_subtract(a) -> int:
    M, G = read_graph(a.graph), read_graph(a.sub)
    H, spec = subtract(M, _embedding(a.embedding, G, M))
    _emit({"graph": _graph(H), "spec": serial.plug_spec_to_dict(spec)})
    return OK


def cmd_substitute(a) -> int:
    M, G, G2 = read_graph(a.graph), read_graph(a.sub), read_graph(a.replacement)
    _emit(_graph(substitute(M, _embedding(a.embedding, G, M), G2)))
    return OK


def cmd_replay(a) -> int:
    t = serial.read_theory(a.theory)
    initial, pairs, afters, final = serial.trace_steps(serial.read_json(a.trace))
    result = replay({r.name: r for r in t.rules}, initial, pairs)
    same = homeomorphic(result, final, fix_boundary=True)
    _emit({"steps": len(pairs), "reproduced": same, "final": _graph(result)})
    return OK if same else FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opengraph", description="Open graphs, matching and rewriting.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *args, help=None):
        sp = sub.add_parser(name, help=help)
        for arg in args:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "graph", help="check a graph file")
    add("normalize-proper", cmd_normalize_proper, "graph", help="print the proper form")
    add("match", cmd_match, "pattern", "host", help="list matchings of a pattern")
    add("apply", cmd_apply, "rule", "graph", help="apply a rule").add_argument("--at", type=int, default=0)
    sp = add("normalize", cmd_normalize, "theory", "graph", help="rewrite to normal form")
    sp.add_argument("--strategy", choices=(FIRST_MATCH, RANDOM), default=FIRST_MATCH)
    sp.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trace", default=None, help="write the derivation trace here")
    add("verify-rule", cmd_verify_rule, "theory", "rule", help="case analysis").add_argument(
        "--max-steps", type=int, default=DEFAULT_MAX_STEPS
    )
    add("compose-rules", cmd_compose_rules, "theory", "first", "second", "spec", help="sequential merge").add_argument(
        "--name", default=None
    )
    add("truth-table", cmd_truth_table, "graph", help="evaluate a boolean circuit")
    sp = add("sat", cmd_sat, "graph", help="least satisfying assignment")
    sp.add_argument("--theory", default=None)
    sp.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    add("export-dot", cmd_export_dot, "graph", help="render as Graphviz DOT")
    add("plug", cmd_plug, "left", "right", "spec", help="plug outputs into inputs")
    add("tensor", cmd_tensor, "left", "right", help="disjoint union")
    add("subtract", cmd_subtract, "graph", "sub", help="remove an embedded subgraph").add_argument("embedding", nargs="?")
    add("substitute", cmd_substitute, "graph", "sub", "replacement", help="replace an embedded subgraph").add_argument("embedding", nargs="?")
    add("replay", cmd_replay, "theory", "trace", help="re-run a derivation trace")
    return p


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return a.func(a)
    except StepLimitExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return STEP_LIMIT
    except (OpenGraphError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main() -> None:
    sys.exit(run_cli())
