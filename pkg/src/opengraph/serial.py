"""JSON documents for rules, theories, composition specs and derivation traces.

Graphs use the format of :func:`opengraph.graph.graph_to_dict`.
"""

from __future__ import annotations

from typing import Mapping

from .compose import MergeSpec, PlugSpec
from .errors import BoundaryMismatch, InvalidGraph, InvalidRule
from .graph import OpenGraph, dumps, graph_from_dict, graph_to_dict, loads
from .matching import Embedding
from .rewrite import Rule, make_rule
from .theory import Derivation, Theory


def read_json(path):
    with open(path) as fh:
        return loads(fh.read())


def write_json(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")


def _field(data: Mapping, key: str, what: str):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise InvalidGraph(f"{what} document is missing {key!r}") from None


# -- rules and theories ----------------------------------------------------


def rule_to_dict(r: Rule) -> dict:
    out = {
        "name": r.name,
        "lhs": graph_to_dict(r.lhs),
        "rhs": graph_to_dict(r.rhs),
        "inputs": dict(r.inputs),
        "outputs": dict(r.outputs),
    }
    if r.derived:
        out["derived"] = True
    return out


def rule_from_dict(data: Mapping) -> Rule:
    name = _field(data, "name", "rule")
    lhs = graph_from_dict(_field(data, "lhs", "rule"))
    rhs = graph_from_dict(_field(data, "rhs", "rule"))
    try:
        r = make_rule(name, lhs, rhs, data.get("inputs"), data.get("outputs"))
    except BoundaryMismatch as exc:
        raise InvalidRule(str(exc)) from None
    return Rule(r.name, r.lhs, r.rhs, r.inputs, r.outputs, bool(data.get("derived", False)))


def theory_to_dict(t: Theory) -> dict:
    return {
        "name": t.name,
        "signature": {k: list(v) for k, v in t.signature.items()},
        "value_units": list(t.value_units),
        "rules": [rule_to_dict(r) for r in t.rules],
    }


def theory_from_dict(data: Mapping) -> Theory:
    sig = {}
    for lab, ar in _field(data, "signature", "theory").items():
        if not (isinstance(ar, (list, tuple)) and len(ar) == 2 and all(isinstance(n, int) and n >= 0 for n in ar)):
            raise InvalidGraph(f"arity of {lab!r} must be a pair of non-negative integers")
        sig[lab] = (ar[0], ar[1])
    rules = tuple(rule_from_dict(r) for r in data.get("rules", []))
    return Theory(data.get("name", ""), sig, rules, tuple(data.get("value_units", ())))


def read_rule(path) -> Rule:
    return rule_from_dict(read_json(path))


def read_theory(path) -> Theory:
    return theory_from_dict(read_json(path))


# -- composition specs -----------------------------------------------------


def plug_spec_to_dict(spec: PlugSpec) -> dict:
    return {"P": graph_to_dict(spec.P), "b": dict(spec.b), "b'": dict(spec.b2)}


def plug_spec_from_dict(data: Mapping) -> PlugSpec:
    P = graph_from_dict(_field(data, "P", "plug spec"))
    return PlugSpec(P, dict(_field(data, "b", "plug spec")), dict(_field(data, "b'", "plug spec")))


def embedding_maps(f: Embedding) -> dict:
    return {"points": dict(f.points), "edges": dict(f.edges)}


def merge_spec_to_dict(spec: MergeSpec) -> dict:
    return {"K": graph_to_dict(spec.K), "e1": embedding_maps(spec.e1), "e2": embedding_maps(spec.e2)}


def merge_spec_from_dict(data: Mapping, G1: OpenGraph, G2: OpenGraph) -> MergeSpec:
    """Read ``{"K": graph, "e1": maps, "e2": maps}``; the maps point into ``G1`` and ``G2``."""
    K = graph_from_dict(_field(data, "K", "merge spec"))
    maps = []
    for key, target in (("e1", G1), ("e2", G2)):
        m = _field(data, key, "merge spec")
        maps.append(Embedding(K, target, dict(m.get("points", {})), dict(m.get("edges", {}))))
    return MergeSpec(K, maps[0], maps[1])


# -- derivation traces -----------------------------------------------------


def trace_to_dict(t: Theory, d: Derivation) -> dict:
    return {
        "theory": t.name,
        "initial": graph_to_dict(d.initial),
        "steps": [
            {"rule": s.rule_name, "matching": i, "after": graph_to_dict(s.after)}
            for s, i in zip(d.steps, d.indices)
        ],
        "final": graph_to_dict(d.final) if d.final is not None else None,
    }


def trace_steps(data: Mapping) -> tuple[OpenGraph, list[tuple[str, int]], list[OpenGraph], OpenGraph]:
    """Initial graph, ``(rule, index)`` pairs, recorded graphs and final graph of a trace."""
    steps = _field(data, "steps", "trace")
    initial = graph_from_dict(_field(data, "initial", "trace"))
    pairs = [(_field(s, "rule", "trace step"), int(_field(s, "matching", "trace step"))) for s in steps]
    afters = [graph_from_dict(_field(s, "after", "trace step")) for s in steps]
    final = graph_from_dict(_field(data, "final", "trace"))
    return initial, pairs, afters, final
