"""The nine acceptance criteria, one check each.

Every check prints a ``PASS criterion N`` or ``FAIL criterion N`` line.
Run under pytest (``pytest tests/test_acceptance.py -v``) or directly with
``python tests/test_acceptance.py``.
"""

import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import test_compose  # noqa: E402
import test_homeo  # noqa: E402
import test_matching  # noqa: E402
import test_rewrite  # noqa: E402
from opengraph import circuits, data_path, gallery, serial  # noqa: E402
from opengraph.circuits import evaluate, normal_form_values, random_circuit, unit_tensor  # noqa: E402
from opengraph.graph import isomorphic, read_graph  # noqa: E402
from opengraph.homeo import circle_count, homeomorphic, proper  # noqa: E402
from opengraph.matching import find_matchings, matches  # noqa: E402
from opengraph.rewrite import apply  # noqa: E402
from opengraph.theory import normalize, verify_rule_by_cases  # noqa: E402

SEEDS = range(200)


def c1_or_gate_derivation():
    t = serial.read_theory(data_path("theories", "boolean_not_not.json"))
    g = read_graph(data_path("graphs", "or_gate_F.json"))
    start = time.perf_counter()
    d = normalize(t, g)
    took = time.perf_counter() - start
    assert len(d.steps) <= 10
    assert homeomorphic(d.final, circuits.wire())
    chain = circuits.or_gate_chain()
    assert len(d.graphs) == len(chain)
    assert all(homeomorphic(a, b) for a, b in zip(d.graphs, chain))
    assert took < 1.0
    return f"{len(d.steps)} steps ({', '.join(s.rule_name for s in d.steps)}) in {took * 1000:.1f} ms"


def c2_circles():
    rule = serial.read_rule(data_path("rules", "gate_wire.json"))
    g = read_graph(data_path("graphs", "gate_loop.json"))
    (m,) = find_matchings(rule.lhs, g)
    out = proper(apply(rule, g, m).after)
    assert len(out.points) == 1 and len(out.edge_points) == 1 and len(out.edges) == 1
    (s, t), = out.edges.values()
    assert s == t and circle_count(out) == 1
    return "1 edge-point, 1 self-loop"


def c3_copy_beta():
    t = serial.read_theory(data_path("theories", "boolean.json"))
    d = normalize(t, read_graph(data_path("graphs", "copy_beta.json")))
    assert isomorphic(d.final, circuits.unit("F")) is not None
    return f"F unit after {len(d.steps)} steps"


def c4_case_analysis():
    t = serial.read_theory(data_path("theories", "boolean.json"))
    nn = verify_rule_by_cases(t, serial.read_rule(data_path("rules", "not_not.json")))
    assert nn.verdict is True and len(nn.cases) == 2
    cx = verify_rule_by_cases(t, serial.read_rule(data_path("rules", "contradiction.json")))
    assert cx.verdict is True and len(cx.cases) == 2
    nw = verify_rule_by_cases(t, serial.read_rule(data_path("rules", "not_wire.json")))
    assert nw.verdict is False and nw.counterexample.assignment == {"x": "F"}
    return "not-not and not-x-and-x proved in 2 cases each; not-wire refuted at x=F"


def c5_proper_form_golden():
    g = proper(read_graph(data_path("graphs", "example_graph.json")))
    golden = read_graph(data_path("graphs", "example_graph_proper.json"))
    assert len(g.points) == 7 and len(g.edges) == 6
    assert (len(g.inputs), len(g.vertices), len(g.outputs), circle_count(g)) == (2, 2, 1, 2)
    assert isomorphic(g, golden) is not None
    return "7 points, 6 edges, isomorphic to the golden"


def c6_matching_goldens():
    L = gallery.through_vertex()
    assert all(matches(L, G) for G in gallery.through_vertex_matches())
    assert not any(matches(L, G) for G in gallery.through_vertex_non_matches())
    assert matches(gallery.matching_pattern(), gallery.matching_host())
    return "centre pattern: 3 of 3 right-hand graphs, 0 of 3 left-hand; H matches G"


def c7_property_suites():
    start = time.perf_counter()
    for seed in SEEDS:
        test_homeo.test_homeo_properties(seed)
    for seed in SEEDS:
        test_compose.test_compose_properties(seed)
    for seed in SEEDS:
        test_matching.test_matching_complete_and_sound(seed)
    took = time.perf_counter() - start
    assert took < 60
    return f"3 x {len(SEEDS)} seeded instances in {took:.1f} s"


def c8_composition_laws():
    # enumerated small instances: random circuits with at most 5 vertices
    for seed in range(60):
        test_rewrite.test_completeness_of_sequential_merging(seed)
        test_rewrite.test_soundness_of_sequential_merging(seed)
        test_rewrite.test_tensor_interleaving(seed)
    for seed in range(40):
        test_rewrite.test_tensor_associativity_and_unit(seed)
    return "soundness, completeness, interleaving (60 instances each), associativity/unit (40)"


def c9_oracle_agreement():
    t = serial.read_theory(data_path("theories", "boolean.json"))
    agree = 0
    for seed in SEEDS:
        rng = random.Random(seed)
        g = random_circuit(rng, rng.randint(1, 8))
        predicted = evaluate(g, {})
        nf = normalize(t, g).final
        if normal_form_values(nf) == predicted and homeomorphic(nf, unit_tensor(predicted)):
            agree += 1
    assert agree == len(SEEDS)
    return f"{agree}/{len(SEEDS)} circuits agree"


CRITERIA = [
    (1, "or-gate derivation", c1_or_gate_derivation),
    (2, "circles", c2_circles),
    (3, "copy/beta", c3_copy_beta),
    (4, "case analysis", c4_case_analysis),
    (5, "proper-form golden", c5_proper_form_golden),
    (6, "matching goldens", c6_matching_goldens),
    (7, "property suites", c7_property_suites),
    (8, "rule-composition laws", c8_composition_laws),
    (9, "oracle agreement", c9_oracle_agreement),
]


def run_criterion(n, title, fn, out=print):
    try:
        detail = fn()
    except Exception as exc:  # report, then let the caller decide
        out(f"FAIL criterion {n}: {title}: {type(exc).__name__}: {exc}")
        return False
    out(f"PASS criterion {n}: {title}: {detail}")
    return True


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, title, fn, capsys):
    lines = []
    ok = run_criterion(n, title, fn, lines.append)
    with capsys.disabled():
        print("\n" + lines[0])
    assert ok, lines[0]


if __name__ == "__main__":
    results = [run_criterion(n, title, fn) for n, title, fn in CRITERIA]
    sys.exit(0 if all(results) else 1)
