import pytest

from opengraph import circuits, data_path, gallery, serial
from opengraph.dot import export_dot
from opengraph.errors import InvalidGraph, InvalidRule
from opengraph.graph import graph_from_dict, graph_to_dict, isomorphic, read_graph
from opengraph.rewrite import overlaps
from opengraph.theory import normalize

SHIPPED_GRAPHS = {
    "and_gate": circuits.and_gate,
    "circle": gallery.circle,
    "contradiction": circuits.contradiction,
    "copy_beta": circuits.copy_beta,
    "example_graph": gallery.open_graph_example,
    "example_graph_proper": gallery.open_graph_example_proper,
    "gate_loop": gallery.gate_loop,
    "or_gate": circuits.or_gate,
    "or_gate_F": circuits.or_gate_with_f,
}
SHIPPED_RULES = {
    "contradiction": circuits.contradiction_rule,
    "gate_wire": gallery.gate_to_wire_rule,
    "not_not": circuits.double_negation_rule,
    "not_wire": circuits.not_is_wire_rule,
}


@pytest.mark.parametrize("name", sorted(SHIPPED_GRAPHS))
def test_shipped_graphs_match_gallery(name):
    assert read_graph(data_path("graphs", name + ".json")) == SHIPPED_GRAPHS[name]()


def test_shipped_branching_graph_is_invalid():
    with pytest.raises(InvalidGraph):
        read_graph(data_path("graphs", "branching.json"))


@pytest.mark.parametrize("name", sorted(SHIPPED_RULES))
def test_shipped_rules_match(name):
    assert serial.read_rule(data_path("rules", name + ".json")) == SHIPPED_RULES[name]()


def test_shipped_theories():
    t = serial.read_theory(data_path("theories", "boolean.json"))
    assert t == circuits.boolean_theory()
    t2 = serial.read_theory(data_path("theories", "boolean_not_not.json"))
    assert [r.name for r in t2.rules][-1] == "not-not"


def test_rule_round_trip():
    for r in circuits.boolean_theory().rules:
        assert serial.rule_from_dict(serial.rule_to_dict(r)) == r


def test_derived_flag_survives():
    spec, a, b = next(o for o in overlaps(circuits.not_rule("F"), circuits.not_rule("T")) if o[0].K.vertices)
    from opengraph.rewrite import seq_merge

    d = seq_merge(a, b, spec)
    back = serial.rule_from_dict(serial.rule_to_dict(d))
    assert back.derived and back == d


def test_rule_with_bad_correspondence():
    data = serial.rule_to_dict(circuits.not_rule("F"))
    data["outputs"] = {"z": "nowhere"}
    with pytest.raises(InvalidRule):
        serial.rule_from_dict(data)


def test_rule_missing_side():
    with pytest.raises(InvalidGraph):
        serial.rule_from_dict({"name": "r", "lhs": graph_to_dict(circuits.wire())})


def test_theory_bad_arity():
    with pytest.raises(InvalidGraph):
        serial.theory_from_dict({"signature": {"AND": [2]}, "rules": []})
    with pytest.raises(InvalidGraph):
        serial.theory_from_dict({"signature": {"AND": [2, -1]}, "rules": []})


def test_theory_round_trip():
    t = circuits.boolean_theory()
    assert serial.theory_from_dict(serial.theory_to_dict(t)) == t


def test_plug_spec_round_trip():
    from opengraph.rewrite import point_spec

    spec = point_spec([("z", "x")])
    assert serial.plug_spec_from_dict(serial.plug_spec_to_dict(spec)) == spec


def test_shipped_merge_spec():
    t = serial.read_theory(data_path("theories", "boolean.json"))
    raw = serial.read_json(data_path("specs", "not_F_then_not_T.json"))
    lhs2 = graph_from_dict(raw["lhs2"])
    spec = serial.merge_spec_from_dict(raw, t.rule("not-F").rhs, lhs2)
    assert spec.K.vertices and serial.merge_spec_to_dict(spec)["K"] == raw["K"]


def test_trace_round_trip(tmp_path):
    t = circuits.boolean_theory().with_rules(circuits.double_negation_rule())
    d = normalize(t, circuits.or_gate_with_f())
    path = tmp_path / "trace.json"
    serial.write_json(serial.trace_to_dict(t, d), path)
    initial, pairs, afters, final = serial.trace_steps(serial.read_json(path))
    assert initial == d.initial and final == d.final
    assert pairs == [(s.rule_name, i) for s, i in zip(d.steps, d.indices)]
    assert afters == [s.after for s in d.steps]


def test_dot_of_and_gate():
    out = export_dot(circuits.and_gate())
    assert out.startswith('digraph "G" {')
    assert '"a" [shape=box, label="AND"];' in out
    assert '"x" [shape=point, width=0.08, xlabel="in"];' in out
    assert '"z" [shape=point, width=0.08, xlabel="out"];' in out
    assert '"x" -> "a" [id="e0"];' in out
    assert out.endswith("}\n")


def test_dot_of_circle_and_order():
    out = export_dot(gallery.circle(), name="c")
    assert '"c" -> "c" [id="e0"];' in out and 'xlabel' not in out
    lines = export_dot(gallery.open_graph_example()).splitlines()
    edge_ids = [ln.split('id="')[1].split('"')[0] for ln in lines if "->" in ln]
    assert edge_ids == [e for e in gallery.open_graph_example().sorted_edges]


def test_golden_proper_form_file():
    from opengraph.homeo import proper

    g = read_graph(data_path("graphs", "example_graph.json"))
    golden = read_graph(data_path("graphs", "example_graph_proper.json"))
    assert isomorphic(proper(g), golden) is not None
