"""Small named graphs used as worked examples, goldens and CLI samples.

Vertex labels are chosen so that the examples are structurally faithful;
point ids follow the usual figure names where those are unambiguous.
"""

from __future__ import annotations

from .graph import OpenGraph
from .rewrite import Rule, make_rule


def open_graph_example() -> OpenGraph:
    """Two chains into a vertex, a chain out through another vertex, a
    three-point circle and a one-point circle."""
    return OpenGraph(
        {f"p{i}": None for i in (1, 2, 3, 4, 5, 7, 9, 10, 11, 12, 13)} | {"v6": "v", "v8": "w"},
        {
            "e1": ("p1", "p2"),
            "e2": ("p2", "p3"),
            "e3": ("p3", "v6"),
            "e4": ("p4", "p5"),
            "e5": ("p5", "v6"),
            "e6": ("v6", "p7"),
            "e7": ("p7", "v8"),
            "e8": ("v8", "p9"),
            "e9": ("p10", "p11"),
            "e10": ("p11", "p12"),
            "e11": ("p12", "p10"),
            "e12": ("p13", "p13"),
        },
    )


def open_graph_example_proper() -> OpenGraph:
    """Hand-drawn proper form of :func:`open_graph_example`, with its own ids."""
    return OpenGraph(
        {"p1": None, "p4": None, "v6": "v", "v7": "w", "p8": None, "p9": None, "c13": None},
        {
            "e123": ("p1", "v6"),
            "e45": ("p4", "v6"),
            "e6": ("v6", "v7"),
            "e7": ("v7", "p8"),
            "e91011": ("p9", "p9"),
            "e13": ("c13", "c13"),
        },
    )


def branching_non_example() -> dict:
    """Raw JSON form of a graph whose edge-points branch; it must not validate."""
    return {
        "points": {f"p{i}": {"kind": "edge-point"} for i in range(14, 19)},
        "edges": {
            e: {"src": s, "tgt": t}
            for e, (s, t) in {
                "e14": ("p14", "p15"),
                "e15": ("p15", "p15"),
                "e16": ("p15", "p16"),
                "e17": ("p16", "p17"),
                "e18": ("p16", "p18"),
            }.items()
        },
    }


def embeds_fragment() -> OpenGraph:
    """Fragment with every edge at v6, which embeds openly."""
    return OpenGraph(
        {"p2": None, "p3": None, "p4": None, "p5": None, "v6": "v", "p7": None},
        {"e2": ("p2", "p3"), "e3": ("p3", "v6"), "e4": ("p4", "p5"), "e5": ("p5", "v6"), "e6": ("v6", "p7")},
    )


def non_full_fragment() -> OpenGraph:
    """The same fragment without e5, so the embedding is not full at v6."""
    return OpenGraph(
        {"p2": None, "p3": None, "p4": None, "p5": None, "v6": "v", "p7": None},
        {"e2": ("p2", "p3"), "e3": ("p3", "v6"), "e4": ("p4", "p5"), "e6": ("v6", "p7")},
    )


def matching_host() -> OpenGraph:
    """Host with four vertices, one of which carries a self-loop."""
    return OpenGraph(
        {"s1": None, "s2": None, "s3": None, "t1": None, "t2": None, "v1": "v1", "v2": "v2", "v3": "v3", "v4": "v4"},
        {
            "e1": ("s1", "v1"),
            "e2": ("s2", "v2"),
            "e3": ("s3", "t2"),
            "e4": ("v1", "t1"),
            "e5": ("v1", "v2"),
            "e6": ("v2", "v3"),
            "e7": ("v2", "v3"),
            "e8": ("v3", "v3"),
        },
    )


def matching_pattern() -> OpenGraph:
    """Pattern matching :func:`matching_host` once e5 is split in two and the
    loop e8 in three."""
    return OpenGraph(
        {
            "s1": None, "s2": None, "t1": None, "v1": "v1", "v2": "v2", "v3": "v3",
            "a5": None, "b5": None, "a8": None, "b8": None, "c8": None, "d8": None,
        },
        {
            "f1": ("s1", "v1"),
            "f2": ("s2", "v2"),
            "f4": ("v1", "t1"),
            "f5a": ("v1", "a5"),
            "f5b": ("b5", "v2"),
            "f8a": ("v3", "a8"),
            "f8b": ("b8", "c8"),
            "f8c": ("d8", "v3"),
            "f6": ("v2", "v3"),
            "f7": ("v2", "v3"),
        },
    )


def through_vertex() -> OpenGraph:
    """One vertex with a dangling input and a dangling output."""
    return OpenGraph({"s": None, "v": "v", "t": None}, {"a": ("s", "v"), "b": ("v", "t")})


def through_vertex_matches() -> list[OpenGraph]:
    chain = OpenGraph({"v1": "v", "v2": "v", "v3": "v"}, {"a": ("v1", "v3"), "b": ("v2", "v3"), "c": ("v2", "v1")})
    two_cycle = OpenGraph({"v1": "v", "v2": "v"}, {"a": ("v1", "v2"), "b": ("v2", "v1")})
    loop = OpenGraph({"v1": "v"}, {"a": ("v1", "v1")})
    return [chain, two_cycle, loop]


def through_vertex_non_matches() -> list[OpenGraph]:
    fork = OpenGraph(
        {"v2": "v", "v3": "v", "t1": None, "s1": None},
        {"a": ("v2", "v3"), "b": ("v2", "t1"), "c": ("s1", "v3")},
    )
    single = OpenGraph({"v1": "v", "v2": "v"}, {"a": ("v2", "v1")})
    lollipop = OpenGraph({"v1": "v", "v2": "v"}, {"a": ("v1", "v2"), "b": ("v1", "v1")})
    return [fork, single, lollipop]


def plug_left() -> OpenGraph:
    return OpenGraph({"by": None, "v": "v", "bx": None}, {"a": ("by", "v"), "b": ("v", "bx")})


def plug_right() -> OpenGraph:
    return OpenGraph({"bx'": None, "v'": "v'", "by'": None}, {"a'": ("bx'", "v'"), "b'": ("v'", "by'")})


def gate_loop() -> OpenGraph:
    """A one-in one-out gate whose output is fed back to its input."""
    return OpenGraph({"g": "G", "p": None}, {"e0": ("g", "p"), "e1": ("p", "g")})


def gate_to_wire_rule() -> Rule:
    lhs = OpenGraph({"s": None, "g": "G", "t": None}, {"a": ("s", "g"), "b": ("g", "t")})
    rhs = OpenGraph({"s": None, "t": None}, {"a": ("s", "t")})
    return make_rule("gate-wire", lhs, rhs)


def circle() -> OpenGraph:
    return OpenGraph({"c": None}, {"e0": ("c", "c")})
