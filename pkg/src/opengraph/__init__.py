"""Open graphs: graphs with edge-points and dangling wires, their
homeomorphism classes, matching, pushout composition and rewriting."""

from importlib import resources

from .circuits import boolean_theory, check_rule_against_tables, random_circuit, satisfiable, truth_table
from .compose import (
    Interface,
    MergeSpec,
    PlugSpec,
    boundary_coherent,
    interface,
    merge,
    plug,
    same_boundary,
    substitute,
    subtract,
    tensor,
)
from .dot import export_dot
from .errors import *  # noqa: F401,F403
from .graph import FreshIds, OpenGraph, Wire, boundary, isomorphic, point_graph, read_graph, wires, write_graph
from .homeo import contract_point, expand_edge, homeomorphic, is_proper, proper, proper_form
from .matching import Embedding, Matching, find_matchings, is_open_embedding, matches
from .rewrite import Rule, RewriteStep, apply, extend, identity_rule, make_rule, par_plug, seq_merge, tensor_rules
from .theory import Derivation, Theory, derive_rule, normalize, validate_theory, verify_rule_by_cases


def data_path(*parts: str):
    """Path of a file shipped under the package's ``data`` directory."""
    return resources.files(__name__).joinpath("data", *parts)


__version__ = "0.1.0"
