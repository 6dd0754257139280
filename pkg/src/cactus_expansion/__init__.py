"""Digraph expansions, cactus digraphs and doubly bidirectionally connected pairs."""

from .cactus import (
    CactusDecomposition,
    NotCactus,
    PreorderRelation,
    RootedPreorder,
    brute_force_is_cactus,
    check_connecting_point_claim,
    check_cycle_minimum_claim,
    is_cactus,
    verify_single_dipped,
)
from .dbcp import DbcpWitness, brute_force_is_dbcp, find_dbcp, is_dbcp, preterminal_candidates
from .digraph import (
    Digraph,
    Path,
    degrees,
    enumerate_simple_cycles,
    enumerate_simple_paths,
    is_strongly_connected,
    reachable_from,
)
from .generators import fixture, random_cactus, random_digraph
from .morphism import (
    ExpansionReport,
    Morphism,
    MorphismError,
    check_indegree_preservation,
    verify_expansion,
    verify_morphism,
)
from .search import (
    SearchConfig,
    SearchOutcome,
    SearchStatus,
    enumerate_expansions,
    find_cactus_expansion,
    validate_theorem_on_corpus,
)

__all__ = [
    "CactusDecomposition",
    "DbcpWitness",
    "Digraph",
    "ExpansionReport",
    "Morphism",
    "MorphismError",
    "NotCactus",
    "Path",
    "PreorderRelation",
    "RootedPreorder",
    "SearchConfig",
    "SearchOutcome",
    "SearchStatus",
    "brute_force_is_cactus",
    "brute_force_is_dbcp",
    "check_connecting_point_claim",
    "check_cycle_minimum_claim",
    "check_indegree_preservation",
    "degrees",
    "enumerate_expansions",
    "enumerate_simple_cycles",
    "enumerate_simple_paths",
    "find_cactus_expansion",
    "find_dbcp",
    "fixture",
    "is_cactus",
    "is_dbcp",
    "is_strongly_connected",
    "preterminal_candidates",
    "random_cactus",
    "random_digraph",
    "reachable_from",
    "validate_theorem_on_corpus",
    "verify_expansion",
    "verify_morphism",
    "verify_single_dipped",
]
