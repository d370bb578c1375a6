from .alpha import alpha_from_dfg, alpha_miner, alpha_plus_miner, maximal_pairs
from .common import DiscoveryError, MinerParams
from .footprint import FootprintMatrix, Relation, footprint, footprint_from_dfg
from .heuristics import DependencyGraph, dependency_graph, heuristic_miner, heuristic_net_to_petri
from .inductive import inductive_miner, mine_variants
from .tree import (
    TAU,
    Operator,
    ProcessTree,
    flower,
    leaf,
    loop,
    parallel,
    sequence,
    tree_to_petri,
    xor,
)

__all__ = [
    "TAU",
    "DependencyGraph",
    "DiscoveryError",
    "FootprintMatrix",
    "MinerParams",
    "Operator",
    "ProcessTree",
    "Relation",
    "alpha_from_dfg",
    "alpha_miner",
    "alpha_plus_miner",
    "dependency_graph",
    "flower",
    "footprint",
    "footprint_from_dfg",
    "heuristic_miner",
    "heuristic_net_to_petri",
    "inductive_miner",
    "leaf",
    "loop",
    "maximal_pairs",
    "mine_variants",
    "parallel",
    "sequence",
    "tree_to_petri",
    "xor",
]
