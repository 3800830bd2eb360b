"""Spanning-tree isomorphism toolkit.

Decides whether a graph contains a spanning tree isomorphic to a target
tree, in undirected and directed (arborescence) flavors, parameterized by
the redundant-set size ``k = m - (n - 1)``.  Ships the two solvers, a
brute-force oracle, kernelization with anchor-chain tracking, canonical tree
codes, a seeded instance generator, and a CLI (``stiso``).
"""

from .directed import (
    ChainCandidates,
    DirectedStats,
    certify_directed,
    chain_candidates,
    is_spanning_arborescence,
    solve_directed,
    target_tree_from_digraph,
)
from .generate import GenInstance, GenSpec, gen_instance, gen_tree
from .graphs import (
    DiGraph,
    GraphFormatError,
    UGraph,
    Verdict,
    classify_neighbors,
    parse_graph,
    reachable_all,
    redundant_size,
)
from .kernel import AnchorChain, Kernel, KernelError, first_anchor_from, make_contractible
from .oracle import (
    InvalidNeighborReport,
    OracleScaleError,
    invalid_neighbors,
    oracle_directed,
    oracle_undirected,
)
from .treecode import (
    NotArborescenceError,
    NotATreeError,
    TargetTree,
    arborescence_iso,
    arborescence_root,
    dfs_order,
    rooted_code,
    rooted_iso,
    rooted_iso_mapping,
    tree_centers,
    unrooted_code,
    unrooted_iso,
)
from .undirected import SolveStats, certify_undirected, solve_undirected, solve_unicyclic

__all__ = [
    "AnchorChain",
    "ChainCandidates",
    "DiGraph",
    "DirectedStats",
    "GenInstance",
    "GenSpec",
    "GraphFormatError",
    "InvalidNeighborReport",
    "Kernel",
    "KernelError",
    "NotATreeError",
    "NotArborescenceError",
    "OracleScaleError",
    "SolveStats",
    "TargetTree",
    "UGraph",
    "Verdict",
    "arborescence_iso",
    "arborescence_root",
    "certify_directed",
    "certify_undirected",
    "chain_candidates",
    "classify_neighbors",
    "dfs_order",
    "first_anchor_from",
    "gen_instance",
    "gen_tree",
    "invalid_neighbors",
    "is_spanning_arborescence",
    "make_contractible",
    "oracle_directed",
    "oracle_undirected",
    "parse_graph",
    "reachable_all",
    "redundant_size",
    "rooted_code",
    "rooted_iso",
    "rooted_iso_mapping",
    "solve_directed",
    "solve_undirected",
    "solve_unicyclic",
    "target_tree_from_digraph",
    "tree_centers",
    "unrooted_code",
    "unrooted_iso",
]
