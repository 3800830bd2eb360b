"""Seeded random and planted instance generation.

Planted instances are built as a known spanning tree plus ``k`` extra edges
(arcs), so their answer is YES by construction and the planted extras form a
known redundant set.  Random instances pair an independent tree-plus-extras
graph with an independent target, leaving the truth to the oracle.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from math import comb

from .graphs import DiGraph, UGraph
from .kernel import make_contractible
from .treecode import TargetTree, tree_centers

PLANTED = "planted-yes"
RANDOM = "random"


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated instance."""

    n: int
    k: int
    seed: int
    mode: str = PLANTED
    directed: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two vertices")
        if self.k < 0:
            raise ValueError("negative redundant size")
        if self.mode not in (PLANTED, RANDOM):
            raise ValueError(f"unknown mode {self.mode!r}")
        cap = (self.n - 1) ** 2 if self.directed else comb(self.n, 2) - (self.n - 1)
        if self.k > cap:
            raise ValueError(f"k={self.k} infeasible for n={self.n}")


@dataclass(frozen=True)
class GenInstance:
    """A generated instance: the graph, its target, and what is known about it.

    ``target`` is the rooted form used by the solvers; ``target_graph`` is the
    serializable form (a tree ``UGraph``, or a ``DiGraph`` arborescence).
    ``planted_extra_ids`` are edge/arc ids in ``graph`` forming the known
    redundant set of a planted instance (empty in random mode).
    """

    spec: GenSpec
    graph: UGraph | DiGraph
    target: TargetTree
    target_graph: UGraph | DiGraph
    truth: str  # "YES" | "UNKNOWN"
    planted_extra_ids: tuple[int, ...]


def _prufer_decode(seq: list[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges: list[tuple[int, int]] = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return _prufer_decode(seq, n)


def gen_tree(n: int, seed: int) -> UGraph:
    """Uniform random labeled tree on ``n`` vertices, deterministic per seed."""
    if n < 2:
        raise ValueError("need at least two vertices")
    return UGraph(n, _random_tree_edges(n, random.Random(seed)))


def _orient_from_root(n: int, edges: list[tuple[int, int]], root: int) -> list[tuple[int, int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    arcs: list[tuple[int, int]] = []
    seen = [False] * n
    seen[root] = True
    stack = [root]
    while stack:
        x = stack.pop()
        for w in adj[x]:
            if not seen[w]:
                seen[w] = True
                arcs.append((x, w))
                stack.append(w)
    return arcs


def gen_instance(spec: GenSpec) -> GenInstance:
    """Generate the instance a spec describes (identical spec, identical bytes)."""
    rng = random.Random(spec.seed)
    n, k = spec.n, spec.k
    tree_edges = _random_tree_edges(n, rng)
    if spec.directed:
        root = rng.randrange(n)
        base = _orient_from_root(n, tree_edges, root)
        existing = set(base)
        candidates = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and (u, v) not in existing
        ]
        extras = rng.sample(candidates, k)
        graph: UGraph | DiGraph = DiGraph(n, base + extras)
    else:
        existing = {(min(u, v), max(u, v)) for u, v in tree_edges}
        candidates = [
            (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in existing
        ]
        extras = rng.sample(candidates, k)
        graph = UGraph(n, tree_edges + extras)
    extra_ids = tuple(range(n - 1, n - 1 + k))

    if spec.mode == PLANTED:
        perm = list(range(n))
        rng.shuffle(perm)
        if spec.directed:
            target_graph: UGraph | DiGraph = DiGraph(
                n, [(perm[u], perm[v]) for u, v in base]
            )
            target = TargetTree(UGraph(n, list(target_graph.arcs)), perm[root])
        else:
            ttree = UGraph(n, [(perm[u], perm[v]) for u, v in tree_edges])
            target_graph = ttree
            target = TargetTree(ttree, tree_centers(ttree)[0])
        truth = "YES"
        if spec.directed and k >= 2:
            _assert_extras_on_chains(graph, extra_ids)
    else:
        t_edges = _random_tree_edges(n, rng)
        if spec.directed:
            t_root = rng.randrange(n)
            t_arcs = _orient_from_root(n, t_edges, t_root)
            target_graph = DiGraph(n, t_arcs)
            target = TargetTree(UGraph(n, t_arcs), t_root)
        else:
            ttree = UGraph(n, t_edges)
            target_graph = ttree
            target = TargetTree(ttree, tree_centers(ttree)[0])
        truth = "UNKNOWN"
        extra_ids = ()

    return GenInstance(
        spec=spec,
        graph=graph,
        target=target,
        target_graph=target_graph,
        truth=truth,
        planted_extra_ids=extra_ids,
    )


def _assert_extras_on_chains(d: DiGraph, extra_ids: tuple[int, ...]) -> None:
    """Planted redundant arcs must sit on anchor chains of the contracted core."""
    kernel = make_contractible(d.underlying())
    on_chains: set[int] = set()
    for chain in kernel.chains:
        on_chains.update(chain.edge_ids)
    missing = [a for a in extra_ids if a not in on_chains]
    if missing:
        raise AssertionError(f"planted redundant arcs off every chain: {missing}")
