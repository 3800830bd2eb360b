"""Undirected spanning-tree isomorphism solver.

Dispatch by redundant-set size ``k = m - (n-1)``: ``k = 0`` is a plain tree
isomorphism check, ``k = 1`` removes each cycle edge in turn, and ``k >= 2``
runs the core search: contract the graph, then for every target rooting and
every graph root try to grow the target tree through the graph in the
target's DFS order.

At each matched pair the search first binds pendant components forced to
hang there (a component of the unvisited remainder that is a tree and
touches the matched region only through the current vertex must become one
child subtree, and equal-code children are interchangeable, so greedy
binding is safe).  The remaining children are filled from the remaining
neighbors in one of two modes:

* strict mode enumerates permutations of the contracted core's vertices
  (anchors) and accepts neighbors only when the next anchor reached through
  them continues the permutation; there is no backtracking inside an
  attempt.
* exhaustive mode tries every remaining neighbor for every child with
  chronological backtracking.  It subsumes every anchor order, so it runs
  one attempt per root, and it is the mode the acceptance corpus verifies
  against the brute-force oracle.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

from .graphs import UGraph, Verdict
from .kernel import make_contractible
from .treecode import TargetTree, code_key, rooted_iso_mapping, tree_centers


@dataclass
class SolveStats:
    """Search effort counters for one solve call."""

    k: int = 0
    roots_tried: int = 0
    attempts: int = 0
    permutations_max_per_root: int = 0
    nodes_opened: int = 0
    branches_examined: int = 0
    fallback: bool = False
    anchors: int = 0


TraceFn = Callable[[str], None]


def _target_graph(target: TargetTree | UGraph) -> UGraph:
    return target.tree if isinstance(target, TargetTree) else target


def solve_undirected(
    g: UGraph,
    target: TargetTree | UGraph,
    *,
    fallback: bool = False,
    stats: SolveStats | None = None,
    trace: TraceFn | None = None,
) -> Verdict:
    """Decide whether some spanning tree of ``g`` is isomorphic to ``target``.

    The target's root, if any, is ignored: the answer concerns the unrooted
    tree.  YES verdicts carry a certified (mapping, removed-edges) pair.
    ``fallback`` selects the exhaustive search mode for ``k >= 2``.
    """
    ttree = _target_graph(target)
    if g.n != ttree.n:
        raise ValueError(f"vertex counts differ: graph {g.n}, target {ttree.n}")
    if g.is_multigraph:
        raise ValueError("input graph must be simple")
    stats = stats if stats is not None else SolveStats()
    stats.fallback = fallback
    if not g.is_connected():
        return Verdict("NO", note="graph is disconnected: no spanning tree exists")
    k = g.m - (g.n - 1)
    stats.k = k
    if k == 0:
        verdict = _solve_tree(g, ttree)
    elif k == 1:
        verdict = solve_unicyclic(g, target)
    else:
        verdict = _solve_core(g, ttree, k, fallback, stats, trace)
        if fallback and trace is not None:
            # record whether the exhaustive mode was actually required
            strict = _solve_core(g, ttree, k, False, SolveStats(), None)
            trace(f"fallback-needed={'no' if strict.answer == verdict.answer else 'yes'}")
    if verdict.is_yes and not certify_undirected(g, target, verdict):
        raise RuntimeError("internal error: YES verdict failed certification")
    return verdict


def _solve_tree(g: UGraph, ttree: UGraph) -> Verdict:
    """k = 0: the graph is itself the only spanning tree candidate."""
    for rt in tree_centers(ttree):
        for rg in tree_centers(g):
            mapping = rooted_iso_mapping(ttree, rt, g, rg)
            if mapping is not None:
                return Verdict("YES", mapping=mapping, removed=frozenset())
    return Verdict("NO")


def solve_unicyclic(g: UGraph, target: TargetTree | UGraph) -> Verdict:
    """k = 1: remove each edge of the unique cycle and test tree isomorphism."""
    ttree = _target_graph(target)
    if g.n != ttree.n:
        raise ValueError(f"vertex counts differ: graph {g.n}, target {ttree.n}")
    if not g.is_connected():
        return Verdict("NO", note="graph is disconnected: no spanning tree exists")
    if g.m - (g.n - 1) != 1:
        raise ValueError("solve_unicyclic requires redundant size exactly 1")
    for eid in _cycle_edges(g):
        rest = [e for i, e in enumerate(g.edges) if i != eid]
        h = UGraph(g.n, rest)
        for rt in tree_centers(ttree):
            for rh in tree_centers(h):
                mapping = rooted_iso_mapping(ttree, rt, h, rh)
                if mapping is not None:
                    return Verdict("YES", mapping=mapping, removed=frozenset({eid}))
    return Verdict("NO")


def _cycle_edges(g: UGraph) -> list[int]:
    """Edge ids of the unique cycle of a connected graph with m = n."""
    parent_eid = [-1] * g.n
    parent = [-1] * g.n
    depth = [-1] * g.n
    depth[0] = 0
    order = [0]
    queue = [0]
    tree_eids = set()
    while queue:
        x = queue.pop()
        for eid, w in g.incidence[x]:
            if depth[w] == -1:
                depth[w] = depth[x] + 1
                parent[w] = x
                parent_eid[w] = eid
                tree_eids.add(eid)
                queue.append(w)
                order.append(w)
    extras = [eid for eid in range(g.m) if eid not in tree_eids]
    assert len(extras) == 1
    (closing,) = extras
    u, v = g.edges[closing]
    cycle = [closing]
    while u != v:
        if depth[u] < depth[v]:
            u, v = v, u
        cycle.append(parent_eid[u])
        u = parent[u]
    return sorted(cycle)


def certify_undirected(g: UGraph, target: TargetTree | UGraph, verdict: Verdict) -> bool:
    """Independently check a YES certificate; False on any violation."""
    if not verdict.is_yes or verdict.mapping is None or verdict.removed is None:
        return False
    ttree = _target_graph(target)
    n = g.n
    if ttree.n != n:
        return False
    k = g.m - (n - 1)
    removed = verdict.removed
    if len(removed) != k or not all(0 <= e < g.m for e in removed):
        return False
    mapping = verdict.mapping
    if sorted(mapping) != list(range(n)) or sorted(mapping.values()) != list(range(n)):
        return False
    if not g.is_connected(skip_edges=removed):
        return False
    retained = {
        (min(u, v), max(u, v)) for eid, (u, v) in enumerate(g.edges) if eid not in removed
    }
    mapped = set()
    for a, b in ttree.edges:
        u, v = mapping[a], mapping[b]
        mapped.add((min(u, v), max(u, v)))
    return mapped == retained


# ---------------------------------------------------------------------------
# core search (k >= 2)


@dataclass
class _Node:
    """Per-vertex state created when the search starts filling its children."""

    avail: list[int] = field(default_factory=list)
    used: set[int] = field(default_factory=set)
    planned: list[tuple[int, int]] = field(default_factory=list)  # (anchor pos, neighbor)
    next_plan: int = 0


class _Engine:
    def __init__(
        self,
        g: UGraph,
        tt: TargetTree,
        k: int,
        anchors: tuple[int, ...],
        fallback: bool,
        stats: SolveStats,
    ):
        self.g = g
        self.tt = tt
        self.k = k
        self.anchors = frozenset(anchors)
        self.fallback = fallback
        self.stats = stats
        self.eid_of = {}
        for eid, (u, v) in enumerate(g.edges):
            self.eid_of[(u, v)] = eid
            self.eid_of[(v, u)] = eid
        # attempt state
        self.t2g: list[int] = []
        self.g2t: list[int] = []
        self.removed: set[int] = set()
        self.trail: list[tuple] = []
        self.nodes: dict[int, _Node] = {}
        self.pos_g = 0
        self.pi_pos: dict[int, int] = {}
        self.fail_reason = ""

    # -- state plumbing ----------------------------------------------------

    def _checkpoint(self) -> int:
        return len(self.trail)

    def _rollback(self, ck: int) -> None:
        while len(self.trail) > ck:
            op = self.trail.pop()
            if op[0] == "bind":
                _, tv, gv = op
                self.t2g[tv] = -1
                self.g2t[gv] = -1
            elif op[0] == "rm":
                self.removed.discard(op[1])
            else:  # "node"
                del self.nodes[op[1]]

    def _bind(self, tv: int, gv: int) -> bool:
        if not self.fallback and gv in self.anchors:
            if self.pi_pos[gv] != self.pos_g + 1:
                return self._fail("anchor-order")
            self.pos_g += 1
        self.t2g[tv] = gv
        self.g2t[gv] = tv
        self.trail.append(("bind", tv, gv))
        return True

    def _enter(self, gv: int, parent_eid: int) -> bool:
        """Drop edges from a newly matched vertex back into the matched region."""
        for eid, w in self.g.incidence[gv]:
            if eid == parent_eid or eid in self.removed:
                continue
            if self.g2t[w] >= 0:
                self.removed.add(eid)
                self.trail.append(("rm", eid))
                if len(self.removed) > self.k:
                    return self._fail("budget")
        return True

    def _drop(self, eid: int) -> bool:
        if eid not in self.removed:
            self.removed.add(eid)
            self.trail.append(("rm", eid))
            if len(self.removed) > self.k:
                return self._fail("budget")
        return True

    def _fail(self, reason: str) -> bool:
        if not self.fail_reason:
            self.fail_reason = reason
        return False

    # -- classification ----------------------------------------------------

    def _components_at(self, rg: int):
        """Components of the unvisited remainder adjacent to ``rg``.

        Returns (comps, rg_edges) where each comp is a dict with vertex list,
        acyclicity flag, and attachment count, and rg_edges maps comp index
        to the (eid, neighbor) pairs leaving ``rg`` into it.
        """
        g2t = self.g2t
        removed = self.removed
        comp_of: dict[int, int] = {}
        comps: list[dict] = []
        rg_edges: list[list[tuple[int, int]]] = []
        for eid, u in self.g.incidence[rg]:
            if eid in removed or g2t[u] >= 0:
                continue
            if u in comp_of:
                rg_edges[comp_of[u]].append((eid, u))
                continue
            cid = len(comps)
            members = [u]
            comp_of[u] = cid
            half = 0
            attach = 0
            stack = [u]
            while stack:
                x = stack.pop()
                for e2, w in self.g.incidence[x]:
                    if e2 in removed:
                        continue
                    if g2t[w] >= 0:
                        if w != rg:
                            attach += 1
                        continue
                    half += 1
                    if w not in comp_of:
                        comp_of[w] = cid
                        members.append(w)
                        stack.append(w)
            comps.append(
                {
                    "members": members,
                    "acyclic": half // 2 == len(members) - 1,
                    "attach": attach,
                }
            )
            rg_edges.append([(eid, u)])
        return comps, rg_edges

    def _comp_codes(self, members: list[int], root: int):
        """Subtree codes and sorted child lists of a pendant component."""
        member_set = set(members)
        parent = {root: -1}
        order = [root]
        queue = [root]
        while queue:
            x = queue.pop()
            for eid, w in self.g.incidence[x]:
                if eid in self.removed or w not in member_set or w in parent:
                    continue
                parent[w] = x
                order.append(w)
                queue.append(w)
        codes: dict[int, str] = {}
        kid_codes: dict[int, list[str]] = {x: [] for x in order}
        kids: dict[int, list[int]] = {x: [] for x in order}
        for x in reversed(order):
            kid_codes[x].sort(key=code_key)
            codes[x] = "(" + "".join(kid_codes[x]) + ")"
            if parent[x] != -1:
                kid_codes[parent[x]].append(codes[x])
                kids[parent[x]].append(x)
        for x in order:
            kids[x].sort(key=lambda w: (code_key(codes[w]), w))
        return codes, kids

    def _bulk_bind(self, comp_root: int, t_root: int, kids: dict[int, list[int]]) -> bool:
        """Bind a pendant component onto an equal-code target subtree.

        Sibling subtrees with equal codes are interchangeable, so pairing the
        i-th child of each sorted list is a valid isomorphism; binding runs in
        target preorder so anchor-order checks fire in traversal order.
        """
        stack = [(comp_root, t_root)]
        while stack:
            gx, tx = stack.pop()
            if not self._bind(tx, gx):
                return False
            pairs = list(zip(kids[gx], self.tt.children[tx]))
            stack.extend(reversed(pairs))
        return True

    # -- node opening --------------------------------------------------------

    def _open(self, rg: int, rt: int) -> _Node | None:
        self.stats.nodes_opened += 1
        comps, rg_edges = self._components_at(rg)
        pendants: list[tuple[int, int]] = []  # (neighbor, comp index)
        avail: list[int] = []
        for cid, comp in enumerate(comps):
            if comp["acyclic"] and comp["attach"] == 0 and len(rg_edges[cid]) == 1:
                pendants.append((rg_edges[cid][0][1], cid))
            else:
                avail.extend(u for _, u in rg_edges[cid])
        pendants.sort()
        avail.sort()

        unmatched = [c for c in self.tt.children[rt] if self.t2g[c] < 0]
        for u, cid in pendants:
            codes, kids = self._comp_codes(comps[cid]["members"], u)
            w = next(
                (c for c in unmatched if self.t2g[c] < 0 and self.tt.code[c] == codes[u]),
                None,
            )
            if w is None:
                self._fail("pendant-unmatched")
                return None
            if not self._bulk_bind(u, w, kids):
                return None
        unmatched = [c for c in self.tt.children[rt] if self.t2g[c] < 0]

        node = _Node(avail=avail)
        x, y = len(avail), len(unmatched)
        if x < y:
            self._fail("fewer-neighbors-than-children")
            return None
        if y == 0:
            for u in avail:
                if not self._drop(self.eid_of[(rg, u)]):
                    return None
            return node
        if self.fallback:
            return node

        # strict mode: plan the child bindings from the anchor order
        fetched: list[tuple[int, int]] = []
        for u in avail:
            fid = self._fetch(rg, u)
            if fid is None:
                self._fail("no-anchor-ahead")
                return None
            fetched.append((fid, u))
        fetched.sort()
        prefix, suffix = fetched[:y], fetched[y:]
        if [fid for fid, _ in prefix] != list(range(self.pos_g + 1, self.pos_g + 1 + y)):
            self._fail("anchor-order")
            return None
        for _, u in suffix:
            if not self._drop(self.eid_of[(rg, u)]):
                return None
        node.planned = prefix
        return node

    def _fetch(self, rg: int, u: int) -> int | None:
        """Permutation position of the first anchor reachable through ``u``."""
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            if x in self.anchors:
                return self.pi_pos[x]
            nxt = []
            for eid, w in self.g.incidence[x]:
                if eid in self.removed or self.g2t[w] >= 0 or w in seen:
                    continue
                seen.add(w)
                nxt.append(w)
            stack.extend(sorted(nxt, reverse=True))
        return None

    # -- main recursion ------------------------------------------------------

    def _solve_pos(self, i: int) -> bool:
        order = self.tt.order
        while i < len(order) and self.t2g[order[i]] >= 0:
            i += 1
        if i == len(order):
            return True
        w = order[i]
        pt = self.tt.parent[w]
        pg = self.t2g[pt]
        node = self.nodes.get(pg)
        if node is None:
            ck = self._checkpoint()
            node = self._open(pg, pt)
            if node is None:
                self._rollback(ck)
                return False
            self.nodes[pg] = node
            self.trail.append(("node", pg))
            if self.t2g[w] >= 0:
                return self._solve_pos(i + 1)

        if not self.fallback:
            if node.next_plan >= len(node.planned):
                return self._fail("plan-exhausted")
            fid, u = node.planned[node.next_plan]
            node.next_plan += 1
            if self.g2t[u] >= 0:
                return self._fail("planned-neighbor-taken")
            if fid != self.pos_g + 1:
                return self._fail("anchor-order")
            self.stats.branches_examined += 1
            eid = self.eid_of[(pg, u)]
            if not self._bind(w, u) or not self._enter(u, eid):
                return False
            return self._solve_pos(i + 1)

        for u in node.avail:
            if u in node.used or self.g2t[u] >= 0:
                continue
            self.stats.branches_examined += 1
            ck = self._checkpoint()
            node.used.add(u)
            eid = self.eid_of[(pg, u)]
            if (
                self._bind(w, u)
                and self._enter(u, eid)
                and self._room_for_children(u, w)
                and self._solve_pos(i + 1)
            ):
                return True
            self._rollback(ck)
            node.used.discard(u)
        return False

    def _room_for_children(self, gv: int, tv: int) -> bool:
        need = len(self.tt.children[tv])
        if need == 0:
            return True
        have = 0
        for eid, w in self.g.incidence[gv]:
            if eid not in self.removed and self.g2t[w] < 0:
                have += 1
                if have >= need:
                    return True
        return False

    # -- attempts ------------------------------------------------------------

    def attempt(self, root_g: int, pi: tuple[int, ...] | None) -> Verdict | None:
        self.stats.attempts += 1
        n = self.g.n
        self.t2g = [-1] * n
        self.g2t = [-1] * n
        self.removed = set()
        self.trail = []
        self.nodes = {}
        self.pos_g = 0
        self.fail_reason = ""
        if pi is not None:
            self.pi_pos = {a: i + 1 for i, a in enumerate(pi)}
        if not self._bind(self.tt.root, root_g):
            return None
        if not self._enter(root_g, -1):
            return None
        if not self._solve_pos(1):
            return None
        assert all(v >= 0 for v in self.t2g)
        assert len(self.removed) == self.k
        mapping = {tv: gv for tv, gv in enumerate(self.t2g)}
        return Verdict("YES", mapping=mapping, removed=frozenset(self.removed))


def _solve_core(
    g: UGraph,
    ttree: UGraph,
    k: int,
    fallback: bool,
    stats: SolveStats,
    trace: TraceFn | None,
) -> Verdict:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * g.n + 1000))
    kernel = make_contractible(g)
    anchors = tuple(sorted(kernel.anchors))
    stats.anchors = len(anchors)
    rootings = [TargetTree(ttree, c) for c in tree_centers(ttree)]
    for tt in rootings:
        engine = _Engine(g, tt, k, anchors, fallback, stats)
        min_children = len(tt.children[tt.root])
        for v in range(g.n):
            if g.degree(v) < min_children:
                continue
            stats.roots_tried += 1
            perms = _anchor_permutations(anchors, v) if not fallback else [None]
            count = 0
            for pi in perms:
                count += 1
                verdict = engine.attempt(v, pi)
                if trace is not None:
                    outcome = "yes" if verdict else f"fail:{engine.fail_reason or 'exhausted'}"
                    pi_str = ",".join(map(str, pi)) if pi else "-"
                    trace(f"troot={tt.root} root={v} pi={pi_str} {outcome}")
                if verdict is not None:
                    stats.permutations_max_per_root = max(
                        stats.permutations_max_per_root, count
                    )
                    return verdict
            stats.permutations_max_per_root = max(stats.permutations_max_per_root, count)
    return Verdict("NO")


def _anchor_permutations(anchors: tuple[int, ...], v: int):
    """Anchor orders hypothesized for a search rooted at ``v``.

    When the root is itself an anchor it is necessarily the first anchor
    reached, so only permutations starting with it are enumerated.
    """
    if v in anchors:
        rest = tuple(a for a in anchors if a != v)
        for p in permutations(rest):
            yield (v,) + p
    else:
        yield from permutations(anchors)
