"""Graph data model, text format, and basic traversals.

Vertices are dense non-negative integers in ``[0, n)``.  Edges and arcs get
dense ids assigned in construction order, and those ids are stable for the
lifetime of the graph: every removal set reported by a solver or oracle is a
set of these ids.

Input-facing constructors (and :func:`parse_graph`) accept only simple
graphs.  Kernelization needs parallel edges and self-loops, so
:meth:`UGraph.multigraph` exists for internal callers; a self-loop
contributes 2 to its endpoint's degree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class GraphFormatError(ValueError):
    """Malformed graph text or invalid construction input."""


class UGraph:
    """Immutable undirected graph with stable edge ids."""

    __slots__ = ("n", "edges", "incidence", "is_multigraph")

    def __init__(self, n: int, edges: list[tuple[int, int]], *, _allow_multi: bool = False):
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {eid} endpoint out of range: ({u}, {v})")
            if not _allow_multi:
                if u == v:
                    raise GraphFormatError(f"edge {eid} is a self-loop: ({u}, {v})")
                key = (u, v) if u < v else (v, u)
                if key in seen:
                    raise GraphFormatError(f"edge {eid} duplicates ({u}, {v})")
                seen.add(key)
            inc[u].append((eid, v))
            inc[v].append((eid, u))  # a self-loop lands twice on purpose
        self.n = n
        self.edges = tuple((u, v) for u, v in edges)
        self.incidence = tuple(tuple(pairs) for pairs in inc)
        self.is_multigraph = _allow_multi
        # handshaking: every edge contributes exactly two incidence entries
        assert sum(len(p) for p in self.incidence) == 2 * self.m

    @classmethod
    def multigraph(cls, n: int, edges: list[tuple[int, int]]) -> "UGraph":
        """Kernel-internal constructor permitting parallel edges and loops."""
        return cls(n, edges, _allow_multi=True)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: int) -> list[int]:
        return [w for _, w in self.incidence[v]]

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def other(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        return w if v == u else u

    def is_connected(self, skip_edges: frozenset[int] | set[int] = frozenset()) -> bool:
        """True iff the graph minus ``skip_edges`` is connected (n=0 counts)."""
        if self.n == 0:
            return True
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque([0])
        reached = 1
        while queue:
            x = queue.popleft()
            for eid, w in self.incidence[x]:
                if eid in skip_edges or seen[w]:
                    continue
                seen[w] = 1
                reached += 1
                queue.append(w)
        return reached == self.n

    def relabeled(self, perm: list[int]) -> "UGraph":
        """Image under the vertex bijection ``v -> perm[v]`` (edge order kept)."""
        if sorted(perm) != list(range(self.n)):
            raise GraphFormatError("relabeling is not a permutation")
        return UGraph(
            self.n,
            [(perm[u], perm[v]) for u, v in self.edges],
            _allow_multi=self.is_multigraph,
        )

    def serialize(self) -> str:
        k = self.m - (self.n - 1) if self.n > 0 else 0
        lines = [f"# n={self.n} m={self.m} type=U k={k}", f"{self.n} {self.m} U"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"UGraph(n={self.n}, m={self.m})"


class DiGraph:
    """Immutable directed graph with stable arc ids.

    Duplicate ``(tail, head)`` arcs and self-loop arcs are rejected; the
    antiparallel pair ``(u, v), (v, u)`` is allowed.
    """

    __slots__ = ("n", "arcs", "out_inc", "in_inc")

    def __init__(self, n: int, arcs: list[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        seen: set[tuple[int, int]] = set()
        out_inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        in_inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for aid, (u, v) in enumerate(arcs):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"arc {aid} endpoint out of range: ({u}, {v})")
            if u == v:
                raise GraphFormatError(f"arc {aid} is a self-loop: ({u}, {v})")
            if (u, v) in seen:
                raise GraphFormatError(f"arc {aid} duplicates ({u}, {v})")
            seen.add((u, v))
            out_inc[u].append((aid, v))
            in_inc[v].append((aid, u))
        self.n = n
        self.arcs = tuple((u, v) for u, v in arcs)
        self.out_inc = tuple(tuple(pairs) for pairs in out_inc)
        self.in_inc = tuple(tuple(pairs) for pairs in in_inc)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def in_degree(self, v: int) -> int:
        return len(self.in_inc[v])

    def out_degree(self, v: int) -> int:
        return len(self.out_inc[v])

    def underlying(self) -> UGraph:
        """Undirected multigraph with one edge per arc; edge id == arc id."""
        return UGraph.multigraph(self.n, list(self.arcs))

    def relabeled(self, perm: list[int]) -> "DiGraph":
        if sorted(perm) != list(range(self.n)):
            raise GraphFormatError("relabeling is not a permutation")
        return DiGraph(self.n, [(perm[u], perm[v]) for u, v in self.arcs])

    def serialize(self) -> str:
        k = self.m - (self.n - 1) if self.n > 0 else 0
        lines = [f"# n={self.n} m={self.m} type=D k={k}", f"{self.n} {self.m} D"]
        lines.extend(f"{u} {v}" for u, v in self.arcs)
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DiGraph)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Verdict:
    """Solver or oracle answer, with certificate data on YES.

    ``mapping`` sends target-tree vertices to graph vertices; ``removed`` is
    the set of edge (arc) ids dropped to expose the witness spanning tree.
    """

    answer: str  # "YES" | "NO"
    mapping: dict[int, int] | None = None
    removed: frozenset[int] | None = None
    note: str | None = None

    @property
    def is_yes(self) -> bool:
        return self.answer == "YES"


def parse_graph(text: str) -> UGraph | DiGraph:
    """Parse the toolkit's text format.

    Header ``n m U`` or ``n m D``, then exactly ``m`` lines ``u v`` with
    0-based ids.  ``#`` starts a comment.  Inputs must be simple (the directed
    format additionally allows the antiparallel pair).
    """
    rows: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphFormatError("empty input")
    header = rows[0]
    if len(header) != 3 or header[2] not in ("U", "D"):
        raise GraphFormatError(f"malformed header: {' '.join(header)!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"malformed header: {' '.join(header)!r}") from exc
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header")
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header says m={m} but found {len(body)} edge lines")
    pairs: list[tuple[int, int]] = []
    for i, row in enumerate(body):
        if len(row) != 2:
            raise GraphFormatError(f"malformed edge line {i}: {' '.join(row)!r}")
        try:
            u, v = int(row[0]), int(row[1])
        except ValueError as exc:
            raise GraphFormatError(f"malformed edge line {i}: {' '.join(row)!r}") from exc
        pairs.append((u, v))
    if header[2] == "U":
        return UGraph(n, pairs)
    return DiGraph(n, pairs)


def redundant_size(g: UGraph) -> int:
    """Size of the redundant set, ``m - (n - 1)``; requires a connected graph."""
    if not g.is_connected():
        raise ValueError("redundant set size is undefined for a disconnected graph")
    return g.m - (g.n - 1)


def reachable_all(d: DiGraph, r: int) -> bool:
    """True iff every vertex of ``d`` is reachable from ``r`` by directed paths."""
    seen = bytearray(d.n)
    seen[r] = 1
    queue = deque([r])
    reached = 1
    while queue:
        x = queue.popleft()
        for _, w in d.out_inc[x]:
            if not seen[w]:
                seen[w] = 1
                reached += 1
                queue.append(w)
    return reached == d.n


def classify_neighbors(g: UGraph, v: int) -> tuple[set[int], set[int]]:
    """Partition ``N(v)`` into tree-like and non-tree-like neighbors.

    A neighbor ``u`` is tree-like when its component in ``g - {v}`` is a tree
    whose only vertex adjacent to ``v`` is ``u`` itself.
    """
    comp_of = [-1] * g.n
    comps: list[tuple[int, int]] = []  # (vertex count, edge count)
    comp_nbrs: list[list[int]] = []
    nbrs = set(g.neighbors(v))
    for start in range(g.n):
        if start == v or comp_of[start] != -1:
            continue
        cid = len(comps)
        stack = [start]
        comp_of[start] = cid
        nv, half_edges = 0, 0
        members_in_nbrs: list[int] = []
        while stack:
            x = stack.pop()
            nv += 1
            if x in nbrs:
                members_in_nbrs.append(x)
            for _, w in g.incidence[x]:
                if w == v:
                    continue
                half_edges += 1
                if comp_of[w] == -1:
                    comp_of[w] = cid
                    stack.append(w)
        comps.append((nv, half_edges // 2))
        comp_nbrs.append(members_in_nbrs)
    tree_like: set[int] = set()
    non_tree_like: set[int] = set()
    for u in nbrs:
        cid = comp_of[u]
        nv, ne = comps[cid]
        if ne == nv - 1 and comp_nbrs[cid] == [u]:
            tree_like.add(u)
        else:
            non_tree_like.add(u)
    return tree_like, non_tree_like
