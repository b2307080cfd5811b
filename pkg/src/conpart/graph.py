"""Vertex-weighted simple graphs and the connectivity primitives built on them.

Vertices are dense ids ``0..n-1``.  Vertex sets are plain ``frozenset``s; their
weight is obtained with :meth:`WeightedGraph.weight_of`.  Every routine here
iterates in increasing id order so that results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    NoEdges,
    NonPositiveWeight,
    NotConnected,
    RootOutsideSubset,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable undirected graph with positive integer vertex weights."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    weight: tuple[int, ...]
    total_weight: int
    _adjset: tuple[frozenset, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if not self._adjset:
            object.__setattr__(self, "_adjset", tuple(frozenset(a) for a in self.adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def weight_of(self, vertices: Iterable[int]) -> int:
        w = self.weight
        return sum(w[v] for v in vertices)

    def w_max(self, vertices: Optional[Iterable[int]] = None) -> int:
        if vertices is None:
            return max(self.weight, default=0)
        w = self.weight
        return max((w[v] for v in vertices), default=0)

    def vertices(self) -> frozenset:
        return frozenset(range(self.n))

    def edges(self) -> list[Edge]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)


def build_graph(n: int, edges: Iterable[Sequence[int]], weights: Sequence[int]) -> WeightedGraph:
    """Validate and build a :class:`WeightedGraph`.

    Raises LoopEdge, DuplicateEdge (including ``(u, v)`` followed by
    ``(v, u)``), NonPositiveWeight and IndexOutOfRange.
    """
    if n < 0:
        raise IndexOutOfRange(f"negative vertex count {n}")
    if len(weights) != n:
        raise IndexOutOfRange(f"expected {n} weights, got {len(weights)}")
    for v, wv in enumerate(weights):
        if int(wv) != wv or wv < 1:
            raise NonPositiveWeight(f"vertex {v} has weight {wv}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise LoopEdge(f"self-loop at {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) given twice")
        nbrs[u].add(v)
        nbrs[v].add(u)
    ws = tuple(int(x) for x in weights)
    return WeightedGraph(n, tuple(tuple(sorted(a)) for a in nbrs), ws, sum(ws))


def _as_set(subset: Optional[Iterable[int]], g: WeightedGraph) -> frozenset:
    if subset is None:
        return g.vertices()
    return subset if isinstance(subset, frozenset) else frozenset(subset)


def connected_components(g: WeightedGraph, subset: Optional[Iterable[int]] = None) -> list[frozenset]:
    """Components of ``G[subset]`` ordered by their smallest member."""
    sub = _as_set(subset, g)
    seen: set[int] = set()
    comps = []
    for s in sorted(sub):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in sub and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: WeightedGraph, subset: Optional[Iterable[int]] = None) -> bool:
    """True iff ``G[subset]`` is connected.  The empty set is not connected."""
    sub = _as_set(subset, g)
    if not sub:
        return False
    start = min(sub)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y in sub and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(sub)


def neighbors_of_set(g: WeightedGraph, subset: Iterable[int]) -> frozenset:
    """``N(S)``: vertices outside ``S`` adjacent to some member of ``S``."""
    sub = _as_set(subset, g)
    out = set()
    for v in sub:
        out.update(g.adj[v])
    return frozenset(out - sub)


def bfs_order(g: WeightedGraph, subset: Iterable[int], start: int) -> list[int]:
    """Breadth-first order of the component of ``G[subset]`` containing ``start``."""
    sub = _as_set(subset, g)
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in g.adj[x]:
            if y in sub and y not in seen:
                seen.add(y)
                order.append(y)
    return order


def articulation_points(g: WeightedGraph, subset: Optional[Iterable[int]] = None) -> frozenset:
    """Cut vertices of ``G[subset]`` (iterative Hopcroft-Tarjan)."""
    sub = _as_set(subset, g)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    t = 0
    for root in sorted(sub):
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        root_children = 0
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y not in sub:
                    continue
                if y not in disc:
                    disc[y] = low[y] = t
                    t += 1
                    if v == root:
                        root_children += 1
                    stack.append((y, v, iter(g.adj[y])))
                    advanced = True
                    break
                if y != parent:
                    low[v] = min(low[v], disc[y])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return frozenset(cut)


def non_cut_vertices(g: WeightedGraph, subset: Iterable[int]) -> list[int]:
    """Members of a connected set (of size >= 2) whose removal keeps it connected."""
    sub = _as_set(subset, g)
    if len(sub) < 2:
        return []
    cuts = articulation_points(g, sub)
    return sorted(sub - cuts)


# -- DFS trees ------------------------------------------------------------------

@dataclass(frozen=True)
class DfsTree:
    """Rooted DFS tree over ``domain``; treat all mappings as read-only."""

    root: int
    parent: dict
    children: dict
    subtree_weight: dict
    domain: frozenset

    @property
    def weight(self) -> int:
        return self.subtree_weight[self.root]


def dfs_tree(g: WeightedGraph, subset: Optional[Iterable[int]], root: int) -> DfsTree:
    sub = _as_set(subset, g)
    if root not in sub:
        raise RootOutsideSubset(f"root {root} not in subset")
    parent: dict[int, Optional[int]] = {root: None}
    children: dict[int, list[int]] = {root: []}
    order = [root]
    stack = [(root, iter(g.adj[root]))]
    while stack:
        v, it = stack[-1]
        for y in it:
            if y in sub and y not in parent:
                parent[y] = v
                children[v].append(y)
                children[y] = []
                order.append(y)
                stack.append((y, iter(g.adj[y])))
                break
        else:
            stack.pop()
    if len(order) != len(sub):
        raise NotConnected("subset does not induce a connected subgraph")
    sw: dict[int, int] = {}
    for v in reversed(order):
        sw[v] = g.weight[v] + sum(sw[c] for c in children[v])
    return DfsTree(root, parent, {v: tuple(c) for v, c in children.items()}, sw, sub)


def validate_dfs_tree(g: WeightedGraph, tree: DfsTree) -> bool:
    """Check every DfsTree invariant, including the DFS (no cross edge) property."""
    dom = tree.domain
    if not dom or tree.root not in dom:
        return False
    if set(tree.parent) != set(dom) or set(tree.children) != set(dom):
        return False
    if tree.parent[tree.root] is not None:
        return False
    for v in dom:
        p = tree.parent[v]
        if v != tree.root:
            if p is None or p not in dom or not g.has_edge(p, v):
                return False
            if v not in tree.children[p]:
                return False
        for c in tree.children[v]:
            if tree.parent.get(c) != v:
                return False
    # pre/post intervals; also proves reachability and acyclicity
    pre: dict[int, int] = {}
    post: dict[int, int] = {}
    t = 0
    stack = [(tree.root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            post[v] = t
            t += 1
            continue
        if v in pre:
            return False
        pre[v] = t
        t += 1
        stack.append((v, True))
        for c in reversed(tree.children[v]):
            stack.append((c, False))
    if len(pre) != len(dom):
        return False

    def related(a: int, b: int) -> bool:
        return (pre[a] <= pre[b] and post[b] <= post[a]) or (pre[b] <= pre[a] and post[a] <= post[b])

    for u in dom:
        for v in g.adj[u]:
            if v in dom and u < v and not related(u, v):
                return False
    for v in dom:
        expected = g.weight[v] + sum(tree.subtree_weight.get(c, 0) for c in tree.children[v])
        if tree.subtree_weight.get(v) != expected:
            return False
    return True


# -- claw detection, connectivity, line graphs ------------------------------------

def is_claw_free(g: WeightedGraph, c: int = 3) -> Optional[tuple[int, tuple[int, ...]]]:
    """Search for an induced ``K_{1,c}``.

    Returns ``None`` if there is none, otherwise ``(center, leaves)``.  The
    search is exhaustive over independent ``c``-subsets of each neighbourhood,
    so it is exponential in ``c``; use it as a validator only.
    """
    if c < 3:
        raise ValueError("c must be at least 3")

    def extend(cands: list[int], chosen: list[int]) -> Optional[list[int]]:
        if len(chosen) == c:
            return chosen
        for idx, x in enumerate(cands):
            if len(chosen) + len(cands) - idx < c:
                return None
            rest = [y for y in cands[idx + 1:] if not g.has_edge(x, y)]
            found = extend(rest, chosen + [x])
            if found:
                return found
        return None

    for v in range(g.n):
        if len(g.adj[v]) < c:
            continue
        leaves = extend(list(g.adj[v]), [])
        if leaves:
            return v, tuple(leaves)
    return None


def _local_vertex_connectivity(g: WeightedGraph, s: int, t: int, cap: int) -> int:
    """Number of internally vertex-disjoint s-t paths, counted up to ``cap``.

    Unit-capacity max-flow on the split graph (v_in = 2v, v_out = 2v+1).
    """
    res: dict[int, dict[int, int]] = {}

    def add(a: int, b: int, c: int) -> None:
        res.setdefault(a, {})
        res.setdefault(b, {})
        res[a][b] = res[a].get(b, 0) + c
        res[b].setdefault(a, 0)

    big = g.n + 1
    for v in range(g.n):
        add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for y in g.adj[v]:
            add(2 * v + 1, 2 * y, 1)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b, c in res[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        b = sink
        while b != source:
            a = prev[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity_at_least(g: WeightedGraph, k: int) -> bool:
    """True iff ``g`` has at least ``k+1`` vertices and no vertex cut smaller than ``k``.

    Menger via max-flow between each of the first ``k`` vertices and every
    non-adjacent vertex (a cut of size < k misses one of those ``k`` vertices).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.n < k + 1:
        return False
    if not is_connected(g):
        return False
    if k == 1:
        return True
    for s in range(k):
        for t in range(g.n):
            if t == s or g.has_edge(s, t):
                continue
            if _local_vertex_connectivity(g, s, t, k) < k:
                return False
    return True


def line_graph(
    g: WeightedGraph, edge_weights: Optional[Mapping[Edge, int]] = None
) -> tuple[WeightedGraph, tuple[Edge, ...]]:
    """Line graph of ``g``; line vertex ``i`` stands for ``g.edges()[i]``.

    ``edge_weights`` maps ``(u, v)`` (either orientation) to a positive
    integer; missing means unit weights.
    """
    edges = g.edges()
    if not edges:
        raise NoEdges("graph has no edges")
    weights = []
    for u, v in edges:
        if edge_weights is None:
            weights.append(1)
        elif (u, v) in edge_weights:
            weights.append(edge_weights[(u, v)])
        else:
            weights.append(edge_weights[(v, u)])
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    line_edges = set()
    for inc in incident:
        for a, b in combinations(inc, 2):
            line_edges.add((min(a, b), max(a, b)))
    return build_graph(len(edges), sorted(line_edges), weights), tuple(edges)


# -- partition checks ---------------------------------------------------------------

def partition_problems(
    g: WeightedGraph, parts: Sequence[Iterable[int]], *, cover: bool = True
) -> list[str]:
    """Describe every way ``parts`` fails to be a connected packing (or a CVP).

    An empty list means the check passed.
    """
    problems = []
    seen: dict[int, int] = {}
    for i, part in enumerate(parts):
        s = frozenset(part)
        if not s:
            problems.append(f"part {i} is empty")
            continue
        for v in s:
            if not 0 <= v < g.n:
                problems.append(f"part {i} has unknown vertex {v}")
            elif v in seen:
                problems.append(f"vertex {v} in parts {seen[v]} and {i}")
            else:
                seen[v] = i
        if not is_connected(g, s & g.vertices()):
            problems.append(f"part {i} is not connected")
    if cover and len(seen) != g.n:
        missing = sorted(set(range(g.n)) - set(seen))
        problems.append(f"vertices not covered: {missing}")
    return problems


def is_cvp(g: WeightedGraph, parts: Sequence[Iterable[int]]) -> bool:
    return not partition_problems(g, parts, cover=True)
