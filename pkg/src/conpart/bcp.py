"""Balanced connected partitions of c-claw-free graphs.

In a DFS tree of a graph without an induced ``K_{1,c}`` every vertex has at
most ``c-1`` children.  That bound lets us repeatedly cut a connected set of
weight in ``[lam, (c-1)*lam)`` off the tree while keeping both the rest of the
graph connected and the rest of the tree a valid DFS tree.  The min-max and
max-min approximations and the edge-partition variant are thin layers on top
of that extraction.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Optional, Sequence

from .errors import (
    CannotReachK,
    ClawWitnessFound,
    InternalInvariantViolation,
    NotConnected,
    PreconditionViolated,
    TooFewEdges,
    TooFewVertices,
    XOutOfRange,
)
from .graph import (
    DfsTree,
    Edge,
    WeightedGraph,
    connected_components,
    dfs_tree,
    is_claw_free,
    is_connected,
    line_graph,
    neighbors_of_set,
    non_cut_vertices,
)

Mode = Literal["min-max", "max-min"]


@dataclass(frozen=True)
class BcpSolution:
    parts: tuple[frozenset, ...]
    objective: int
    mode: str
    certificate: int  # lambda for min-max, the accepted search value X for max-min


@dataclass(frozen=True)
class BcepSolution:
    parts: tuple[tuple[Edge, ...], ...]
    objective: int
    mode: str
    certificate: int
    line_solution: BcpSolution


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class _WorkTree:
    """Mutable DFS tree used while carving sets off one after another."""

    def __init__(self, g: WeightedGraph, tree: DfsTree):
        self.g = g
        self.root: Optional[int] = tree.root
        self.parent = dict(tree.parent)
        self.children = {v: list(c) for v, c in tree.children.items()}
        self.sw = dict(tree.subtree_weight)

    @property
    def weight(self) -> int:
        return 0 if self.root is None else self.sw[self.root]

    def _collect(self, tops: Iterable[int]) -> list[int]:
        out = []
        stack = list(tops)
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out

    def _drop(self, vertices: list[int]) -> None:
        for x in vertices:
            del self.parent[x]
            del self.children[x]
            del self.sw[x]

    def _charge_ancestors(self, start: Optional[int], amount: int) -> None:
        x = start
        while x is not None:
            self.sw[x] -= amount
            x = self.parent[x]

    def extract(self, lam: int, c: int) -> frozenset:
        """Remove and return a connected set S with lam <= w(S) < (c-1)*lam."""
        g = self.g
        v = self.root
        assert v is not None and self.sw[v] >= lam
        # deepest vertex whose subtree reaches lam while all child subtrees stay below
        while True:
            for ch in self.children[v]:
                if self.sw[ch] >= lam:
                    v = ch
                    break
            else:
                break

        if self.sw[v] < (c - 1) * lam:
            members = self._collect([v])
            p = self.parent[v]
            if p is None:
                self.root = None
            else:
                self.children[p].remove(v)
                self._charge_ancestors(p, self.sw[v])
            self._drop(members)
            return frozenset(members)

        kids = self.children[v]
        if len(kids) >= c:
            # children of a DFS vertex are pairwise non-adjacent
            raise ClawWitnessFound(v, tuple(kids[:c]))
        if len(kids) < c - 1:
            raise PreconditionViolated("a vertex outweighs lambda")
        u = self.parent[v]
        if u is None:
            keep = kids[-1]
            members = [v] + self._collect(kids[:-1])
            self._drop(members)
            self.parent[keep] = None
            self.root = keep
            return frozenset(members)

        j = next((x for x in kids if g.has_edge(u, x)), None)
        if j is None:
            raise ClawWitnessFound(v, (u, *kids))
        members = [v] + self._collect([x for x in kids if x != j])
        weight = self.sw[v] - self.sw[j]
        siblings = self.children[u]
        siblings[siblings.index(v)] = j
        self.parent[j] = u
        self._charge_ancestors(u, weight)
        self._drop(members)
        return frozenset(members)

    def freeze(self) -> Optional[DfsTree]:
        if self.root is None:
            return None
        return DfsTree(
            self.root,
            dict(self.parent),
            {v: tuple(c) for v, c in self.children.items()},
            dict(self.sw),
            frozenset(self.parent),
        )


def _check_lambda(g: WeightedGraph, domain: Iterable[int], lam: int, c: int) -> None:
    if c < 3:
        raise PreconditionViolated("c must be at least 3")
    if lam < 1:
        raise PreconditionViolated("lambda must be positive")
    if g.w_max(domain) > lam:
        raise PreconditionViolated("lambda < w_max of the domain")


def extract_bounded_set(g: WeightedGraph, tree: DfsTree, lam: int, c: int = 3) -> tuple[frozenset, Optional[DfsTree]]:
    """Cut a connected set ``S`` with ``lam <= w(S) < (c-1)*lam`` off a DFS tree.

    Returns ``S`` and a DFS tree of the remaining domain (``None`` when
    nothing remains).  Raises ClawWitnessFound when the tree exposes an induced
    ``K_{1,c}``.
    """
    _check_lambda(g, tree.domain, lam, c)
    if tree.weight < lam:
        raise PreconditionViolated("tree weighs less than lambda")
    work = _WorkTree(g, tree)
    s = work.extract(lam, c)
    return s, work.freeze()


def balanced_partition(g: WeightedGraph, subset: Optional[Iterable[int]], lam: int, c: int = 3) -> list[frozenset]:
    """Split a connected set into ``S_1..S_m`` with ``w(S_i)`` in ``[lam, (c-1)lam)``.

    Only the last part may fall below ``lam``.  Removing any prefix
    ``S_1..S_j`` leaves a connected set.
    """
    domain = g.vertices() if subset is None else frozenset(subset)
    if not domain:
        raise PreconditionViolated("empty subset")
    _check_lambda(g, domain, lam, c)
    work = _WorkTree(g, dfs_tree(g, domain, min(domain)))
    parts = []
    while work.weight >= (c - 1) * lam:
        parts.append(work.extract(lam, c))
    parts.append(frozenset(work.parent))
    return parts


def adjust_part_count(g: WeightedGraph, parts: Sequence[Iterable[int]], k: int) -> list[frozenset]:
    """Merge or split a connected vertex partition until it has exactly ``k`` parts.

    Merging always joins the lightest part with its lightest neighbouring part.
    Splitting detaches the heaviest non-cut vertex of the heaviest part that
    has at least two vertices, so the maximum part weight never grows.
    """
    parts = [frozenset(p) for p in parts]
    if len(parts) > k:
        parts = _merge_down(g, parts, k)
    while len(parts) < k:
        splittable = [i for i, p in enumerate(parts) if len(p) >= 2]
        if not splittable:
            raise CannotReachK(f"cannot split {len(parts)} singleton parts into {k}")
        i = max(splittable, key=lambda t: (g.weight_of(parts[t]), -t))
        cands = non_cut_vertices(g, parts[i])
        v = max(cands, key=lambda x: (g.weight[x], -x))
        parts[i] = parts[i] - {v}
        parts.append(frozenset([v]))
    return parts


def _merge_down(g: WeightedGraph, parts: list[frozenset], k: int) -> list[frozenset]:
    owner = {}
    for i, p in enumerate(parts):
        for v in p:
            owner[v] = i
    members = {i: set(p) for i, p in enumerate(parts)}
    weight = {i: g.weight_of(p) for i, p in enumerate(parts)}
    nbr: dict[int, set[int]] = {i: set() for i in members}
    for v, i in owner.items():
        for y in g.adj[v]:
            j = owner.get(y)
            if j is not None and j != i:
                nbr[i].add(j)
    heap = [(weight[i], i) for i in members]
    heapq.heapify(heap)
    while len(members) > k:
        w, p = heapq.heappop(heap)
        if p not in members or weight[p] != w:
            continue
        if not nbr[p]:
            raise CannotReachK("parts are not connected to each other")
        q = min(nbr[p], key=lambda t: (weight[t], t))
        keep, gone = min(p, q), max(p, q)
        members[keep] |= members.pop(gone)
        weight[keep] += weight.pop(gone)
        for x in nbr.pop(gone):
            nbr[x].discard(gone)
            if x != keep:
                nbr[x].add(keep)
                nbr[keep].add(x)
        nbr[keep].discard(keep)
        heapq.heappush(heap, (weight[keep], keep))
    return [frozenset(members[i]) for i in sorted(members)]


def _check_instance(g: WeightedGraph, k: int, c: int, verify_claw_free: bool) -> None:
    if k < 1:
        raise PreconditionViolated("k must be at least 1")
    if c < 3:
        raise PreconditionViolated("c must be at least 3")
    if g.n < k:
        raise TooFewVertices(f"{g.n} vertices cannot form {k} parts")
    if not is_connected(g):
        raise NotConnected("input graph is not connected")
    if verify_claw_free:
        witness = is_claw_free(g, c)
        if witness is not None:
            raise ClawWitnessFound(*witness)


def min_max_bcp(g: WeightedGraph, k: int, c: int = 3, *, verify_claw_free: bool = False) -> BcpSolution:
    """``(c-1)``-approximation for Min-Max BCP on a ``K_{1,c}``-free graph."""
    _check_instance(g, k, c, verify_claw_free)
    lam = max(g.w_max(), _ceil_div(g.total_weight, k))
    parts = balanced_partition(g, None, lam, c)
    if len(parts) > k:
        raise InternalInvariantViolation(f"BalancedPartition produced {len(parts)} > k parts")
    parts = adjust_part_count(g, parts, k)
    objective = max(g.weight_of(p) for p in parts)
    return BcpSolution(tuple(parts), objective, "min-max", lam)


def max_min_feasible(g: WeightedGraph, k: int, c: int, x: int) -> Optional[list[frozenset]]:
    """Try to build ``k`` connected parts of weight at least ``x // (c-1)`` each.

    ``None`` certifies that ``x`` exceeds the max-min optimum.
    """
    cap = _ceil_div(g.total_weight, k)
    if not 1 <= x <= cap:
        raise XOutOfRange(f"X={x} outside [1, {cap}]")
    lam = x // (c - 1)
    heavy = [v for v in range(g.n) if g.weight[v] > lam]
    heavy_set = frozenset(heavy)
    rest = g.vertices() - heavy_set
    light: list[frozenset] = []
    regions: list[frozenset] = []
    for comp in connected_components(g, rest):
        (light if g.weight_of(comp) < lam else regions).append(comp)

    anchored = {h: {h} for h in heavy}
    for q in light:
        h = min(neighbors_of_set(g, q) & heavy_set)
        anchored[h] |= q
    parts = [frozenset(anchored[h]) for h in heavy]
    for region in regions:
        sub = balanced_partition(g, region, lam, c)
        if len(sub) >= 2 and g.weight_of(sub[-1]) < lam:
            sub[-2:] = [sub[-2] | sub[-1]]
        parts.extend(sub)
    if len(parts) < k:
        return None
    return adjust_part_count(g, parts, k)


def max_min_bcp(g: WeightedGraph, k: int, c: int = 3, *, verify_claw_free: bool = False) -> BcpSolution:
    """``(c-1)``-approximation for Max-Min BCP via doubling plus binary search."""
    _check_instance(g, k, c, verify_claw_free)
    cap = _ceil_div(g.total_weight, k)
    found: dict[int, Optional[list[frozenset]]] = {}

    def feasible(x: int) -> bool:
        if x not in found:
            found[x] = max_min_feasible(g, k, c, x)
        return found[x] is not None

    if not feasible(1):
        raise InternalInvariantViolation("X=1 rejected on a connected graph with n >= k")
    lo, hi = 1, cap
    while 2 * lo <= cap:
        if feasible(2 * lo):
            lo *= 2
        else:
            hi = 2 * lo - 1
            break
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid - 1
    parts = found[lo]
    assert parts is not None
    objective = min(g.weight_of(p) for p in parts)
    return BcpSolution(tuple(parts), objective, "max-min", lo)


def bcep(
    g: WeightedGraph,
    k: int,
    mode: Mode = "min-max",
    edge_weights: Optional[Mapping[Edge, int]] = None,
) -> BcepSolution:
    """2-approximate balanced connected edge partition, solved on the line graph."""
    if g.num_edges < k:
        raise TooFewEdges(f"{g.num_edges} edges cannot form {k} parts")
    touched = frozenset(v for v in range(g.n) if g.adj[v])
    if len(touched) != g.n or not is_connected(g):
        raise NotConnected("input graph is not connected")
    lg, edge_of = line_graph(g, edge_weights)
    if mode == "min-max":
        sol = min_max_bcp(lg, k, 3)
    elif mode == "max-min":
        sol = max_min_bcp(lg, k, 3)
    else:
        raise PreconditionViolated(f"unknown mode {mode!r}")
    parts = tuple(tuple(sorted(edge_of[i] for i in p)) for p in sol.parts)
    return BcepSolution(parts, sol.objective, mode, sol.certificate, sol)
