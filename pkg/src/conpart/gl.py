"""Approximate Gyori-Lovasz partitions of k-connected graphs.

Given targets ``w_1 >= ... >= w_k`` summing to ``w(G)`` with every target at
least the heaviest vertex, the routines here build connected k-partitions
whose parts approximately meet their targets:

* :func:`bounded_gl` grows a packing with ``alpha*w_i <= w(T_i) <= 3*alpha*w_i``;
* :func:`gl_one_side` turns it into a partition with either the lower bound
  ``w_i/3`` (``alpha = 1/3``) or the upper bound ``3*w_i`` (``alpha = 1``);
* :func:`double_bounded_gl` starts from the lower-bounded packing and routes
  unassigned vertices along paths of a transfer graph until everything is
  assigned, keeping ``w_i/3 <= w(T_i) <= max(r, 3)*w_i``;
* :func:`balanced_kconnected` is the equal-target special case.

Targets may be passed in any order; results are aligned with the caller's
order.  Weight bounds are compared exactly with :class:`fractions.Fraction`.
k-connectivity of the input is trusted unless ``verify_k_connected=True``.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence, Union

from .divide import Split, divide_or_separator, find_separator, try_divide_with_separator
from .errors import (
    InnerLoopCapExceeded,
    InternalInvariantViolation,
    LoopCapExceeded,
    NoBigComponent,
    NoPath,
    NotKConnected,
    PreconditionViolated,
)
from .graph import (
    WeightedGraph,
    bfs_order,
    connected_components,
    is_connected,
    neighbors_of_set,
    non_cut_vertices,
    partition_problems,
    vertex_connectivity_at_least,
)

ONE_THIRD = Fraction(1, 3)


def debug_asserts_enabled(flag: Optional[bool] = None) -> bool:
    if flag is not None:
        return flag
    return os.environ.get("PARTITION_DEBUG_ASSERTS", "") not in ("", "0")


@dataclass(frozen=True)
class TargetWeights:
    """Targets in descending order plus the permutation back to caller order."""

    targets: tuple[int, ...]
    order: tuple[int, ...]  # order[p] = caller index of the p-th largest target

    @classmethod
    def from_sequence(cls, targets: Sequence[int]) -> "TargetWeights":
        if not targets:
            raise PreconditionViolated("need at least one target")
        if any(int(t) != t or t < 1 for t in targets):
            raise PreconditionViolated("targets must be positive integers")
        order = tuple(sorted(range(len(targets)), key=lambda i: (-targets[i], i)))
        return cls(tuple(int(targets[i]) for i in order), order)

    @property
    def k(self) -> int:
        return len(self.targets)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.targets[0], self.targets[-1])

    def to_caller(self, by_position: Sequence) -> list:
        out = [None] * self.k
        for p, i in enumerate(self.order):
            out[i] = by_position[p]
        return out


# -- categories of packed sets ------------------------------------------------------

@dataclass(frozen=True)
class NoSeparator:
    pass


@dataclass
class HasSeparator:
    s: int
    comps: list


Category = Union[None, NoSeparator, HasSeparator]


@dataclass
class GlStats:
    inner_iterations_max: int = 0
    inner_cap: int = 0
    divide_calls: int = 0
    component_removals: int = 0
    transfer_iterations: int = 0
    transfer_cap: int = 0
    progress: list = field(default_factory=list)
    branches: dict = field(default_factory=dict)


@dataclass
class GlPacking:
    """Outcome of BoundedGL, aligned with the caller's target order.

    ``sets[i]`` is ``None`` for targets that received no set.
    """

    sets: list
    categories: list
    fixed_singletons: dict
    stats: GlStats

    @property
    def ell(self) -> int:
        return sum(s is not None for s in self.sets)


@dataclass(frozen=True)
class GlResult:
    parts: tuple[frozenset, ...]
    targets: tuple[int, ...]
    stats: GlStats


def _check_gl_instance(g: WeightedGraph, tw: TargetWeights, verify_k_connected: bool) -> None:
    if sum(tw.targets) != g.total_weight:
        raise PreconditionViolated(
            f"sum of targets {sum(tw.targets)} != w(G) {g.total_weight}")
    if tw.targets[-1] < g.w_max():
        raise PreconditionViolated(f"min target {tw.targets[-1]} < w_max {g.w_max()}")
    if not is_connected(g):
        raise NotKConnected("graph is not connected")
    if verify_k_connected and not vertex_connectivity_at_least(g, tw.k):
        raise NotKConnected(f"graph is not {tw.k}-connected")


# -- preprocessing --------------------------------------------------------------------

def preprocess_heavy(g: WeightedGraph, targets: Sequence[int], alpha: Fraction):
    """Peel heavy vertices into singleton sets until ``w_max < alpha * w_k``.

    ``targets`` must be in descending order.  Returns ``(work, remaining,
    fixed)``: the residual vertex set, the positions of targets still to be
    served (ascending, so still descending by weight) and a mapping from
    served position to its singleton vertex.
    """
    if any(targets[i] < targets[i + 1] for i in range(len(targets) - 1)):
        raise PreconditionViolated("targets must be in descending order")
    if targets and targets[-1] < g.w_max():
        raise PreconditionViolated("min target < w_max")
    if sum(targets) > g.total_weight:
        raise PreconditionViolated("sum of targets exceeds w(G)")
    work = set(range(g.n))
    remaining = list(range(len(targets)))
    fixed: dict[int, int] = {}
    while remaining and work:
        wmax = max(g.weight[v] for v in work)
        pos = next((p for p in remaining if wmax >= alpha * targets[p]), None)
        if pos is None:
            break
        v = min(x for x in work if g.weight[x] == wmax)
        work.discard(v)
        remaining.remove(pos)
        fixed[pos] = v
    return frozenset(work), remaining, fixed


def carve_T_i(g: WeightedGraph, free: Sequence[int] | frozenset, w_i: int, alpha: Fraction) -> frozenset:
    """Grow a connected set of weight in ``[alpha*w_i, 3*alpha*w_i]`` inside ``free``.

    Breadth-first accretion from the smallest vertex of the first ``i``-big
    component; stops as soon as the weight reaches ``alpha*w_i``.
    """
    lam = math.ceil(alpha * w_i)
    big = [c for c in connected_components(g, free) if g.weight_of(c) >= lam]
    if not big:
        raise NoBigComponent(f"no component of weight >= {alpha * w_i}")
    comp = big[0]
    taken = []
    weight = 0
    for v in bfs_order(g, comp, min(comp)):
        if weight >= lam:
            break
        taken.append(v)
        weight += g.weight[v]
    if weight > 3 * alpha * w_i:
        raise PreconditionViolated("a vertex is too heavy for the carve window")
    return frozenset(taken)


# -- BoundedGL --------------------------------------------------------------------------

class _BoundedGL:
    """Main/inner loop state for one BoundedGL run on the preprocessed instance."""

    def __init__(self, g: WeightedGraph, work: frozenset, targets: list[int],
                 alpha: Fraction, stats: GlStats, debug: bool):
        self.g = g
        self.work = work
        self.targets = targets
        self.alpha = alpha
        self.stats = stats
        self.debug = debug
        self.lam = [math.ceil(alpha * w) for w in targets]
        self.upper = [math.floor(3 * alpha * w) for w in targets]
        self.heavy_at = [math.ceil(2 * alpha * w) for w in targets]
        self.sets: list[set] = []
        self.cats: list[Category] = []
        self.owner: dict[int, int] = {}
        self.free = set(work)

    def weight(self, j: int) -> int:
        return self.g.weight_of(self.sets[j])

    def category(self, j: int) -> Category:
        if self.cats[j] is None and self.weight(j) >= self.heavy_at[j]:
            s = find_separator(self.g, self.sets[j], self.lam[j])
            if s is None:
                self.cats[j] = NoSeparator()
            else:
                comps = connected_components(self.g, frozenset(self.sets[j]) - {s})
                self.cats[j] = HasSeparator(s, comps)
        return self.cats[j]

    def _assign(self, j: int, vertices) -> None:
        for v in vertices:
            self.owner[v] = j

    def _release(self, vertices) -> None:
        for v in vertices:
            self.owner.pop(v, None)
        self.free.update(vertices)

    def run(self) -> list[frozenset]:
        g, k = self.g, len(self.targets)
        cap = len(self.work) ** 2
        self.stats.inner_cap = max(self.stats.inner_cap, cap)
        while self.free and len(self.sets) < k:
            i = len(self.sets)
            t = carve_T_i(g, frozenset(self.free), self.targets[i], self.alpha)
            self.sets.append(set(t))
            self.cats.append(None)
            self._assign(i, t)
            self.free -= t
            if self.debug:
                self.check()
            if len(self.sets) == k:
                break
            i += 1
            iterations = 0
            while self.free:
                comps = connected_components(g, self.free)
                if any(g.weight_of(c) >= self.lam[i] for c in comps):
                    break
                iterations += 1
                if iterations > cap:
                    raise InnerLoopCapExceeded(f"inner loop exceeded |V|^2 = {cap}")
                self._absorb(comps[0])
                if self.debug:
                    self.check()
            self.stats.inner_iterations_max = max(self.stats.inner_iterations_max, iterations)
        return [frozenset(s) for s in self.sets]

    def _absorb(self, q: frozenset) -> None:
        g = self.g
        nq = neighbors_of_set(g, q) & self.work
        adjacent = sorted({self.owner[y] for y in nq})
        first = second = None
        for j in adjacent:
            cat = self.category(j)
            if first is None and (cat is None or isinstance(cat, NoSeparator)):
                first = j
            if second is None and isinstance(cat, HasSeparator):
                if any(not nq.isdisjoint(c) for c in cat.comps):
                    second = j
        j = first if first is not None else second
        if j is None:
            raise NotKConnected("an i-small component touches only separator vertices; "
                                "the graph is not k-connected")
        wq = g.weight_of(q)
        if self.weight(j) + wq <= self.upper[j]:
            self.sets[j] |= q
            self._assign(j, q)
            self.free -= q
            self.cats[j] = None
            return
        cat = self.cats[j]
        tq = frozenset(self.sets[j]) | q
        if isinstance(cat, NoSeparator):
            self.stats.divide_calls += 1
            res = divide_or_separator(g, tq, self.lam[j])
            if not isinstance(res, Split):
                raise InternalInvariantViolation("set without separator did not divide")
            self._replace(j, res.second, res.first, q)
            return
        assert isinstance(cat, HasSeparator)
        res = try_divide_with_separator(g, self.sets[j], cat.s, cat.comps, q, self.lam[j])
        if res is not None:
            self.stats.divide_calls += 1
            self._replace(j, res.second, res.first, q)
            return
        qprime = min((c for c in cat.comps if not nq.isdisjoint(c)), key=min)
        self.stats.component_removals += 1
        self.sets[j] -= qprime
        self._release(qprime)
        cat.comps = [c for c in cat.comps if c != qprime]
        if not self.weight(j) >= 2 * self.alpha * self.targets[j]:
            raise InternalInvariantViolation("component removal left T_j below 2*alpha*w_j")

    def _replace(self, j: int, keep: frozenset, released: frozenset, q: frozenset) -> None:
        self.free -= q
        old = self.sets[j]
        self.sets[j] = set(keep)
        for v in old - keep:
            self.owner.pop(v, None)
        self._assign(j, keep)
        self._release(released - q)
        self.free |= released
        self.cats[j] = None
        w = self.weight(j)
        if not self.lam[j] <= w <= self.upper[j]:
            raise InternalInvariantViolation("divide routine left T_j outside its window")

    def check(self) -> None:
        g = self.g
        probs = partition_problems(g, self.sets, cover=False)
        if probs:
            raise InternalInvariantViolation("; ".join(probs))
        assigned = set().union(*self.sets) if self.sets else set()
        if assigned & self.free or (assigned | self.free) != set(self.work):
            raise InternalInvariantViolation("free/assigned bookkeeping out of sync")
        for j, s in enumerate(self.sets):
            w = g.weight_of(s)
            if not self.alpha * self.targets[j] <= w <= 3 * self.alpha * self.targets[j]:
                raise InternalInvariantViolation(f"T_{j} weight {w} outside its window")
            cat = self.cats[j]
            if isinstance(cat, HasSeparator):
                actual = connected_components(g, frozenset(s) - {cat.s})
                if sorted(actual, key=min) != sorted(cat.comps, key=min):
                    raise InternalInvariantViolation(f"stale separator cache for T_{j}")


def bounded_gl(
    g: WeightedGraph,
    targets: Sequence[int],
    alpha: Fraction = ONE_THIRD,
    *,
    debug: Optional[bool] = None,
    verify_k_connected: bool = False,
) -> GlPacking:
    """Connected packing with ``alpha*w_i <= w(T_i) <= 3*alpha*w_i`` (``alpha`` in {1/3, 1}).

    If fewer than ``k`` sets are produced they cover every vertex.
    """
    alpha = Fraction(alpha)
    if alpha not in (ONE_THIRD, Fraction(1)):
        raise PreconditionViolated("alpha must be 1/3 or 1")
    tw = TargetWeights.from_sequence(targets)
    _check_gl_instance(g, tw, verify_k_connected)
    work, remaining, fixed = preprocess_heavy(g, tw.targets, alpha)
    stats = GlStats()
    runner = _BoundedGL(g, work, [tw.targets[p] for p in remaining], alpha, stats,
                        debug_asserts_enabled(debug))
    built = runner.run() if remaining else []
    by_pos: list = [None] * tw.k
    cats: list = [None] * tw.k
    for p, v in fixed.items():
        by_pos[p] = frozenset([v])
    for idx, s in enumerate(built):
        by_pos[remaining[idx]] = s
        cats[remaining[idx]] = runner.cats[idx]
    fixed_caller = {tw.order[p]: v for p, v in fixed.items()}
    return GlPacking(tw.to_caller(by_pos), tw.to_caller(cats), fixed_caller, stats)


def _split_off_singletons(g: WeightedGraph, sets: list, targets: Sequence[int]) -> list:
    """Fill empty slots with non-cut vertices taken from sets of size >= 2."""
    sets = list(sets)
    for idx in [i for i, s in enumerate(sets) if s is None]:
        donors = [i for i, s in enumerate(sets) if s is not None and len(s) >= 2]
        if not donors:
            raise InternalInvariantViolation("no set with two vertices left to split")
        d = max(donors, key=lambda i: (Fraction(g.weight_of(sets[i]), targets[i]), -i))
        v = max(non_cut_vertices(g, sets[d]), key=lambda x: (g.weight[x], -x))
        sets[d] = sets[d] - {v}
        sets[idx] = frozenset([v])
    return sets


def gl_one_side(
    g: WeightedGraph,
    targets: Sequence[int],
    side: Literal["lower", "upper"],
    *,
    debug: Optional[bool] = None,
    verify_k_connected: bool = False,
) -> GlResult:
    """Connected k-partition with ``w(T_i) >= w_i/3`` (lower) or ``w(T_i) <= 3*w_i`` (upper)."""
    if side not in ("lower", "upper"):
        raise PreconditionViolated(f"unknown side {side!r}")
    alpha = ONE_THIRD if side == "lower" else Fraction(1)
    packing = bounded_gl(g, targets, alpha, debug=debug, verify_k_connected=verify_k_connected)
    sets = list(packing.sets)
    if side == "lower":
        if packing.ell != len(targets):
            raise InternalInvariantViolation("lower-bounded packing has fewer than k sets")
        assigned = frozenset().union(*sets)
        for comp in connected_components(g, g.vertices() - assigned):
            nb = neighbors_of_set(g, comp)
            touching = [i for i, s in enumerate(sets) if not nb.isdisjoint(s)]
            i = min(touching, key=lambda t: (Fraction(g.weight_of(sets[t]), targets[t]), t))
            sets[i] = sets[i] | comp
    else:
        covered = sum(len(s) for s in sets if s is not None)
        if covered != g.n:
            raise InternalInvariantViolation("upper-bounded packing does not cover V")
        sets = _split_off_singletons(g, sets, targets)
    result = GlResult(tuple(sets), tuple(targets), packing.stats)
    problems = partition_problems(g, result.parts)
    for i, s in enumerate(result.parts):
        w = g.weight_of(s)
        if side == "lower" and 3 * w < targets[i]:
            problems.append(f"T_{i} weight {w} below w_i/3")
        if side == "upper" and w > 3 * targets[i]:
            problems.append(f"T_{i} weight {w} above 3*w_i")
    if problems:
        raise InternalInvariantViolation("; ".join(problems))
    return result


# -- both-side bounds: transfer graph and TransferVertices ----------------------------

@dataclass
class BothSidePacking:
    """Pack-satisfied state of DoubleBoundedGL, indexed by descending target position."""

    g: WeightedGraph
    targets: tuple[int, ...]
    sets: list
    upper: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.upper:
            mr = max(Fraction(self.targets[0], self.targets[-1]), Fraction(3))
            self.upper = tuple(math.floor(mr * t) for t in self.targets)

    @property
    def k(self) -> int:
        return len(self.targets)

    def weight(self, j: int) -> int:
        return self.g.weight_of(self.sets[j])

    def satisfied(self, j: int) -> bool:
        return self.weight(j) >= self.targets[j]

    def relabeled(self) -> list[int]:
        """Positions by descending target; among equal targets satisfied sets first."""
        return sorted(range(self.k), key=lambda j: (-self.targets[j], not self.satisfied(j), j))

    def tstar(self) -> list[int]:
        out = []
        for j in self.relabeled():
            if not self.satisfied(j):
                break
            out.append(j)
        return out

    def u(self) -> int:
        """Position of the largest unsatisfied target (first unsatisfied after relabeling)."""
        for j in self.relabeled():
            if not self.satisfied(j):
                return j
        raise InternalInvariantViolation("every set meets its target but vertices remain")

    def assigned(self) -> frozenset:
        return frozenset().union(*self.sets)

    def measure(self) -> tuple[int, int]:
        return len(self.tstar()), len(self.assigned())

    def problems(self) -> list[str]:
        probs = partition_problems(self.g, self.sets, cover=False)
        if len(self.sets) != self.k:
            probs.append("wrong number of sets")
        for j in range(self.k):
            w = self.weight(j)
            if 3 * w < self.targets[j] or w > self.upper[j]:
                probs.append(f"T_{j} weight {w} outside [w/3, {self.upper[j]}]")
        return probs


@dataclass(frozen=True)
class TransferNode:
    kind: str  # "tb-component" | "ta-set" | "t-minus" | "q"
    owner: Optional[int]
    vertices: frozenset


@dataclass
class TransferGraph:
    nodes: list
    adj: list
    categories: dict  # position -> NoSeparator | HasSeparator for satisfied sets


def build_transfer_graph(packing: BothSidePacking) -> TransferGraph:
    g = packing.g
    nodes: list[TransferNode] = []
    cats: dict[int, Union[NoSeparator, HasSeparator]] = {}
    for j in range(packing.k):
        tj = frozenset(packing.sets[j])
        if not packing.satisfied(j):
            nodes.append(TransferNode("t-minus", j, tj))
            continue
        s = find_separator(g, tj, packing.targets[j])
        if s is None:
            cats[j] = NoSeparator()
            nodes.append(TransferNode("ta-set", j, tj))
        else:
            comps = connected_components(g, tj - {s})
            cats[j] = HasSeparator(s, comps)
            nodes.extend(TransferNode("tb-component", j, c) for c in comps)
    for q in connected_components(g, g.vertices() - packing.assigned()):
        nodes.append(TransferNode("q", None, q))
    node_of = {}
    for idx, node in enumerate(nodes):
        for v in node.vertices:
            node_of[v] = idx
    adj: list[set] = [set() for _ in nodes]
    for v, a in node_of.items():
        for y in g.adj[v]:
            b = node_of.get(y)
            if b is not None and b != a:
                adj[a].add(b)
    return TransferGraph(nodes, [sorted(a) for a in adj], cats)


def find_transfer_path(h: TransferGraph) -> list[int]:
    """Shortest node path from any ``q`` node to any ``t-minus`` node (BFS, smallest index first)."""
    sources = [i for i, n in enumerate(h.nodes) if n.kind == "q"]
    if not sources or not any(n.kind == "t-minus" for n in h.nodes):
        raise NoPath("transfer graph lacks a q node or a t-minus node")
    prev = {s: None for s in sources}
    queue = deque(sources)
    while queue:
        a = queue.popleft()
        if h.nodes[a].kind == "t-minus":
            path = [a]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for b in h.adj[a]:
            if b not in prev:
                prev[b] = a
                queue.append(b)
    raise NoPath("no path from unassigned vertices to an unsatisfied set "
                 "(is the graph k-connected?)")


def truncate_set(g: WeightedGraph, t, lower: int, upper: int) -> frozenset:
    """Drop non-cut vertices (smallest id first) until ``w(T) <= upper``.

    With every vertex weighing at most ``lower`` and ``upper >= 2*lower`` the
    weight never falls below ``lower``.
    """
    cur = set(t)
    w = g.weight_of(cur)
    if w <= upper:
        return frozenset(cur)
    if w < lower or g.w_max(cur) > lower:
        raise PreconditionViolated("truncate needs w(T) >= lower >= w_max(T)")
    while w > upper:
        v = non_cut_vertices(g, cur)[0]
        cur.discard(v)
        w -= g.weight[v]
    if w < lower:
        raise InternalInvariantViolation("truncation undershot the lower bound")
    return frozenset(cur)


def transfer_vertices(packing: BothSidePacking, h: TransferGraph, path: Sequence[int]) -> tuple[str, ...]:
    """Push unassigned vertices along ``path``, updating ``packing`` in place.

    Returns the steps taken: zero or more ``"accumulate"`` steps followed by
    the terminating one (``"replace"``, ``"absorb"``, ``"swap"`` or ``"divide"``).
    """
    g = packing.g
    tw = packing.targets
    sets = packing.sets
    x = set(h.nodes[path[0]].vertices)
    u = packing.u()
    tstar = set(packing.tstar())
    steps: list[str] = []

    def trunc(j: int, vertices) -> frozenset:
        return truncate_set(g, vertices, tw[j], packing.upper[j])

    for node_idx in path[1:]:
        node = h.nodes[node_idx]
        j = node.owner
        wx = g.weight_of(x)
        if wx >= tw[u]:
            sets[u] = trunc(u, x)
            return (*steps, "replace")
        if wx + packing.weight(j) <= packing.upper[j]:
            sets[j] = frozenset(sets[j]) | x
            return (*steps, "absorb")
        if j not in tstar:
            merged = frozenset(sets[j]) | x
            if j != u:
                sets[j] = trunc(j, sets[u])
            sets[u] = trunc(u, merged)
            return (*steps, "swap")
        if node.kind == "ta-set":
            res = divide_or_separator(g, frozenset(sets[j]) | x, tw[j])
            if not isinstance(res, Split):
                raise InternalInvariantViolation("satisfied set without separator did not divide")
            sets[j] = trunc(j, res.first)
            sets[u] = trunc(u, res.second)
            return (*steps, "divide")
        x |= node.vertices
        sets[j] = frozenset(sets[j]) - node.vertices
        steps.append("accumulate")
    raise InternalInvariantViolation("transfer path exhausted without terminating")


def double_bounded_gl(
    g: WeightedGraph,
    targets: Sequence[int],
    *,
    debug: Optional[bool] = None,
    verify_k_connected: bool = False,
) -> GlResult:
    """Connected k-partition with ``w_i/3 <= w(T_i) <= max(r, 3)*w_i``, ``r = w_1/w_k``."""
    tw = TargetWeights.from_sequence(targets)
    packing0 = bounded_gl(g, targets, ONE_THIRD, debug=debug, verify_k_connected=verify_k_connected)
    if packing0.ell != tw.k:
        raise InternalInvariantViolation("lower-bounded packing has fewer than k sets")
    stats = packing0.stats
    by_pos = [frozenset(packing0.sets[i]) for i in tw.order]
    packing = BothSidePacking(g, tw.targets, by_pos)
    cap = tw.k * g.n
    stats.transfer_cap = cap
    measure = packing.measure()
    stats.progress.append(measure)
    while measure[1] < g.n:
        stats.transfer_iterations += 1
        if stats.transfer_iterations > cap:
            raise LoopCapExceeded(f"more than k|V| = {cap} transfer iterations")
        h = build_transfer_graph(packing)
        path = find_transfer_path(h)
        for step in transfer_vertices(packing, h, path):
            stats.branches[step] = stats.branches.get(step, 0) + 1
        new = packing.measure()
        if not new > measure:
            raise InternalInvariantViolation(f"no progress: {measure} -> {new}")
        measure = new
        stats.progress.append(measure)
        probs = packing.problems()
        if probs:
            raise InternalInvariantViolation("packing not pack-satisfied: " + "; ".join(probs))
    parts = tuple(tw.to_caller(packing.sets))
    probs = partition_problems(g, parts)
    if probs:
        raise InternalInvariantViolation("; ".join(probs))
    return GlResult(parts, tuple(targets), stats)


def balanced_targets(total: int, k: int) -> list[int]:
    q, rem = divmod(total, k)
    return [q + 1] * rem + [q] * (k - rem)


def balanced_kconnected(
    g: WeightedGraph, k: int, *, debug: Optional[bool] = None, verify_k_connected: bool = False
) -> GlResult:
    """Connected k-partition with every part in ``[floor(w/k)/3, 3*ceil(w/k)]``."""
    if k < 1:
        raise PreconditionViolated("k must be at least 1")
    if g.total_weight < k * g.w_max():
        raise PreconditionViolated("w(G) < k * w_max")
    return double_bounded_gl(g, balanced_targets(g.total_weight, k), debug=debug,
                             verify_k_connected=verify_k_connected)
