"""Exhaustive ground truth for small instances.

Everything here enumerates connected vertex partitions by brute force and is
meant for graphs of about ten vertices.  Vertex sets are handled as bitmasks
internally; results use frozensets like the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Literal, Sequence

from .errors import BudgetExceeded, NoPartitionExists, PreconditionViolated
from .graph import WeightedGraph, connected_components


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 10
    max_parts: int = 5


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class DivideOracle:
    dividable: bool
    separators: frozenset


def _check_budget(n: int, k: int, budget: OracleBudget) -> None:
    if n > budget.max_vertices:
        raise BudgetExceeded(f"{n} vertices exceed the oracle budget of {budget.max_vertices}")
    if k > budget.max_parts:
        raise BudgetExceeded(f"{k} parts exceed the oracle budget of {budget.max_parts}")


def _mask_connected(nbr: Sequence[int], mask: int) -> bool:
    if not mask:
        return False
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        bit = frontier & -frontier
        frontier ^= bit
        new = nbr[bit.bit_length() - 1] & mask & ~seen
        seen |= new
        frontier |= new
    return seen == mask


def _neighbor_masks(g: WeightedGraph) -> list[int]:
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def _submasks_with(mask: int, required: int) -> Iterator[int]:
    """All submasks of ``mask`` that contain ``required`` (a single bit of ``mask``)."""
    rest = mask & ~required
    sub = rest
    while True:
        yield sub | required
        if sub == 0:
            return
        sub = (sub - 1) & rest


def _mask_to_set(mask: int) -> frozenset:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit.bit_length() - 1)
        mask ^= bit
    return frozenset(out)


def _partitions_masks(nbr: Sequence[int], full: int, k: int) -> Iterator[list[int]]:
    """Connected ``k``-partitions of ``full``; each block holds the lowest vertex left."""
    connected: dict[int, bool] = {}

    def ok(mask: int) -> bool:
        r = connected.get(mask)
        if r is None:
            r = connected[mask] = _mask_connected(nbr, mask)
        return r

    def rec(remaining: int, parts_left: int, acc: list[int]) -> Iterator[list[int]]:
        if parts_left == 1:
            if ok(remaining):
                yield acc + [remaining]
            return
        low = remaining & -remaining
        for block in _submasks_with(remaining, low):
            if block == remaining:
                continue
            if bin(remaining ^ block).count("1") < parts_left - 1:
                continue
            if ok(block):
                yield from rec(remaining ^ block, parts_left - 1, acc + [block])

    if k < 1 or bin(full).count("1") < k:
        return
    yield from rec(full, k, [])


def enumerate_connected_k_partitions(
    g: WeightedGraph, k: int, budget: OracleBudget = DEFAULT_BUDGET
) -> Iterator[tuple[frozenset, ...]]:
    """Every connected ``k``-partition of ``V`` exactly once.

    Blocks are ordered by smallest member, which is the restricted-growth
    labelling of the underlying set partition.
    """
    _check_budget(g.n, k, budget)
    nbr = _neighbor_masks(g)
    for blocks in _partitions_masks(nbr, (1 << g.n) - 1, k):
        yield tuple(_mask_to_set(b) for b in blocks)


def oracle_bcp_solution(
    g: WeightedGraph,
    k: int,
    mode: Literal["min-max", "max-min"],
    budget: OracleBudget = DEFAULT_BUDGET,
) -> tuple[int, tuple[frozenset, ...]]:
    """Exact optimum and the first optimal partition in enumeration order."""
    if mode not in ("min-max", "max-min"):
        raise PreconditionViolated(f"unknown mode {mode!r}")
    _check_budget(g.n, k, budget)
    nbr = _neighbor_masks(g)
    wmask: dict[int, int] = {}

    def weight(mask: int) -> int:
        w = wmask.get(mask)
        if w is None:
            w = wmask[mask] = sum(g.weight[v] for v in _mask_to_set(mask))
        return w

    best, best_blocks = None, None
    for blocks in _partitions_masks(nbr, (1 << g.n) - 1, k):
        ws = [weight(b) for b in blocks]
        val = max(ws) if mode == "min-max" else min(ws)
        if best is None or (val < best if mode == "min-max" else val > best):
            best, best_blocks = val, blocks
    if best is None:
        raise NoPartitionExists(f"no connected {k}-partition exists")
    return best, tuple(_mask_to_set(b) for b in best_blocks)


def oracle_opt_bcp(
    g: WeightedGraph,
    k: int,
    mode: Literal["min-max", "max-min"],
    budget: OracleBudget = DEFAULT_BUDGET,
) -> int:
    """Exact min-max or max-min optimum over all connected ``k``-partitions."""
    return oracle_bcp_solution(g, k, mode, budget)[0]


def oracle_divide(
    g: WeightedGraph, subset, lam: int, budget: OracleBudget = DEFAULT_BUDGET
) -> DivideOracle:
    """Exact lam-dividability and the full set of lam-separators of ``G[subset]``."""
    sub = sorted(frozenset(subset))
    _check_budget(len(sub), 2, budget)
    total = g.weight_of(sub)
    nbr = _neighbor_masks(g)
    full = sum(1 << v for v in sub)
    dividable = False
    for a, b in _partitions_masks(nbr, full, 2):
        wa = g.weight_of(_mask_to_set(a))
        if wa >= lam and total - wa >= lam:
            dividable = True
            break
    sub_set = frozenset(sub)
    seps = frozenset(
        s for s in sub
        if all(g.weight_of(c) < lam for c in connected_components(g, sub_set - {s}))
    )
    return DivideOracle(dividable, seps)


def oracle_gl_feasible(
    g: WeightedGraph,
    targets: Sequence[int],
    lower_factor,
    upper_factor,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> bool:
    """Whether some connected partition has ``lower*w_i <= w(T_i) <= upper*w_i`` for all i.

    Part ``i`` may be any block, so every assignment of blocks to targets is tried.
    """
    k = len(targets)
    _check_budget(g.n, k, budget)
    lo, hi = Fraction(lower_factor), Fraction(upper_factor)
    for blocks in enumerate_connected_k_partitions(g, k, budget):
        ws = [g.weight_of(b) for b in blocks]
        if _assignable(ws, [Fraction(t) for t in targets], lo, hi):
            return True
    return False


def _assignable(ws: list[int], targets: list[Fraction], lo: Fraction, hi: Fraction) -> bool:
    k = len(ws)
    fits = [[lo * targets[i] <= ws[b] <= hi * targets[i] for b in range(k)] for i in range(k)]
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == k:
            return True
        for b in range(k):
            if b not in used and fits[i][b]:
                used.add(b)
                if rec(i + 1):
                    return True
                used.discard(b)
        return False

    return rec(0)
