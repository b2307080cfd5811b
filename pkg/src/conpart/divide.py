"""Divide a connected vertex set into two heavy halves, or find the vertex that blocks it.

A vertex ``s`` is a ``lam``-separator of ``S`` when every component of
``S - s`` weighs less than ``lam``; ``S`` is ``lam``-dividable when it has a
connected 2-partition with both sides of weight at least ``lam``.  The two are
mutually exclusive, and once ``w(S) > 3(lam - 1)`` one of them always holds.

Construction used here: take a BFS spanning tree and walk down from the root
to the deepest vertex ``v`` whose subtree still weighs ``lam``.  Either the
part above ``v`` is heavy too (split off the subtree), or every piece of the
tree minus ``v`` is light.  In the latter case a heavy component of ``S - v``
is a union of light pieces; accreting whole pieces until the weight reaches
``lam`` gives a side of weight at most ``2*lam - 2`` whose complement stays
connected through ``v``.  Nothing here needs ``lam > w_max``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import InternalInvariantViolation, NotConnected, PreconditionViolated
from .graph import WeightedGraph, connected_components, is_connected


@dataclass(frozen=True)
class Separator:
    vertex: int


@dataclass(frozen=True)
class Split:
    first: frozenset
    second: frozenset


DivideResult = Union[Separator, Split]


def _spanning_center(g: WeightedGraph, sub: frozenset, lam: int):
    """Return ``(v, subtree_members, children)`` for the descent described above."""
    root = min(sub)
    parent = {root: None}
    order = [root]
    children: dict[int, list[int]] = {root: []}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in g.adj[x]:
            if y in sub and y not in parent:
                parent[y] = x
                children[x].append(y)
                children[y] = []
                order.append(y)
    if len(order) != len(sub):
        raise NotConnected("subset is not connected")
    sw = {}
    for x in reversed(order):
        sw[x] = g.weight[x] + sum(sw[c] for c in children[x])
    v = root
    while True:
        nxt = next((c for c in children[v] if sw[c] >= lam), None)
        if nxt is None:
            break
        v = nxt
    return v, sw, children


def _subtree(children: dict, top: int) -> list[int]:
    out, stack = [], [top]
    while stack:
        x = stack.pop()
        out.append(x)
        stack.extend(children[x])
    return out


def _is_separator(g: WeightedGraph, sub: frozenset, s: int, lam: int) -> bool:
    return all(g.weight_of(c) < lam for c in connected_components(g, sub - {s}))


def _verify_split(g: WeightedGraph, sub: frozenset, split: Split, lam: int) -> Split:
    a, b = split.first, split.second
    ok = (a and b and not (a & b) and (a | b) == sub
          and g.weight_of(a) >= lam and g.weight_of(b) >= lam
          and is_connected(g, a) and is_connected(g, b))
    if not ok:
        raise InternalInvariantViolation("divide produced an invalid split")
    return split


def divide_or_separator(g: WeightedGraph, subset: Iterable[int], lam: int) -> DivideResult:
    """Either a ``Split`` with both sides ``>= lam`` or the ``lam``-separator.

    Requires a connected subset with ``w(subset) > 3*(lam - 1)`` and ``lam >= 1``.
    """
    sub = frozenset(subset)
    if lam < 1:
        raise PreconditionViolated("lambda must be positive")
    if not sub:
        raise PreconditionViolated("empty subset")
    total = g.weight_of(sub)
    if total <= 3 * (lam - 1):
        raise PreconditionViolated(f"w(subset)={total} <= 3*(lambda-1)={3 * (lam - 1)}")
    v, sw, children = _spanning_center(g, sub, lam)
    if total - sw[v] >= lam:
        below = frozenset(_subtree(children, v))
        return _verify_split(g, sub, Split(below, sub - below), lam)

    piece_of: dict[int, int] = {}
    pieces: list[list[int]] = []
    for c in children[v]:
        members = _subtree(children, c)
        for x in members:
            piece_of[x] = len(pieces)
        pieces.append(members)
    above = sub - frozenset(_subtree(children, v))
    if above:
        for x in above:
            piece_of[x] = len(pieces)
        pieces.append(sorted(above))

    comps = connected_components(g, sub - {v})
    heavy = [c for c in comps if g.weight_of(c) >= lam]
    if not heavy:
        return Separator(v)
    target = max(heavy, key=lambda c: (g.weight_of(c), -min(c)))

    piece_w = [g.weight_of(p) for p in pieces]
    start = piece_of[min(target)]
    taken: list[int] = []
    weight = 0
    seen = {start}
    queue = deque([start])
    while queue and weight < lam:
        p = queue.popleft()
        taken.append(p)
        weight += piece_w[p]
        nxt = set()
        for x in pieces[p]:
            for y in g.adj[x]:
                q = piece_of.get(y)
                if q is not None and q not in seen:
                    nxt.add(q)
        for q in sorted(nxt):
            seen.add(q)
            queue.append(q)
    side = frozenset(x for p in taken for x in pieces[p])
    return _verify_split(g, sub, Split(side, sub - side), lam)


def find_separator(g: WeightedGraph, subset: Iterable[int], lam: int) -> Optional[int]:
    """The smallest-id ``lam``-separator of a connected set, or ``None``.

    When ``w(subset) >= 2*lam`` a separator is unique and is found in linear
    time from the spanning-tree descent; lighter sets are searched exhaustively.
    """
    sub = frozenset(subset)
    if not sub:
        raise PreconditionViolated("empty subset")
    total = g.weight_of(sub)
    if total >= 2 * lam:
        v, sw, _ = _spanning_center(g, sub, lam)
        if total - sw[v] >= lam:
            return None
        return v if _is_separator(g, sub, v, lam) else None
    for s in sorted(sub):
        if _is_separator(g, sub, s, lam):
            return s
    return None


def try_divide_with_separator(
    g: WeightedGraph,
    t: Iterable[int],
    s: int,
    comps: Sequence[frozenset],
    q: Iterable[int],
    lam: int,
) -> Optional[Split]:
    """Split ``T | Q`` using the known separator ``s`` of ``T``, if possible.

    ``comps`` are the components of ``T - s`` (all lighter than ``lam``) and
    ``Q`` is a connected set outside ``T`` lighter than ``lam``.  When the
    component of ``G[V(comps) | Q]`` containing ``Q`` reaches ``lam``, comps
    adjacent to the growing side are absorbed (smallest member first) until it
    does; the result has ``first`` = grown side (containing ``Q``, weight
    below ``2*lam``) and ``second`` = the rest (containing ``s``).  Otherwise
    ``None``: then ``s`` is also a separator of ``T | Q``.
    """
    t_set, q_set = frozenset(t), frozenset(q)
    if s not in t_set or t_set & q_set:
        raise PreconditionViolated("s must lie in T and Q must be disjoint from T")
    if g.weight_of(q_set) >= lam:
        raise PreconditionViolated("w(Q) >= lambda")
    total = g.weight_of(t_set | q_set)
    if total <= 3 * (lam - 1):
        raise PreconditionViolated("w(T | Q) <= 3*(lambda-1)")
    if any(g.weight_of(c) >= lam for c in comps):
        raise PreconditionViolated("s is not a lambda-separator of T")

    grown = set(q_set)
    weight = g.weight_of(q_set)
    remaining = sorted(comps, key=min)
    while weight < lam:
        touching = set()
        for x in grown:
            touching.update(g.adj[x])
        nxt = next((c for c in remaining if not touching.isdisjoint(c)), None)
        if nxt is None:
            return None
        remaining.remove(nxt)
        grown |= nxt
        weight += g.weight_of(nxt)
    side = frozenset(grown)
    return _verify_split(g, t_set | q_set, Split(side, (t_set | q_set) - side), lam)
