"""Seeded instance generators.

All randomness comes from :class:`SplitMix64`, a fixed 64-bit generator, so a
given :class:`GenSpec` yields the same graph on every platform and Python
version.  Structure is drawn first, then vertex weights, from one stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .errors import GenerationFailed, InvalidSpec
from .graph import WeightedGraph, build_graph, is_connected, line_graph

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood): golden-ratio increment plus the Stafford mix13 finalizer."""

    GAMMA = 0x9E3779B97F4A7C15
    MUL1 = 0xBF58476D1CE4E5B9
    MUL2 = 0x94D049BB133111EB

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MUL1) & MASK64
        z = ((z ^ (z >> 27)) * self.MUL2) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection, so there is no modulo bias."""
        if hi < lo:
            raise InvalidSpec(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = self.next_u64()
            if x < limit:
                return lo + x % span


@dataclass(frozen=True)
class LineGraphOfGnp:
    p: float


@dataclass(frozen=True)
class HararyPlus:
    k: int
    extra_edges: int = 0


@dataclass(frozen=True)
class Path:
    pass


@dataclass(frozen=True)
class Cycle:
    pass


@dataclass(frozen=True)
class Star:
    c: int


Model = Union[LineGraphOfGnp, HararyPlus, Path, Cycle, Star]


@dataclass(frozen=True)
class GenSpec:
    """``n`` is the number of vertices of the sampled graph.

    For :func:`gen_clawfree` that is the base graph, whose edges become the
    vertices of the output; ``max_edges`` then caps the output size.
    """

    seed: int
    n: int
    model: Model
    weight_range: tuple[int, int] = (1, 1)
    max_edges: Optional[int] = None

    def __post_init__(self):
        lo, hi = self.weight_range
        if lo < 1 or hi < lo:
            raise InvalidSpec(f"bad weight range [{lo}, {hi}]")
        if self.n < 1:
            raise InvalidSpec("n must be at least 1")
        if isinstance(self.model, LineGraphOfGnp) and not 0 < self.model.p <= 1:
            raise InvalidSpec("p must lie in (0, 1]")


MAX_RETRIES = 100


def gen_weights(spec: GenSpec, n: int, rng: Optional[SplitMix64] = None) -> list[int]:
    rng = rng if rng is not None else SplitMix64(spec.seed)
    lo, hi = spec.weight_range
    return [rng.randint(lo, hi) for _ in range(n)]


def harary_edges(k: int, n: int) -> list[tuple[int, int]]:
    """Edges of the Harary graph ``H_{k,n}``: minimum edge count and k-connected."""
    if not 1 <= k < n:
        raise InvalidSpec(f"Harary graph needs 1 <= k < n, got k={k}, n={n}")
    if k == 1:
        return [(i, i + 1) for i in range(n - 1)]
    edges = set()
    for i in range(n):
        for d in range(1, k // 2 + 1):
            j = (i + d) % n
            edges.add((min(i, j), max(i, j)))
    if k % 2:
        half = n // 2
        if n % 2 == 0:
            for i in range(half):
                edges.add((i, i + half))
        else:
            for i in range(half + 1):
                j = (i + half + 1) % n
                edges.add((min(i, j), max(i, j)))
    return sorted(edges)


def _base_edges(spec: GenSpec, rng: SplitMix64) -> list[tuple[int, int]]:
    n, model = spec.n, spec.model
    if isinstance(model, Path):
        return [(i, i + 1) for i in range(n - 1)]
    if isinstance(model, Cycle):
        if n < 3:
            raise InvalidSpec("a cycle needs at least 3 vertices")
        return [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    if isinstance(model, Star):
        if n != model.c + 1:
            raise InvalidSpec(f"star K_1,{model.c} has {model.c + 1} vertices, not {n}")
        return [(0, i) for i in range(1, n)]
    if isinstance(model, LineGraphOfGnp):
        return [(u, v) for u, v in combinations(range(n), 2) if rng.random() < model.p]
    if isinstance(model, HararyPlus):
        edges = set(harary_edges(model.k, n))
        missing = n * (n - 1) // 2 - len(edges)
        extra = min(model.extra_edges, missing)
        while extra:
            u, v = rng.randint(0, n - 1), rng.randint(0, n - 1)
            e = (min(u, v), max(u, v))
            if u != v and e not in edges:
                edges.add(e)
                extra -= 1
        return sorted(edges)
    raise InvalidSpec(f"unknown model {model!r}")


def gen_graph(spec: GenSpec) -> WeightedGraph:
    """The model graph itself (not its line graph), weighted from ``weight_range``."""
    rng = SplitMix64(spec.seed)
    for _ in range(MAX_RETRIES):
        edges = _base_edges(spec, rng)
        g = build_graph(spec.n, edges, [1] * spec.n)
        if is_connected(g):
            return build_graph(spec.n, edges, gen_weights(spec, spec.n, rng))
    raise GenerationFailed(f"no connected sample after {MAX_RETRIES} tries")


def gen_clawfree(spec: GenSpec) -> WeightedGraph:
    """Connected claw-free graph: the line graph of a connected base sample."""
    if isinstance(spec.model, HararyPlus):
        raise InvalidSpec("use gen_k_connected for Harary models")
    rng = SplitMix64(spec.seed)
    for _ in range(MAX_RETRIES):
        edges = _base_edges(spec, rng)
        if not edges:
            continue
        if spec.max_edges is not None and len(edges) > spec.max_edges:
            continue
        base = build_graph(spec.n, edges, [1] * spec.n)
        if not is_connected(base):
            continue
        lg, _ = line_graph(base)
        return build_graph(lg.n, lg.edges(), gen_weights(spec, lg.n, rng))
    raise GenerationFailed(f"no connected sample after {MAX_RETRIES} tries")


def gen_k_connected(spec: GenSpec) -> WeightedGraph:
    """Harary graph ``H_{k,n}`` plus random extra edges; k-connected by construction."""
    if not isinstance(spec.model, HararyPlus):
        raise InvalidSpec("gen_k_connected needs a HararyPlus model")
    if spec.n <= spec.model.k:
        raise InvalidSpec(f"n={spec.n} must exceed k={spec.model.k}")
    rng = SplitMix64(spec.seed)
    edges = _base_edges(spec, rng)
    return build_graph(spec.n, edges, gen_weights(spec, spec.n, rng))


def gen_targets(total: int, k: int, floor: int, rng: SplitMix64) -> list[int]:
    """Random targets, each at least ``floor``, summing to ``total``, in descending order."""
    if k < 1 or k * floor > total:
        raise InvalidSpec(f"cannot split {total} into {k} targets of at least {floor}")
    spare = total - k * floor
    cuts = sorted(rng.randint(0, spare) for _ in range(k - 1))
    bounds = [0, *cuts, spare]
    return sorted((floor + bounds[i + 1] - bounds[i] for i in range(k)), reverse=True)
