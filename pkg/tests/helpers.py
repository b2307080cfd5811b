"""Small graph builders shared by the test modules."""

from itertools import combinations

from conpart.graph import build_graph


def path(n, weights=None):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], weights or [1] * n)


def cycle(n, weights=None):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)], weights or [1] * n)


def complete(n, weights=None):
    return build_graph(n, list(combinations(range(n), 2)), weights or [1] * n)


def star(leaves, weights=None):
    n = leaves + 1
    return build_graph(n, [(0, i) for i in range(1, n)], weights or [1] * n)


def from_nx(h, weights=None):
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = [(index[u], index[v]) for u, v in h.edges()]
    return build_graph(len(nodes), edges, weights or [1] * len(nodes))
