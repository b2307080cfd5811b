"""Command-line front end.

Graph files are line oriented, with ``#`` starting a comment::

    p graph <n> <m>
    v <id> <weight>            # exactly n lines, ids 1..n
    e <u> <v> [<edge-weight>]  # exactly m lines; edge weights needed by bcep

Every run re-verifies its partition against the input before printing a JSON
result document.  Exit codes: 0 success, 1 failed precondition or
infeasible request, 2 unreadable input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Optional, Sequence

from . import gen as gen_mod
from .bcp import bcep, max_min_bcp, min_max_bcp
from .errors import (
    ClawWitnessFound,
    GraphError,
    GraphFormatError,
    InconsistentHeader,
    InvariantViolation,
    NotKConnected,
    ParseError,
    PartitionError,
    PreconditionViolated,
)
from .gl import balanced_kconnected, balanced_targets, double_bounded_gl, gl_one_side
from .graph import WeightedGraph, build_graph, is_claw_free, partition_problems, vertex_connectivity_at_least
from .oracle import oracle_bcp_solution

MODES = ("bcp-min-max", "bcp-max-min", "bcep", "gl-lower", "gl-upper", "gl-both",
         "gl-balanced", "verify", "gen", "oracle")
EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3


@dataclass(frozen=True)
class GraphFile:
    graph: WeightedGraph
    edges: tuple[tuple[int, int], ...]  # 0-based, in file order
    edge_weights: Optional[tuple[int, ...]]


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None


def parse_graph_text(text: str) -> GraphFile:
    n = m = None
    weights: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    eweights: list[Optional[int]] = []
    seen_edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kind, args = line[0], line[1:]
        if kind == "p":
            if n is not None:
                raise ParseError(lineno, "second header line")
            if len(args) != 3 or args[0] != "graph":
                raise ParseError(lineno, "header must read 'p graph <n> <m>'")
            n, m = _int(args[1], lineno, "n"), _int(args[2], lineno, "m")
            if n < 1 or m < 0:
                raise ParseError(lineno, "header needs n >= 1 and m >= 0")
            continue
        if n is None:
            raise ParseError(lineno, "data before the 'p graph' header")
        if kind == "v":
            if len(args) != 2:
                raise ParseError(lineno, "vertex line must read 'v <id> <weight>'")
            vid, w = _int(args[0], lineno, "vertex id"), _int(args[1], lineno, "weight")
            if not 1 <= vid <= n:
                raise ParseError(lineno, f"vertex id {vid} outside 1..{n}")
            if w < 1:
                raise ParseError(lineno, f"weight {w} < 1")
            if vid in weights:
                raise ParseError(lineno, f"vertex {vid} listed twice")
            weights[vid] = w
        elif kind == "e":
            if len(args) not in (2, 3):
                raise ParseError(lineno, "edge line must read 'e <u> <v> [<weight>]'")
            u, v = _int(args[0], lineno, "endpoint"), _int(args[1], lineno, "endpoint")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(lineno, f"endpoint {x} outside 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ParseError(lineno, f"duplicate edge {u}-{v}")
            seen_edges.add(key)
            ew = None
            if len(args) == 3:
                ew = _int(args[2], lineno, "edge weight")
                if ew < 1:
                    raise ParseError(lineno, f"edge weight {ew} < 1")
            edges.append((u - 1, v - 1))
            eweights.append(ew)
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    if n is None:
        raise ParseError(0, "missing 'p graph' header")
    if len(weights) != n:
        raise InconsistentHeader(f"header says {n} vertices, found {len(weights)} 'v' lines")
    if len(edges) != m:
        raise InconsistentHeader(f"header says {m} edges, found {len(edges)} 'e' lines")
    given = [w for w in eweights if w is not None]
    if given and len(given) != len(eweights):
        raise ParseError(0, "edge weights must be given on all edges or none")
    g = build_graph(n, edges, [weights[i + 1] for i in range(n)])
    return GraphFile(g, tuple(edges), tuple(given) if given else None)


def read_graph_file(path) -> GraphFile:
    try:
        text = FilePath(path).read_text()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}") from None
    return parse_graph_text(text)


def format_graph(g: WeightedGraph) -> str:
    lines = [f"p graph {g.n} {g.num_edges}"]
    lines += [f"v {v + 1} {g.weight[v]}" for v in range(g.n)]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- running ----------------------------------------------------------------------------

class VerificationFailed(PartitionError):
    pass


def _parse_targets(text: Optional[str]) -> list[int]:
    if not text:
        raise PreconditionViolated("this mode needs --targets")
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise PreconditionViolated(f"bad --targets {text!r}") from None


def _need_k(args) -> int:
    if args.k is None:
        raise PreconditionViolated("this mode needs --k")
    return args.k


def _document(mode, k, c, objective, lower, upper, parts, certificate) -> dict:
    return {
        "mode": mode,
        "k": k,
        "c": c,
        "objective": objective,
        "bounds": {"lower": list(lower), "upper": list(upper)},
        "parts": [sorted(x + 1 for x in p) for p in parts],
        "certificate": certificate,
        "verified": True,
    }


def _verify(g: WeightedGraph, parts, lower, upper) -> None:
    problems = partition_problems(g, parts)
    for i, p in enumerate(parts):
        w = g.weight_of(p)
        if not lower[i] <= w <= upper[i]:
            problems.append(f"part {i + 1} weight {w} outside [{lower[i]}, {upper[i]}]")
    if problems:
        raise VerificationFailed("; ".join(problems))


def _run_bcp(args, gf: GraphFile) -> dict:
    g, k, c = gf.graph, _need_k(args), args.c
    if args.mode == "bcp-min-max":
        sol = min_max_bcp(g, k, c, verify_claw_free=args.verify_claw_free)
        lower, upper = [1] * k, [(c - 1) * sol.certificate - 1] * k
        cert = {"lambda": sol.certificate}
    else:
        sol = max_min_bcp(g, k, c, verify_claw_free=args.verify_claw_free)
        lower, upper = [max(1, sol.certificate // (c - 1))] * k, [g.total_weight] * k
        cert = {"x_hat": sol.certificate}
    _verify(g, sol.parts, lower, upper)
    return _document(args.mode, k, c, sol.objective, lower, upper, sol.parts, cert)


def _run_bcep(args, gf: GraphFile) -> dict:
    if gf.edge_weights is None and gf.edges:
        raise ParseError(0, "bcep needs an edge weight on every 'e' line")
    k = _need_k(args)
    mode = args.objective
    index = {e: i for i, e in enumerate(gf.edges)}
    ew = {(min(u, v), max(u, v)): w for (u, v), w in zip(gf.edges, gf.edge_weights or ())}
    sol = bcep(gf.graph, k, mode, ew)
    lg = sol.line_solution
    edge_parts = [[_index_of(index, e) for e in part] for part in sol.parts]
    lg_graph_weights = [sum(ew[e] for e in part) for part in sol.parts]
    if mode == "min-max":
        lower, upper = [1] * k, [2 * lg.certificate - 1] * k
        cert = {"lambda": lg.certificate}
    else:
        lower, upper = [max(1, lg.certificate // 2)] * k, [sum(ew.values())] * k
        cert = {"x_hat": lg.certificate}
    problems = _edge_partition_problems(gf, edge_parts)
    for i, w in enumerate(lg_graph_weights):
        if not lower[i] <= w <= upper[i]:
            problems.append(f"part {i + 1} weight {w} outside [{lower[i]}, {upper[i]}]")
    if problems:
        raise VerificationFailed("; ".join(problems))
    return _document("bcep", k, 3, sol.objective, lower, upper, edge_parts, cert)


def _index_of(index: dict, e: tuple[int, int]) -> int:
    return index[e] if e in index else index[(e[1], e[0])]


def _edge_partition_problems(gf: GraphFile, parts) -> list[str]:
    problems = []
    flat = [i for p in parts for i in p]
    if sorted(flat) != list(range(len(gf.edges))):
        problems.append("edge parts are not a partition of E")
    for n_part, p in enumerate(parts):
        verts = {x for i in p for x in gf.edges[i]}
        sub = build_graph(gf.graph.n, [gf.edges[i] for i in p], [1] * gf.graph.n)
        if not p or partition_problems(sub, [verts], cover=False):
            problems.append(f"edge part {n_part + 1} is not connected")
    return problems


def _gl_bounds(g: WeightedGraph, mode: str, targets: list[int]):
    k = len(targets)
    if mode == "gl-lower":
        return [math.ceil(Fraction(t, 3)) for t in targets], [g.total_weight] * k
    if mode == "gl-upper":
        return [1] * k, [3 * t for t in targets]
    ratio = max(Fraction(max(targets), min(targets)), Fraction(3))
    return [math.ceil(Fraction(t, 3)) for t in targets], [math.floor(ratio * t) for t in targets]


def _run_gl(args, gf: GraphFile) -> dict:
    g = gf.graph
    debug = True if args.debug_asserts else None
    if args.mode == "gl-balanced":
        k = _need_k(args)
        targets = balanced_targets(g.total_weight, k)
        res = balanced_kconnected(g, k, debug=debug, verify_k_connected=args.verify_k_connected)
        q, r = divmod(g.total_weight, k)
        lower = [math.ceil(Fraction(q, 3))] * k
        upper = [3 * (q + (r > 0))] * k
    else:
        targets = _parse_targets(args.targets)
        if args.k is not None and args.k != len(targets):
            raise PreconditionViolated(f"--k {args.k} disagrees with {len(targets)} targets")
        k = len(targets)
        if args.mode == "gl-both":
            res = double_bounded_gl(g, targets, debug=debug, verify_k_connected=args.verify_k_connected)
        else:
            side = "lower" if args.mode == "gl-lower" else "upper"
            res = gl_one_side(g, targets, side, debug=debug, verify_k_connected=args.verify_k_connected)
        lower, upper = _gl_bounds(g, args.mode, targets)
    _verify(g, res.parts, lower, upper)
    return _document(args.mode, k, args.c, None, lower, upper, res.parts, None)


def _run_oracle(args, gf: GraphFile) -> dict:
    k = _need_k(args)
    value, parts = oracle_bcp_solution(gf.graph, k, args.objective)
    lower, upper = [1] * k, [gf.graph.total_weight] * k
    _verify(gf.graph, parts, lower, upper)
    return _document("oracle", k, args.c, value, lower, upper, parts, None)


def _run_verify(args, gf: GraphFile) -> dict:
    """Re-check a result document (``--partition``) against the graph, plus optional structure checks."""
    g = gf.graph
    if args.verify_claw_free:
        witness = is_claw_free(g, args.c)
        if witness is not None:
            raise ClawWitnessFound(*witness)
    if args.verify_k_connected:
        k = _need_k(args)
        if not vertex_connectivity_at_least(g, k):
            raise NotKConnected(f"graph is not {k}-connected")
    parts: list = []
    lower: list = []
    upper: list = []
    if args.partition:
        try:
            doc = json.loads(FilePath(args.partition).read_text())
            parts = [frozenset(x - 1 for x in p) for p in doc["parts"]]
            lower = list(doc.get("bounds", {}).get("lower") or [1] * len(parts))
            upper = list(doc.get("bounds", {}).get("upper") or [g.total_weight] * len(parts))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ParseError(0, f"cannot read result document: {exc}") from None
        if doc.get("mode") == "bcep":
            problems = _edge_partition_problems(gf, [[i - 1 for i in p] for p in doc["parts"]])
            if problems:
                raise VerificationFailed("; ".join(problems))
            parts = []
        else:
            _verify(g, parts, lower, upper)
    return _document("verify", len(parts), args.c, None, lower if parts else [], upper if parts else [],
                     parts, None)


def _run_gen(args) -> str:
    try:
        lo, hi = (int(x) for x in args.weights.split(":"))
    except ValueError:
        raise PreconditionViolated(f"bad --weights {args.weights!r}, expected lo:hi") from None
    if args.n is None:
        raise PreconditionViolated("gen needs --n")
    models = {
        "path": lambda: gen_mod.Path(),
        "cycle": lambda: gen_mod.Cycle(),
        "star": lambda: gen_mod.Star(args.n - 1),
        "line-gnp": lambda: gen_mod.LineGraphOfGnp(args.p),
        "harary": lambda: gen_mod.HararyPlus(_need_k(args), args.extra),
    }
    if args.model not in models:
        raise PreconditionViolated(f"unknown model {args.model!r}; choose from {sorted(models)}")
    spec = gen_mod.GenSpec(seed=args.seed, n=args.n, model=models[args.model](),
                           weight_range=(lo, hi), max_edges=args.max_edges)
    if args.model == "line-gnp":
        g = gen_mod.gen_clawfree(spec)
    elif args.model == "harary":
        g = gen_mod.gen_k_connected(spec)
    else:
        g = gen_mod.gen_graph(spec)
    return format_graph(g)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partition", description="Approximately balanced connected partitions.")
    p.add_argument("mode", choices=MODES)
    p.add_argument("--input")
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--targets", help="comma-separated target weights")
    p.add_argument("--objective", choices=("min-max", "max-min"), default="min-max",
                   help="objective for bcep and oracle")
    p.add_argument("--partition", help="result document to check in verify mode")
    p.add_argument("--verify-claw-free", action="store_true")
    p.add_argument("--verify-k-connected", action="store_true")
    p.add_argument("--debug-asserts", action="store_true")
    p.add_argument("--output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", default="line-gnp")
    p.add_argument("--n", type=int)
    p.add_argument("--weights", default="1:1")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--extra", type=int, default=0)
    p.add_argument("--max-edges", type=int)
    return p


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Execute one invocation; returns ``(exit_code, stdout_text, stderr_text)``."""
    args = build_parser().parse_args(list(argv))
    try:
        if args.mode == "gen":
            out = _run_gen(args)
        else:
            if not args.input:
                raise PreconditionViolated("--input is required")
            gf = read_graph_file(args.input)
            if args.mode in ("bcp-min-max", "bcp-max-min"):
                doc = _run_bcp(args, gf)
            elif args.mode == "bcep":
                doc = _run_bcep(args, gf)
            elif args.mode == "oracle":
                doc = _run_oracle(args, gf)
            elif args.mode == "verify":
                doc = _run_verify(args, gf)
            else:
                doc = _run_gl(args, gf)
            out = json.dumps(doc) + "\n"
    except (GraphFormatError, GraphError) as exc:
        return EXIT_PARSE, "", f"parse error: {exc}\n"
    except (PreconditionViolated, VerificationFailed) as exc:
        return EXIT_PRECONDITION, "", f"error: {exc}\n"
    except InvariantViolation as exc:
        return EXIT_INVARIANT, "", f"internal invariant violation: {exc}\n"
    except PartitionError as exc:
        return EXIT_PRECONDITION, "", f"error: {exc}\n"
    if args.output:
        FilePath(args.output).write_text(out)
        return EXIT_OK, "", ""
    return EXIT_OK, out, ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
