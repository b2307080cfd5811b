"""Approximately balanced connected partitions of vertex-weighted graphs."""

from .bcp import (
    BcepSolution,
    BcpSolution,
    adjust_part_count,
    balanced_partition,
    bcep,
    extract_bounded_set,
    max_min_bcp,
    max_min_feasible,
    min_max_bcp,
)
from .divide import Separator, Split, divide_or_separator, find_separator, try_divide_with_separator
from .errors import *  # noqa: F401,F403
from .gen import GenSpec, SplitMix64, gen_clawfree, gen_k_connected, gen_weights
from .gl import (
    GlPacking,
    GlResult,
    TargetWeights,
    balanced_kconnected,
    bounded_gl,
    double_bounded_gl,
    gl_one_side,
)
from .graph import (
    DfsTree,
    WeightedGraph,
    build_graph,
    connected_components,
    dfs_tree,
    is_claw_free,
    is_connected,
    is_cvp,
    line_graph,
    neighbors_of_set,
    validate_dfs_tree,
    vertex_connectivity_at_least,
)
from .oracle import (
    OracleBudget,
    enumerate_connected_k_partitions,
    oracle_divide,
    oracle_gl_feasible,
    oracle_opt_bcp,
)

__version__ = "0.1.0"
