from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conpart.errors import (
    InnerLoopCapExceeded,
    InvariantViolation,
    NoBigComponent,
    NoPath,
    NotKConnected,
    PreconditionViolated,
)
from conpart.gen import GenSpec, HararyPlus, SplitMix64, gen_k_connected, gen_targets
from conpart.gl import (
    BothSidePacking,
    HasSeparator,
    NoSeparator,
    TargetWeights,
    balanced_kconnected,
    balanced_targets,
    bounded_gl,
    build_transfer_graph,
    carve_T_i,
    double_bounded_gl,
    find_transfer_path,
    gl_one_side,
    preprocess_heavy,
    transfer_vertices,
    truncate_set,
)
from conpart.graph import build_graph, is_connected, is_cvp, partition_problems
from helpers import complete, cycle, path, star

THIRD = Fraction(1, 3)


@st.composite
def gl_instances(draw, max_k=5, max_n=24):
    k = draw(st.integers(2, max_k))
    n = draw(st.integers(k + 1, max_n))
    seed = draw(st.integers(0, 2**64 - 1))
    hi = draw(st.integers(1, 8))
    extra = draw(st.integers(0, n))
    g = gen_k_connected(GenSpec(seed, n, HararyPlus(k, extra), (1, hi)))
    if g.total_weight < k * g.w_max():
        g = build_graph(g.n, g.edges(), [1] * g.n)
    targets = gen_targets(g.total_weight, k, g.w_max(), SplitMix64(seed ^ 0x5A5A))
    order = draw(st.permutations(range(k)))
    return g, [targets[i] for i in order]


def ring_with_hub(p, q_order, q_weight):
    """Hub 0, rim 1..p, and connector q_order[i] joining rim i+1 to rim i+2 (cyclically)."""
    edges = {(0, v) for v in range(1, p + 1)}
    for i, x in enumerate(q_order):
        a, b = 1 + i, 1 + (i + 1) % p
        edges |= {(a, x), (b, x)}
    return build_graph(2 * p + 1, sorted(edges), [1] * (p + 1) + [q_weight] * p)


# -- targets and preprocessing ------------------------------------------------------------

def test_target_weights_sorting_and_ratio():
    tw = TargetWeights.from_sequence([2, 5, 3])
    assert tw.targets == (5, 3, 2)
    assert tw.order == (1, 2, 0)
    assert tw.ratio == Fraction(5, 2)
    assert tw.to_caller(["a", "b", "c"]) == ["c", "a", "b"]


def test_target_weights_rejects_bad_input():
    with pytest.raises(PreconditionViolated):
        TargetWeights.from_sequence([])
    with pytest.raises(PreconditionViolated):
        TargetWeights.from_sequence([3, 0])


def test_preprocess_peels_two_singletons():
    work, remaining, fixed = preprocess_heavy(complete(5), [3, 1, 1], Fraction(1))
    assert remaining == [0]
    assert fixed == {1: 0, 2: 1}
    assert work == {2, 3, 4}


def test_preprocess_noop_when_light():
    g = complete(8)
    work, remaining, fixed = preprocess_heavy(g, [4, 4], THIRD)
    assert work == g.vertices() and remaining == [0, 1] and fixed == {}


def test_preprocess_single_vertex():
    g = build_graph(1, [], [4])
    work, remaining, fixed = preprocess_heavy(g, [4], Fraction(1))
    assert work == frozenset() and remaining == [] and fixed == {0: 0}


def test_preprocess_prefers_smallest_eligible_index():
    g = path(4, [3, 1, 1, 1])
    work, remaining, fixed = preprocess_heavy(g, [3, 3], Fraction(1))
    assert fixed == {0: 0} and remaining == [1]


def test_preprocess_preconditions():
    with pytest.raises(PreconditionViolated):
        preprocess_heavy(path(3), [1, 2], THIRD)
    with pytest.raises(PreconditionViolated):
        preprocess_heavy(path(3, [1, 3, 1]), [3, 2], THIRD)


@given(gl_instances(), st.sampled_from([THIRD, Fraction(1)]))
def test_preprocess_residual_invariants(inst, alpha):
    g, targets = inst
    desc = sorted(targets, reverse=True)
    work, remaining, fixed = preprocess_heavy(g, desc, alpha)
    if remaining:
        assert g.w_max(work) < alpha * desc[remaining[-1]]
        assert sum(desc[p] for p in remaining) <= g.weight_of(work)
    for pos, v in fixed.items():
        assert alpha * desc[pos] <= g.weight[v] <= 3 * alpha * desc[pos]


# -- carving -----------------------------------------------------------------------------------

def test_carve_unit_path():
    assert carve_T_i(path(6), frozenset(range(6)), 6, THIRD) == {0, 1}


def test_carve_whole_component():
    g = path(4)
    assert carve_T_i(g, frozenset({2, 3}), 6, THIRD) == {2, 3}


def test_carve_heavy_vertices_stay_in_window():
    g = path(3, [2, 2, 2])
    t = carve_T_i(g, frozenset(range(3)), 7, THIRD)
    assert t == {0, 1} and THIRD * 7 <= 4 <= 7


def test_carve_needs_big_component():
    with pytest.raises(NoBigComponent):
        carve_T_i(path(4), frozenset({0, 2}), 9, THIRD)


# -- BoundedGL ------------------------------------------------------------------------------------

def test_bounded_gl_c4():
    packing = bounded_gl(cycle(4), [2, 2], Fraction(1))
    assert packing.ell == 2
    assert sorted(map(sorted, packing.sets)) == [[0, 1], [2, 3]]


def test_bounded_gl_k1_is_whole_graph():
    g = cycle(5, [1, 2, 3, 4, 5])
    assert bounded_gl(g, [15], Fraction(1)).sets == [g.vertices()]


def test_bounded_gl_k4_lower():
    g = complete(4)
    packing = bounded_gl(g, [2, 1, 1], THIRD)
    assert packing.ell <= 3
    for s, w in zip(packing.sets, [2, 1, 1]):
        assert s is not None and THIRD * w <= g.weight_of(s) <= w


def test_bounded_gl_rejects_bad_alpha_and_sums():
    with pytest.raises(PreconditionViolated):
        bounded_gl(cycle(4), [2, 2], Fraction(1, 2))
    with pytest.raises(PreconditionViolated, match="sum of targets"):
        bounded_gl(cycle(4), [2, 1], THIRD)
    with pytest.raises(PreconditionViolated, match="w_max"):
        bounded_gl(cycle(4, [1, 1, 1, 3]), [5, 1], THIRD)


def test_bounded_gl_verifies_connectivity_on_request():
    with pytest.raises(NotKConnected):
        bounded_gl(path(4), [2, 2], THIRD, verify_k_connected=True)


def test_bounded_gl_divide_routine_fires():
    # two hubs joined to every leaf: carving T_1 takes both hubs and isolates the leaves
    edges = [(0, 1)] + [(h, leaf) for h in (0, 1) for leaf in range(2, 12)]
    g = build_graph(12, edges, [1] * 12)
    packing = bounded_gl(g, [6, 6], THIRD, debug=True)
    assert packing.stats.divide_calls >= 1
    assert packing.stats.inner_iterations_max >= 1
    for s, w in zip(packing.sets, [6, 6]):
        assert THIRD * w <= g.weight_of(s) <= w


def test_bounded_gl_component_removal_fires():
    # the carved set is a star around the hub; connectors then arrive one at a time
    g = ring_with_hub(10, [13, 18, 14, 12, 17, 11, 20, 15, 16, 19], 4)
    packing = bounded_gl(g, [34, 17], THIRD, debug=True)
    assert packing.stats.component_removals == 1
    assert isinstance(packing.categories[0], (HasSeparator, NoSeparator))
    for s, w in zip(packing.sets, [34, 17]):
        assert THIRD * w <= g.weight_of(s) <= w
    assert partition_problems(g, packing.sets, cover=False) == []


def test_inner_loop_cap_is_an_invariant_violation():
    assert issubclass(InnerLoopCapExceeded, InvariantViolation)


@settings(max_examples=120, deadline=None)
@given(gl_instances(), st.sampled_from([THIRD, Fraction(1)]))
def test_bounded_gl_window(inst, alpha):
    g, targets = inst
    packing = bounded_gl(g, targets, alpha, debug=True)
    sets = [s for s in packing.sets if s is not None]
    assert partition_problems(g, sets, cover=False) == []
    for s, w in zip(packing.sets, targets):
        if s is not None:
            assert alpha * w <= g.weight_of(s) <= 3 * alpha * w
    if packing.ell < len(targets):
        assert is_cvp(g, sets)
    if alpha == THIRD:
        assert packing.ell == len(targets)
    assert packing.stats.inner_iterations_max <= g.n**2


# -- one-side -------------------------------------------------------------------------------------

def test_one_side_c4_lower():
    res = gl_one_side(cycle(4), [2, 2], "lower")
    assert is_cvp(cycle(4), res.parts)
    assert all(3 * cycle(4).weight_of(p) >= 2 for p in res.parts)


def test_one_side_c4_upper():
    res = gl_one_side(cycle(4), [2, 2], "upper")
    assert is_cvp(cycle(4), res.parts)
    assert all(cycle(4).weight_of(p) <= 6 for p in res.parts)


def test_one_side_k5_upper():
    g = complete(5)
    res = gl_one_side(g, [3, 1, 1], "upper")
    assert len(res.parts) == 3 and is_cvp(g, res.parts)
    assert all(g.weight_of(p) <= 3 * w for p, w in zip(res.parts, [3, 1, 1]))


def test_one_side_keeps_caller_order():
    g = complete(5)
    res = gl_one_side(g, [1, 3, 1], "upper")
    assert res.targets == (1, 3, 1)
    assert all(g.weight_of(p) <= 3 * w for p, w in zip(res.parts, [1, 3, 1]))


def test_one_side_unknown_side():
    with pytest.raises(PreconditionViolated):
        gl_one_side(cycle(4), [2, 2], "middle")


@settings(max_examples=120, deadline=None)
@given(gl_instances())
def test_one_side_bounds(inst):
    g, targets = inst
    lower = gl_one_side(g, targets, "lower", debug=True)
    assert is_cvp(g, lower.parts) and len(lower.parts) == len(targets)
    assert all(3 * g.weight_of(p) >= w for p, w in zip(lower.parts, targets))
    upper = gl_one_side(g, targets, "upper", debug=True)
    assert is_cvp(g, upper.parts) and len(upper.parts) == len(targets)
    assert all(g.weight_of(p) <= 3 * w for p, w in zip(upper.parts, targets))


# -- truncation ---------------------------------------------------------------------------------------

def test_truncate_identity():
    assert truncate_set(path(4), {0, 1, 2}, 1, 5) == {0, 1, 2}


def test_truncate_unit_path():
    g = path(10)
    t = truncate_set(g, range(10), 2, 7)
    assert t == set(range(3, 10))
    assert is_connected(g, t)


def test_truncate_star_removes_leaves():
    g = star(5)
    assert truncate_set(g, range(6), 1, 3) == {0, 4, 5}


def test_truncate_precondition():
    with pytest.raises(PreconditionViolated):
        truncate_set(path(3, [1, 4, 1]), range(3), 2, 4)


# -- transfer graph and TransferVertices ---------------------------------------------------------------

def test_transfer_graph_c6_unsatisfied_pairs():
    g = cycle(6)
    packing = BothSidePacking(g, (3, 3), [frozenset({0, 1}), frozenset({3, 4})])
    h = build_transfer_graph(packing)
    kinds = [(n.kind, sorted(n.vertices)) for n in h.nodes]
    assert kinds == [("t-minus", [0, 1]), ("t-minus", [3, 4]), ("q", [2]), ("q", [5])]
    assert h.adj == [[2, 3], [2, 3], [0, 1], [0, 1]]


def test_transfer_graph_c6_satisfied_pairs_drop_separators():
    g = cycle(6)
    packing = BothSidePacking(g, (2, 2), [frozenset({0, 1}), frozenset({3, 4})])
    h = build_transfer_graph(packing)
    kinds = [(n.kind, n.owner, sorted(n.vertices)) for n in h.nodes]
    assert kinds == [("tb-component", 0, [1]), ("tb-component", 1, [4]), ("q", None, [2]), ("q", None, [5])]
    assert h.adj == [[2], [3], [0], [1]]
    assert h.categories == {0: HasSeparator(0, [frozenset({1})]), 1: HasSeparator(3, [frozenset({4})])}


def test_transfer_graph_without_q_nodes():
    g = cycle(4)
    packing = BothSidePacking(g, (2, 2), [frozenset({0, 1}), frozenset({2, 3})])
    h = build_transfer_graph(packing)
    assert all(n.kind != "q" for n in h.nodes)
    with pytest.raises(NoPath):
        find_transfer_path(h)


def test_find_path_picks_shortest():
    # Q = {4} touches both the C_4 set and T^- = {5}; the direct hop wins
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 5), (5, 2)], [1] * 6)
    packing = BothSidePacking(g, (2, 2), [frozenset({0, 1, 2, 3}), frozenset({5})])
    h = build_transfer_graph(packing)
    route = find_transfer_path(h)
    assert [h.nodes[i].kind for i in route] == ["q", "t-minus"]


def test_transfer_absorb_length_one():
    g = path(4)
    packing = BothSidePacking(g, (2, 2), [frozenset({0, 1}), frozenset({2})])
    h = build_transfer_graph(packing)
    route = find_transfer_path(h)
    assert len(route) == 2
    assert transfer_vertices(packing, h, route) == ("absorb",)
    assert packing.sets[1] == {2, 3}


def test_transfer_replace_when_q_is_heavy():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)], [1, 1, 1, 3])
    packing = BothSidePacking(g, (3, 3), [frozenset({0, 1}), frozenset({2})])
    h = build_transfer_graph(packing)
    route = find_transfer_path(h)
    assert packing.u() == 0
    assert transfer_vertices(packing, h, route) == ("replace",)
    assert packing.sets == [{3}, {2}]
    assert packing.problems() == []


def test_transfer_divide_through_ta_set():
    # T_1 = C_6 with no 2-separator, T_2 = {6} short of its target, Q = {7} beyond T_1
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (3, 6), (1, 7), (4, 7)]
    g = build_graph(8, [(min(a, b), max(a, b)) for a, b in edges], [1] * 8)
    packing = BothSidePacking(g, (2, 2), [frozenset(range(6)), frozenset({6})])
    h = build_transfer_graph(packing)
    route = find_transfer_path(h)
    assert [h.nodes[i].kind for i in route] == ["q", "ta-set", "t-minus"]
    before = packing.measure()
    assert transfer_vertices(packing, h, route) == ("divide",)
    assert packing.problems() == []
    assert all(packing.satisfied(j) for j in range(2))
    assert packing.measure() > before


def test_transfer_accumulate_then_replace():
    # T_1 is a spider around 0 with legs of weight 2, so 0 is its 3-separator
    edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (0, 7), (7, 8), (2, 9), (1, 10)]
    g = build_graph(11, edges, [1] * 11)
    packing = BothSidePacking(g, (3, 3), [frozenset(range(9)), frozenset({10})])
    h = build_transfer_graph(packing)
    route = find_transfer_path(h)
    assert [h.nodes[i].kind for i in route] == ["q", "tb-component", "t-minus"]
    assert transfer_vertices(packing, h, route) == ("accumulate", "replace")
    assert packing.sets[1] == {1, 2, 9}
    assert packing.sets[0] == {0, 3, 4, 5, 6, 7, 8}
    assert packing.problems() == []
    assert packing.measure() == (2, 10)


def test_transfer_swap_through_set_outside_tstar():
    # T_2 = C_9 already meets its target but T_1 (larger target) does not
    edges = [(i, (i + 1) % 9) for i in range(9)] + [(9, 10), (0, 9), (4, 11)]
    g = build_graph(12, [(min(a, b), max(a, b)) for a, b in edges], [1] * 12)
    packing = BothSidePacking(g, (4, 3), [frozenset({9, 10}), frozenset(range(9))])
    assert packing.tstar() == [] and packing.u() == 0
    h = build_transfer_graph(packing)
    route = find_transfer_path(h)
    assert [h.nodes[i].kind for i in route] == ["q", "ta-set", "t-minus"]
    assert transfer_vertices(packing, h, route) == ("swap",)
    assert packing.sets[1] == {9, 10}
    assert packing.sets[0] == set(range(9)) | {11}
    assert packing.problems() == []
    assert packing.tstar() == [0]


def test_tstar_relabels_equal_targets():
    g = path(6)
    packing = BothSidePacking(g, (2, 2, 2), [frozenset({0}), frozenset({2, 3}), frozenset({5})])
    assert packing.relabeled() == [1, 0, 2]
    assert packing.tstar() == [1]
    assert packing.u() == 0


# -- both-side and balanced ------------------------------------------------------------------------------------

def test_double_c4():
    g = cycle(4)
    res = double_bounded_gl(g, [2, 2])
    assert is_cvp(g, res.parts)
    assert all(1 <= g.weight_of(p) <= 6 for p in res.parts)


def test_double_k5():
    g = complete(5)
    res = double_bounded_gl(g, [3, 1, 1])
    assert is_cvp(g, res.parts)
    for p, w in zip(res.parts, [3, 1, 1]):
        assert 3 * g.weight_of(p) >= w and g.weight_of(p) <= 3 * w


def test_double_complete_uniform():
    g = complete(8)
    res = double_bounded_gl(g, [2, 2, 2, 2])
    assert is_cvp(g, res.parts)
    assert all(1 <= g.weight_of(p) <= 6 for p in res.parts)


@settings(max_examples=120, deadline=None)
@given(gl_instances())
def test_double_bounds_and_progress(inst):
    g, targets = inst
    res = double_bounded_gl(g, targets, debug=True)
    assert is_cvp(g, res.parts) and len(res.parts) == len(targets)
    ratio = max(Fraction(max(targets), min(targets)), Fraction(3))
    for p, w in zip(res.parts, targets):
        assert 3 * g.weight_of(p) >= w
        assert g.weight_of(p) <= ratio * w
    prog = res.stats.progress
    assert all(a < b for a, b in zip(prog, prog[1:]))
    assert res.stats.transfer_iterations <= len(targets) * g.n


def test_balanced_targets():
    assert balanced_targets(10, 3) == [4, 3, 3]
    assert balanced_targets(9, 3) == [3, 3, 3]


def test_balanced_c4():
    g = cycle(4)
    res = balanced_kconnected(g, 2)
    assert all(1 <= g.weight_of(p) <= 6 for p in res.parts)


def test_balanced_k1():
    g = cycle(5)
    assert balanced_kconnected(g, 1).parts == (g.vertices(),)


def test_balanced_c6_k3():
    g = cycle(6)
    res = balanced_kconnected(g, 3)
    assert is_cvp(g, res.parts)
    # floor(6/3)/3 = 2/3 rounds up to 1 for integer weights
    assert all(1 <= g.weight_of(p) <= 6 for p in res.parts)


def test_balanced_precondition():
    with pytest.raises(PreconditionViolated):
        balanced_kconnected(cycle(4, [1, 1, 1, 9]), 2)
