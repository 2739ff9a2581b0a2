import itertools

import pytest

from soclelab.budget import Budget
from soclelab.errors import BudgetExceeded, InputError, PreconditionError
from soclelab.exactla import Mat, Subspace, all_subspaces, enum_coeff_points, vec_combo
from soclelab.gf import field_make
from soclelab.gallery import make_cross, make_line_cover_system
from soclelab.strongness import (
    BilinearSystem,
    BlockSpec,
    n_strong,
    no_union_cover,
    predicates,
    prop41_check,
    relative_n_strong,
    small_conditions,
    strength_budget,
    system_graph,
    union_split,
    _iter_span_elements,
)
from soclelab.tensorcover import to_bilinear

GF2 = field_make(2)
GF3 = field_make(3)


def full_hom_system(field, s, t):
    gens = tuple(Mat.unit(field, t, s, i, j) for i in range(t) for j in range(s))
    return BilinearSystem(field, (BlockSpec(1, s),), (BlockSpec(1, t),), gens)


LINE_COVER_2 = make_line_cover_system(GF2, 2)


# -- base predicates --------------------------------------------------------------

def test_line_cover_predicates():
    preds = predicates(LINE_COVER_2)
    assert preds.nondegenerate and preds.cond_b and preds.cond_c


def test_zero_system_predicates():
    sys0 = BilinearSystem(GF2, (BlockSpec(1, 1),), (BlockSpec(1, 1),), ())
    preds = predicates(sys0)
    assert preds.nondegenerate          # vacuous for empty A
    assert not preds.cond_b             # nothing annihilates the zero submodule... there is no nonzero a at all


def test_cross_system_predicates():
    preds = predicates(to_bilinear(make_cross(2, 2, GF2)))
    assert preds.all_hold()


def test_dependent_generators_fail_nondegeneracy():
    a = Mat.unit(GF2, 2, 2, 0, 0)
    sys_dep = BilinearSystem(GF2, (BlockSpec(1, 2),), (BlockSpec(1, 2),), (a, a))
    assert not predicates(sys_dep).nondegenerate


def test_balance_verification_rejects_non_bimodule():
    # a single off-diagonal unit between two S-blocks is not closed under
    # the block projectors acting on a two-block codomain side
    gens = (Mat.from_rows(GF2, [[1, 0], [0, 1]]),)
    with pytest.raises(InputError, match="sub-bimodule"):
        BilinearSystem(GF2, (BlockSpec(1, 1), BlockSpec(1, 1)),
                       (BlockSpec(1, 1), BlockSpec(1, 1)), gens)


# -- small conditions --------------------------------------------------------------

def test_line_cover_small_conditions():
    sc = small_conditions(LINE_COVER_2)
    assert sc.matrix_blocks and sc.swap_both and sc.swap_either


def test_small_conditions_on_split_systems_never_break_the_chain():
    systems = [
        full_hom_system(GF2, 2, 2),
        full_hom_system(GF3, 1, 2),
        to_bilinear(make_cross(2, 3, GF2)),
        make_line_cover_system(GF3, 2),
    ]
    for sys_obj in systems:
        sc = small_conditions(sys_obj)
        # the proved implication chain: blocks => both => either
        assert sc.matrix_blocks
        assert sc.swap_both
        assert sc.swap_either


def test_small_conditions_vacuous_on_missing_block_pairs():
    # A touches only the first S-block: the untouched pair is vacuously fine,
    # and the block structure keeps the implication chain intact
    gens = (Mat.from_rows(GF2, [[1, 0]]),)
    sys_obj = BilinearSystem(GF2, (BlockSpec(1, 1), BlockSpec(1, 1)), (BlockSpec(1, 1),), gens)
    sc = small_conditions(sys_obj)
    assert sc.matrix_blocks and sc.swap_both and sc.swap_either
    assert sys_obj.corner_span(0, 1).dim == 0  # the empty pair


def test_small_conditions_budget():
    big = full_hom_system(GF3, 3, 3)
    with pytest.raises(BudgetExceeded):
        small_conditions(big, Budget(max_enumeration=5))


# -- strength ------------------------------------------------------------------------

def test_line_cover_strength_pattern():
    assert n_strong(LINE_COVER_2, "left", 2, t_block=0).strong
    for e in range(3):
        assert not n_strong(LINE_COVER_2, "left", 1, t_block=0, s_block=e).strong
    # failing report carries the blocking family
    rep = n_strong(LINE_COVER_2, "left", 1, t_block=0, s_block=0)
    assert rep.witness_family is not None


def test_full_hom_is_q_strong():
    for field in (GF2, GF3):
        q = field.q
        for s, t in ((1, 2), (2, 2), (1, 3)):
            sys_obj = full_hom_system(field, s, t)
            assert n_strong(sys_obj, "left", q, t_block=0).strong
            assert n_strong(sys_obj, "right", q, s_block=0).strong


def test_strength_monotone_in_n():
    sys_obj = full_hom_system(GF3, 2, 2)
    for side in ("left", "right"):
        strengths = [n_strong(sys_obj, side, n).strong for n in (1, 2, 3)]
        # once it fails it must stay failed for larger N
        assert strengths == sorted(strengths, reverse=True)
    assert n_strong(LINE_COVER_2, "left", 2, t_block=0).strong
    assert n_strong(LINE_COVER_2, "left", 1, t_block=0).strong  # weaker condition


def brute_left_strong_all_proper_families(sys_obj, f, N):
    """Oracle for the maximal-family reduction: families drawn from ALL
    proper submodules, not just maximal ones."""
    field = sys_obj.field
    t = sys_obj.t_blocks[f].mult
    proper = [s for s in all_subspaces(field, t) if s.dim < t]
    span = sys_obj.a_span()
    elements = list(_iter_span_elements(field, list(span.basis_rows))) if span.dim else []
    size = int(N)
    for k in range(0, min(size, len(proper)) + 1):
        for family in itertools.combinations(proper, k):
            found = False
            for vec in elements:
                a = Mat(field, sys_obj.dim_c, sys_obj.dim_b, tuple(vec))
                mult = sys_obj.image_mult_space(a, f)
                if mult.dim != 1:
                    continue
                if all(not member.contains(mult) for member in family):
                    found = True
                    break
            if not found:
                return False
    return True


def test_maximal_family_reduction_is_exact():
    # exhaustive comparison against the all-proper-families oracle at q = 2
    samples = [
        full_hom_system(GF2, 1, 2),
        full_hom_system(GF2, 2, 2),
        full_hom_system(GF2, 1, 3),
        LINE_COVER_2,
    ]
    # plus every 1- and 2-dimensional span inside Hom(k^1, k^2)
    for flat in all_subspaces(GF2, 2):
        if flat.dim == 0:
            continue
        gens = tuple(Mat(GF2, 2, 1, row) for row in flat.basis_rows)
        samples.append(BilinearSystem(GF2, (BlockSpec(1, 1),), (BlockSpec(1, 2),), gens))
    for sys_obj in samples:
        for N in (1, 2, 3):
            fast = n_strong(sys_obj, "left", N, t_block=0).strong
            slow = brute_left_strong_all_proper_families(sys_obj, 0, N)
            assert fast == slow, (sys_obj.to_json(), N)


def test_budget_guard_on_families():
    sys_obj = full_hom_system(GF3, 3, 3)
    with pytest.raises(BudgetExceeded):
        n_strong(sys_obj, "left", 13, budget=Budget(max_enumeration=50))


# -- the union law ----------------------------------------------------------------------

def test_union_split_line_cover():
    parts = [LINE_COVER_2.corner_maps(0, e) for e in range(3)]
    idx, rep = union_split(LINE_COVER_2, parts, "left", 2, t_block=0)
    assert idx is not None
    assert rep.strong  # the found part is 2/3-strong (empty families + simple image)


def test_union_split_single_part():
    sys_obj = full_hom_system(GF2, 1, 2)
    idx, rep = union_split(sys_obj, [list(sys_obj.a_basis)], "left", 2, t_block=0)
    assert idx == 0 and rep.strong
    weak = BilinearSystem(GF2, (BlockSpec(1, 1),), (BlockSpec(1, 2),),
                          (Mat.unit(GF2, 2, 1, 0, 0),))
    idx2, rep2 = union_split(weak, [list(weak.a_basis)], "left", 2, t_block=0)
    assert idx2 is None and not rep2.strong
    assert rep2.witness_family is not None


def test_union_split_not_strong_returns_counterexample():
    # two spans that each miss a line: their union misses a 2-family
    part1 = [Mat.unit(GF2, 2, 1, 0, 0)]
    part2 = [Mat.unit(GF2, 2, 1, 1, 0)]
    sys_obj = full_hom_system(GF2, 1, 2)
    idx, rep = union_split(sys_obj, [part1, part2], "left", 2, t_block=0)
    assert idx is None and not rep.strong


# -- the covering law ---------------------------------------------------------------------

def test_no_union_cover_values():
    assert no_union_cover(GF2, BlockSpec(1, 2), 2)
    assert not no_union_cover(GF2, BlockSpec(1, 2), 3)  # 3 lines do cover; N > q
    assert no_union_cover(GF3, BlockSpec(1, 2), 3)
    assert no_union_cover(GF2, BlockSpec(2, 1), 2)
    assert no_union_cover(GF3, BlockSpec(1, 3), 3)


# -- the length inequality -----------------------------------------------------------------

def test_prop41_line_cover_values():
    rep = prop41_check(LINE_COVER_2)
    assert (rep.lt_b, rep.lt_c, rep.lt_a) == (3, 2, 3)
    assert rep.graph.chi == 1
    assert (rep.lhs, rep.rhs, rep.holds) == (5, 4, False)
    failed = [k for k, v in rep.hypotheses_met.items() if not v]
    assert failed == ["cardD"]
    b = rep.budget
    assert (b.N_T, b.d_T, b.l_S, b.N_S, b.d_S, b.l_T) == (2, 3, 1, 2, 1, 2)


def test_prop41_cross_system_over_f3_holds():
    rep = prop41_check(to_bilinear(make_cross(2, 2, GF3)))
    assert (rep.lhs, rep.rhs) == (4, 4)
    assert rep.holds
    assert all(rep.hypotheses_met.values())


def test_prop41_line_cover_family():
    expected = {(2, 2): (5, 4), (3, 2): (6, 5), (2, 3): (10, 8)}
    for (q, d), (lhs, rhs) in expected.items():
        rep = prop41_check(make_line_cover_system(field_make(q), d))
        assert (rep.lhs, rep.rhs) == (lhs, rhs)
        assert not rep.holds
        assert not rep.hypotheses_met["cardD"]


def test_system_graph_structure():
    graph, lt_a = system_graph(LINE_COVER_2)
    assert len(graph.left_vertices) == 1 and len(graph.right_vertices) == 3
    assert lt_a == 3 and graph.edge_lengths == (1, 1, 1)


# -- relative strength (experimental) --------------------------------------------------------

def test_relative_base_case():
    line = Subspace.from_vectors(GF2, 2, [(1, 0)])
    assert relative_n_strong(LINE_COVER_2, 1, line, t_block=0)
    # a span missing that line is not relatively strong against it
    weak = BilinearSystem(GF2, (BlockSpec(1, 1),), (BlockSpec(1, 2),),
                          (Mat.unit(GF2, 2, 1, 1, 0),))
    assert not relative_n_strong(weak, 1, line, t_block=0)


def test_relative_full_map_space_small_n():
    for field in (GF2, GF3):
        q = field.q
        for s, t in ((1, 2), (2, 2)):
            sys_obj = full_hom_system(field, s, t)
            target = Subspace.full(field, t)
            for n in range(1, q):
                assert relative_n_strong(sys_obj, n, target, t_block=0)


def test_relative_consistency_with_simple_coverage():
    # when every simple submodule receives a map and q >= N, the recursive
    # notion holds against the full codomain
    for sys_obj in (LINE_COVER_2, make_line_cover_system(GF3, 2), full_hom_system(GF3, 2, 2)):
        field = sys_obj.field
        t = sys_obj.t_blocks[0].mult
        preds = predicates(sys_obj)
        if not preds.cond_c:
            continue
        for n in range(1, field.q + 1):
            assert relative_n_strong(sys_obj, n, Subspace.full(field, t), t_block=0)


def test_relative_needs_nonzero_target():
    with pytest.raises(PreconditionError):
        relative_n_strong(LINE_COVER_2, 1, Subspace.zero(GF2, 2), t_block=0)


# -- serialization ------------------------------------------------------------------------------

def test_system_json_round_trip():
    for sys_obj in (LINE_COVER_2, full_hom_system(GF3, 2, 2)):
        data = sys_obj.to_json()
        again = BilinearSystem.from_json(data)
        assert again.to_json() == data
