from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from data import A1, A2, COUNTEREXAMPLE
from reflexive_forge.complexes import (
    all_complexes,
    boundary_of_simplex,
    full_simplex,
    incidence_columns,
    incidence_matrix,
    induced_subcomplex,
    stable_set_complex,
)
from reflexive_forge.graphs import complete_graph, cycle_graph, path_graph
from reflexive_forge.toric import (
    Binomial,
    Configuration,
    CrossCheckMismatch,
    DegreeBoundExceeded,
    MonomialIdeal,
    MonomialOrder,
    NotHarmony,
    NotSquarefree,
    NotSquarefreeInput,
    ToricError,
    TooLarge,
    buchberger,
    divisibility_order,
    exists_squarefree_revlex_z_smallest,
    facet_widths,
    fiber,
    in_ideal,
    initial_ideal,
    is_compressed,
    is_groebner,
    is_harmony,
    is_squarefree,
    merge_config,
    parse_configuration,
    parse_order,
    shuffled,
    standard_monomials_biject_fibers,
    theorem1_construction,
    toric_groebner_basis,
    toric_ideal_generators,
    triangulation_from_initial_ideal,
    verify_theorem1,
)

CE = Configuration.from_matrix(COUNTEREXAMPLE, sharp=True)
A2_SHARP = Configuration.from_columns([(1, 0), (0, 1), (1, 1), (0, 0)])
K2_MERGED = merge_config(A1, A1)


def as_strings(config, binomials):
    return {config.format_binomial(b) for b in binomials}


def as_sets(config, binomials):
    """Binomials as unordered pairs of printed monomials (sign free)."""
    return {frozenset((config.format_monomial(b.plus), config.format_monomial(b.minus))) for b in binomials}


def block(cx):
    return [c for c in incidence_columns(cx) if any(c)]


# configurations and text formats

def test_configuration_names_and_zero_column():
    assert CE.names == ("x1", "x2", "x3", "x4", "x5", "x6", "x7", "z")
    assert CE.zero_index == 7
    assert A2_SHARP.image((1, 1, 0, 0)) == (1, 1, 2)


def test_configuration_rejects_duplicates():
    with pytest.raises(ToricError):
        Configuration.from_columns([(1, 0), (1, 0)])
    with pytest.raises(ToricError):
        Configuration.from_matrix([[1, 0], [0, 0]], sharp=True)


def test_parse_configuration():
    config = parse_configuration("2 3\n1 0 1\n0 1 1\nsharp\n")
    assert config == A2_SHARP
    assert not parse_configuration("1 2\n1 2\n").has_zero_column
    with pytest.raises(ValueError):
        parse_configuration("1 2\n1 2\nflat\n")


def test_binomial_formatting():
    b = Binomial.from_vector((1, -2, 0, 1, 0, -1, 0, 0))
    assert CE.format_binomial(b) == "x1*x4 - x2^2*x6"


# orders

def test_revlex_comparison_rule():
    order = MonomialOrder((0, 1, 2))  # x1 > x2 > x3
    # higher degree wins
    assert order.greater((0, 0, 2), (1, 0, 0))
    # equal degree: smaller exponent in the smallest differing variable wins
    assert order.greater((1, 1, 0), (1, 0, 1))
    assert order.greater((0, 2, 0), (1, 0, 1))
    assert order.greater((2, 0, 0), (0, 2, 0))
    assert not order.greater((1, 0, 1), (1, 0, 1))


def test_parse_order_forms_agree():
    a = parse_order(CE, "z,x2,x1,x3,x4,x5,x6,x7")
    b = parse_order(CE, "z < x2 < x1 < x3 < x4 < x5 < x6 < x7")
    c = parse_order(CE, "x7 > x6 > x5 > x4 > x3 > x1 > x2 > z")
    assert a == b == c
    assert a.smallest == CE.zero_index
    assert a.describe(CE) == "z < x2 < x1 < x3 < x4 < x5 < x6 < x7"


@pytest.mark.parametrize("text", ["z,x1", "z,x1,x1,x2,x3,x4,x5,x6", "z,x1,x2,x3,x4,x5,x6,x9"])
def test_parse_order_rejects_incomplete(text):
    with pytest.raises(ToricError):
        parse_order(CE, text)


# toric ideal generators

def test_identity_has_zero_toric_ideal():
    assert toric_ideal_generators(Configuration.from_columns([(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == []


def test_a2_sharp_generator():
    assert as_sets(A2_SHARP, toric_ideal_generators(A2_SHARP)) == {frozenset({"x1*x2", "x3*z"})}


def test_counterexample_generator():
    gens = toric_ideal_generators(CE)
    assert as_sets(CE, gens) == {frozenset({"x1*x3*x5*x7", "x2*x4^2*x6"})}


def test_generators_vanish_under_pi():
    configs = [CE, A2_SHARP, K2_MERGED, merge_config(A2, A2)]
    configs += [incidence_matrix(cx) for cx in all_complexes(3)]
    for config in configs:
        for b in toric_ideal_generators(config):
            assert in_ideal(config, b)
            assert not any(x and y for x, y in zip(b.plus, b.minus))


def test_counterexample_fibers_hold_no_hidden_generators():
    # a second generator would show up as a fiber with two standard monomials
    order = parse_order(CE, "z,x2,x1,x3,x4,x5,x6,x7")
    init = initial_ideal(toric_groebner_basis(CE, order))
    assert standard_monomials_biject_fibers(CE, init, 4)


# Buchberger

def test_principal_ideal_is_its_own_basis():
    gens = toric_ideal_generators(A2_SHARP)
    for perm in itertools.permutations(range(4)):
        gb = buchberger(gens, MonomialOrder(perm))
        assert as_sets(A2_SHARP, gb.elements) == {frozenset({"x1*x2", "x3*z"})}


def test_merged_k2_basis():
    data = theorem1_construction(A1, A1)
    gb = toric_groebner_basis(K2_MERGED, data.order)
    assert as_strings(K2_MERGED, gb.elements) == {"y1*x1 - z^2", "y2*x2 - z^2"}
    assert standard_monomials_biject_fibers(K2_MERGED, initial_ideal(gb), 4)


def test_counterexample_first_order():
    gb = toric_groebner_basis(CE, parse_order(CE, "z,x2,x1,x3,x4,x5,x6,x7"))
    assert as_strings(CE, gb.elements) == {"x1*x3*x5*x7 - x2*x4^2*x6"}
    init = initial_ideal(gb)
    assert [CE.format_monomial(m) for m in init.generators] == ["x1*x3*x5*x7"]
    assert init.is_squarefree()


def test_counterexample_second_order():
    init = initial_ideal(toric_groebner_basis(CE, parse_order(CE, "z,x1,x2,x3,x4,x5,x6,x7")))
    assert [CE.format_monomial(m) for m in init.generators] == ["x2*x4^2*x6"]
    assert not is_squarefree(init)


def test_zero_ideal_initial_is_empty():
    config = Configuration.from_columns([(1, 0), (0, 1), (0, 0)])
    init = initial_ideal(toric_groebner_basis(config, MonomialOrder((0, 1, 2))))
    assert init.generators == ()
    assert init.is_squarefree()


SMALL_CONFIGS = [A2_SHARP, K2_MERGED, merge_config(A2, A1), merge_config(A1, A2),
                 incidence_matrix(full_simplex(2)), incidence_matrix(boundary_of_simplex(3)),
                 incidence_matrix(full_simplex(3)), incidence_matrix(stable_set_complex(path_graph(4))),
                 Configuration.from_columns([(2, 0), (1, 1), (0, 2), (0, 0)]),
                 Configuration.from_columns([(3,), (1,), (2,)])]


@pytest.mark.parametrize("config", SMALL_CONFIGS, ids=lambda c: f"n{c.n}")
def test_bases_are_groebner_and_unique(config):
    gens = toric_ideal_generators(config)
    rng = itertools.islice(itertools.permutations(range(config.n)), 0, None, 7)
    for k, perm in enumerate(itertools.islice(rng, 12)):
        order = MonomialOrder(perm)
        gb = buchberger(gens, order)
        assert is_groebner(list(gb.elements), order)
        # reduced: no lead divides a term of another element
        for b in gb.elements:
            for c in gb.elements:
                if b != c:
                    assert not all(x <= y for x, y in zip(b.plus, c.plus))
                    assert not all(x <= y for x, y in zip(b.plus, c.minus))
        for seed in range(3):
            again = buchberger(shuffled(gens, seed + 10 * k), order)
            assert set(again.elements) == set(gb.elements)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=2, max_size=5, unique=True),
       st.randoms(use_true_random=False))
def test_random_configurations_pass_fiber_oracle(cols, rnd):
    config = Configuration.from_columns(cols)
    perm = list(range(config.n))
    rnd.shuffle(perm)
    gb = toric_groebner_basis(config, MonomialOrder(tuple(perm)))
    for b in toric_ideal_generators(config):
        assert in_ideal(config, b)
    assert standard_monomials_biject_fibers(config, initial_ideal(gb), 4)


# harmony and merged configurations

def test_harmony_examples():
    for a in (A1, A2):
        for b in (A1, A2):
            assert is_harmony(a, b)
    assert is_harmony([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert not is_harmony([(2,)], [(1,)])


def test_harmony_rejects_bad_blocks():
    with pytest.raises(ToricError):
        is_harmony([(1, -1)], [(1, 0)])
    with pytest.raises(ToricError):
        is_harmony([(0, 0)], [(1, 0)])


def test_merge_config_columns():
    assert K2_MERGED.columns == ((-1, 0), (0, -1), (1, 0), (0, 1), (0, 0))
    assert K2_MERGED.names == ("y1", "y2", "x1", "x2", "z")
    assert merge_config(block(stable_set_complex(complete_graph(2))), A1) == K2_MERGED
    assert merge_config(A2, A1).n == 6


def test_merged_polygons_are_gorenstein():
    from reflexive_forge.polytopes import VPolytope, is_gorenstein_fano

    shapes = set()
    for a, b in [(A1, A1), (A1, A2), (A2, A2)]:
        p = VPolytope.from_points(merge_config(a, b).columns)
        assert is_gorenstein_fano(p)
        shapes.add(len(p.vertices))
    assert shapes == {4, 5, 6}


def test_divisibility_order_examples():
    order = divisibility_order([(1, 1), (1, 0), (0, 1)])
    assert order.ranking == (0, 1, 2, 3)
    order = divisibility_order([(0, 1), (1, 0), (1, 1)])
    assert order.ranking == (2, 1, 0, 3)
    order = divisibility_order([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert order.ranking == (0, 1, 2, 3)
    assert divisibility_order(block(full_simplex(2))).ranking == (0, 1, 2, 3)


def test_divisibility_order_refines_componentwise_order():
    cols = block(full_simplex(4))
    ranking = divisibility_order(cols).ranking[:-1]
    pos = {i: k for k, i in enumerate(ranking)}
    for i, a in enumerate(cols):
        for j, b in enumerate(cols):
            if a != b and all(x <= y for x, y in zip(a, b)):
                assert pos[j] < pos[i]


# the merged order construction

def test_construction_for_identity_blocks():
    data = theorem1_construction(A1, A1)
    assert data.pairs == ((1, 1), (2, 2))
    assert data.a_initial.generators == () and data.b_initial.generators == ()
    assert {data.config.format_monomial(m) for m in data.monomials.generators} == {"y1*x1", "y2*x2"}
    assert data.order.describe(data.config) == "z < x2 < x1 < y2 < y1"


def test_construction_for_a2_over_a1():
    data = theorem1_construction(A2, A1)
    assert set(data.pairs) == {(1, 1), (2, 2), (3, 1), (3, 2)}
    a_sharp = Configuration.from_columns(A2 + [(0, 0)])
    assert [a_sharp.format_monomial(m) for m in data.a_initial.generators] == ["x1*x2"]
    assert data.b_initial.generators == ()


def test_construction_single_column():
    data = theorem1_construction([(1, 0)], [(1, 0)])
    assert data.pairs == ((1, 1),)


def test_construction_errors():
    with pytest.raises(NotHarmony):
        theorem1_construction([(2,)], [(1,)])
    # {e2, 2e2}: the block's own ideal is x1^2 - x2*z with lead x1^2
    assert is_harmony([(0, 1), (0, 2)], [(0, 1), (0, 2)])
    with pytest.raises(NotSquarefreeInput):
        theorem1_construction([(0, 1), (0, 2)], [(0, 1), (0, 2)])


@pytest.mark.parametrize("a, b", [(A1, A1), (A1, A2), (A2, A1), (A2, A2)])
def test_verify_theorem1_small(a, b):
    check = verify_theorem1(a, b)
    assert check
    assert check.initial.is_squarefree()


def test_verify_theorem1_triangle_blocks():
    cols = block(stable_set_complex(complete_graph(3)))
    assert verify_theorem1(cols, cols)


# order searches and compressedness

def test_exists_order_for_counterexample():
    order = exists_squarefree_revlex_z_smallest(CE)
    assert order is not None and order.smallest == CE.zero_index
    first = parse_order(CE, "z,x2,x1,x3,x4,x5,x6,x7")
    assert exists_squarefree_revlex_z_smallest(CE, [first]) == first
    second = parse_order(CE, "z,x1,x2,x3,x4,x5,x6,x7")
    assert exists_squarefree_revlex_z_smallest(CE, [second]) is None


def test_no_order_for_boundary_of_triangle():
    assert exists_squarefree_revlex_z_smallest(incidence_matrix(boundary_of_simplex(3))) is None


def test_order_for_path():
    assert exists_squarefree_revlex_z_smallest(incidence_matrix(stable_set_complex(path_graph(3)))) is not None


def test_order_search_guards():
    big = incidence_matrix(full_simplex(4))
    with pytest.raises(TooLarge):
        exists_squarefree_revlex_z_smallest(big)
    with pytest.raises(ToricError):
        exists_squarefree_revlex_z_smallest(Configuration.from_columns([(1,), (2,)]))
    with pytest.raises(ToricError):
        exists_squarefree_revlex_z_smallest(CE, [MonomialOrder.default(CE.n, smallest=0)])


def test_compressed_examples():
    assert is_compressed(incidence_matrix(stable_set_complex(complete_graph(3))))
    assert not is_compressed(incidence_matrix(stable_set_complex(cycle_graph(5))))
    assert not is_compressed(CE)
    assert 2 in facet_widths(CE)


def test_compressed_cross_check_runs_for_small_configs():
    assert is_compressed(incidence_matrix(full_simplex(2)), cross_check=True)
    assert not is_compressed(incidence_matrix(boundary_of_simplex(3)), cross_check=True)


def test_cross_check_mismatch_is_raised(monkeypatch):
    import reflexive_forge.toric as toric

    monkeypatch.setattr(toric, "squarefree_for_all_orders", lambda config: False)
    with pytest.raises(CrossCheckMismatch):
        is_compressed(incidence_matrix(full_simplex(2)), cross_check=True)


def _restriction_check(cx, order):
    """in(I) restricted to the faces inside V equals the initial ideal of the induced subcomplex."""
    config = incidence_matrix(cx)
    init = initial_ideal(toric_groebner_basis(config, order))
    for k in range(2, cx.d):
        for vs in itertools.combinations(range(1, cx.d + 1), k):
            sub = induced_subcomplex(cx, vs)
            sub_config = incidence_matrix(sub)
            inside = {i: sub_config.columns.index(tuple(config.columns[i][v - 1] for v in vs))
                      for i in range(config.n)
                      if all(config.columns[i][v] == 0 for v in range(cx.d) if v + 1 not in vs)}
            sub_order = MonomialOrder(tuple(inside[i] for i in order.ranking if i in inside))
            sub_init = initial_ideal(toric_groebner_basis(sub_config, sub_order))
            restricted = set()
            for g in init.generators:
                if all(i in inside for i, x in enumerate(g) if x):
                    e = [0] * sub_config.n
                    for i, x in enumerate(g):
                        if x:
                            e[inside[i]] = x
                    restricted.add(tuple(e))
            assert set(sub_init.generators) == restricted, (cx.facets(), vs)


@pytest.mark.parametrize("d", [3, 4])
def test_initial_ideal_restricts_to_induced_subcomplexes(d):
    complexes = list(all_complexes(d))
    if d == 4:
        complexes = complexes[::9]
    for cx in complexes:
        config = incidence_matrix(cx)
        _restriction_check(cx, MonomialOrder.default(config.n, smallest=config.zero_index))


def test_pentagon_restriction():
    cx = stable_set_complex(cycle_graph(5))
    config = incidence_matrix(cx)
    _restriction_check(cx, MonomialOrder.default(config.n, smallest=config.zero_index))


# fibers

def test_fiber_examples():
    assert {A2_SHARP.format_monomial(e) for e in fiber(A2_SHARP, (1, 1), degree=2)} == {"x1*x2", "x3*z"}
    ident = Configuration.from_columns([(1, 0), (0, 1)])
    for target in itertools.product(range(3), repeat=2):
        assert len(fiber(ident, target, degree=sum(target))) <= 1
    assert {K2_MERGED.format_monomial(e) for e in fiber(K2_MERGED, (0, 0, 2))} == {"y1*x1", "y2*x2", "z^2"}


def test_fiber_degree_bound():
    with pytest.raises(DegreeBoundExceeded):
        fiber(A2_SHARP, (0, 0), degree=7)
    assert len(fiber(A2_SHARP, (0, 0), degree=7, bound=7)) == 1


def test_oracle_detects_wrong_initial_ideal():
    assert not standard_monomials_biject_fibers(A2_SHARP, MonomialIdeal(()), 2)
    too_big = MonomialIdeal(((1, 1, 0, 0), (0, 0, 1, 1)))
    assert not standard_monomials_biject_fibers(A2_SHARP, too_big, 2)


# triangulations

def test_triangulation_of_merged_k2():
    data = theorem1_construction(A1, A1)
    init = initial_ideal(toric_groebner_basis(K2_MERGED, data.order))
    tri = triangulation_from_initial_ideal(K2_MERGED, init)
    named = {frozenset(K2_MERGED.names[i] for i in s) for s in tri.simplices}
    assert named == {frozenset(s) for s in [("y1", "x2", "z"), ("y1", "y2", "z"), ("x1", "x2", "z"), ("x1", "y2", "z")]}
    assert tri.is_unimodular and tri.is_quadratic_squarefree
    assert tri.all_contain(K2_MERGED.zero_index)


def test_triangulation_of_zero_ideal():
    config = Configuration.from_columns([(1, 0), (0, 1), (0, 0)])
    tri = triangulation_from_initial_ideal(config, MonomialIdeal(()))
    assert tri.simplices == ((0, 1, 2),)
    assert tri.is_unimodular


def test_triangulation_requires_squarefree():
    init = initial_ideal(toric_groebner_basis(CE, parse_order(CE, "z,x1,x2,x3,x4,x5,x6,x7")))
    with pytest.raises(NotSquarefree):
        triangulation_from_initial_ideal(CE, init)


def test_triangulation_volume_matches_polytope():
    from reflexive_forge.polytopes import VPolytope, normalized_volume

    config = incidence_matrix(full_simplex(3))
    order = MonomialOrder.default(config.n, smallest=config.zero_index)
    tri = triangulation_from_initial_ideal(config, initial_ideal(toric_groebner_basis(config, order)))
    assert tri.is_unimodular
    assert sum(tri.volumes()) == normalized_volume(VPolytope.from_points(config.columns)) == 6
