"""The five family constructions: validity, acyclicity, and size bounds."""

import pytest

from nonmatching.complexes import FamilySpec, enumerate_family
from nonmatching.constructions import (
    build_bfc_matching,
    build_fc_matching,
    build_link_matching_bipartite,
    build_link_matching_complete,
    build_pm_matching,
)
from nonmatching.errors import EmptyFamilyError
from nonmatching.morse import check_matching


def assert_good(res):
    rep = check_matching(res.family, res.pairs)
    assert rep.valid, rep.problems
    assert rep.acyclic, "independent cycle detection failed the construction"
    assert res.bound_holds(), (
        f"max critical size {res.max_critical_size()} vs bound "
        f"{'<' if res.strict else '<='} {res.bound}"
    )
    return res


def family_edge_sets(res):
    return {frozenset(res.ground.decode(m)) for m in res.family}


class TestPM:
    def test_empty_vertex_set(self):
        res = build_pm_matching([])
        assert res.family == (0,) and res.criticals == (0,)
        assert res.max_critical_size() == 0 and res.bound == 0
        assert_good(res)

    def test_two_vertices(self):
        res = assert_good(build_pm_matching([0, 1]))
        assert res.criticals == (1,) and res.max_critical_size() == 1
        assert res.bound == 3 and res.strict

    def test_four_vertices(self):
        res = assert_good(build_pm_matching([0, 1, 2, 3]))
        assert res.max_critical_size() < 6

    def test_family_is_definitional(self):
        res = build_pm_matching([0, 1, 2, 3])
        fam = enumerate_family(FamilySpec("PM", vertices=(0, 1, 2, 3)))
        assert family_edge_sets(res) == {frozenset(g.edges) for g in fam}

    def test_odd_vertex_count_empty_family(self):
        res = build_pm_matching([0, 1, 2])
        assert res.family == () and res.pairs == ()

    def test_h_forced(self):
        res = assert_good(build_pm_matching([0, 1, 2, 3], [(0, 1)]))
        for m in res.family:
            assert (0, 1) in res.ground.decode(m)

    def test_determinism(self):
        a = build_pm_matching([0, 1, 2, 3, 4, 5], [(0, 2)])
        b = build_pm_matching([0, 1, 2, 3, 4, 5], [(0, 2)])
        assert a.pairs == b.pairs and a.criticals == b.criticals


class TestFC:
    def test_singleton(self):
        res = assert_good(build_fc_matching([0]))
        assert res.family == (0,) and res.criticals == (0,)

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            build_fc_matching([0, 1])

    def test_three_vertices(self):
        # only the triangle is factor critical on three vertices
        res = assert_good(build_fc_matching([0, 1, 2]))
        assert family_edge_sets(res) == {frozenset({(0, 1), (0, 2), (1, 2)})}
        assert res.max_critical_size() == 3 <= res.bound

    def test_five_with_edge_strict(self):
        res = assert_good(build_fc_matching([0, 1, 2, 3, 4], [(0, 1)]))
        assert res.strict and res.max_critical_size() < res.bound == 7

    def test_family_is_definitional(self):
        res = build_fc_matching([0, 1, 2, 3, 4])
        fam = enumerate_family(FamilySpec("FC", vertices=(0, 1, 2, 3, 4)))
        assert family_edge_sets(res) == {frozenset(g.edges) for g in fam}


class TestBFC:
    def test_conventions(self):
        for (xs, ys) in (((), (0,)), ((0,), ())):
            res = assert_good(build_bfc_matching(xs, ys, (), []))
            assert res.family == (0,) and res.criticals == (0,)

    def test_two_one(self):
        res = assert_good(build_bfc_matching([0, 1], [2], [], []))
        assert res.max_critical_size() <= 2

    def test_strictness(self):
        res = assert_good(build_bfc_matching([0, 1, 2], [3, 4], [0], [(1, 3)]))
        assert res.strict and res.max_critical_size() < 6

    def test_empty_family_raises(self):
        with pytest.raises(EmptyFamilyError):
            build_bfc_matching([0], [1], [], [])

    def test_family_is_definitional(self):
        res = build_bfc_matching([0, 1, 2], [3, 4], [0], [])
        fam = enumerate_family(
            FamilySpec("BFC", x_side=(0, 1, 2), y_side=(3, 4), z_subset=(0,))
        )
        assert family_edge_sets(res) == {frozenset(g.edges) for g in fam}

    def test_z_constrains(self):
        with pytest.raises(ValueError):
            build_bfc_matching([0, 1], [2], [2], [])


class TestLinkComplete:
    def test_nu_bounds_enforced(self):
        with pytest.raises(ValueError):
            build_link_matching_complete([0, 1, 2, 3], [], 2)  # nu(h) = 0
        with pytest.raises(ValueError):
            build_link_matching_complete([0, 1, 2, 3], [(0, 1), (2, 3)], 2)  # nu(h) = k

    def test_small_host_shortcut(self):
        res = assert_good(build_link_matching_complete([0, 1, 2], [(0, 1)], 2))
        assert len(res.criticals) <= 1
        if res.criticals:
            assert res.max_critical_size() == 1  # |h|

    def test_four_vertices(self):
        res = assert_good(build_link_matching_complete([0, 1, 2, 3], [(0, 1)], 2))
        assert res.max_critical_size() <= 3

    def test_five_vertices_path_h(self):
        res = assert_good(build_link_matching_complete([0, 1, 2, 3, 4], [(0, 1), (1, 2)], 2))
        assert res.max_critical_size() <= 4

    def test_family_is_definitional(self):
        res = build_link_matching_complete([0, 1, 2, 3], [(0, 1)], 2)
        fam = enumerate_family(
            FamilySpec("NMLINK_COMPLETE", vertices=(0, 1, 2, 3),
                       subgraph_h=frozenset({(0, 1)}), k=2)
        )
        assert family_edge_sets(res) == {frozenset(g.edges) for g in fam}


class TestLinkBipartite:
    def test_small_side_shortcut(self):
        res = assert_good(build_link_matching_bipartite([0], [1, 2], [(0, 1)], 2))
        assert len(res.criticals) <= 1

    def test_k22(self):
        res = assert_good(build_link_matching_bipartite([0, 1], [2, 3], [(0, 2)], 2))
        assert res.max_critical_size() <= 2

    def test_k33(self):
        res = assert_good(build_link_matching_bipartite([0, 1, 2], [3, 4, 5], [(0, 3)], 2))
        assert res.max_critical_size() <= 2

    def test_family_is_definitional(self):
        res = build_link_matching_bipartite([0, 1], [2, 3], [(0, 2)], 2)
        fam = enumerate_family(
            FamilySpec("NMLINK_BIPARTITE", x_side=(0, 1), y_side=(2, 3),
                       subgraph_h=frozenset({(0, 2)}), k=2)
        )
        assert family_edge_sets(res) == {frozenset(g.edges) for g in fam}


class TestGrids:
    """Compressed versions of the acceptance grids (the full ones run in
    tests/test_acceptance.py through the sweep suites)."""

    def test_pm_grid_n4(self):
        from nonmatching.graphs import graph_isomorphism_classes

        for h in graph_isomorphism_classes(4):
            assert_good(build_pm_matching(range(4), sorted(h.edges)))

    def test_fc_grid_n5_sample(self):
        from nonmatching.graphs import graph_isomorphism_classes

        for h in graph_isomorphism_classes(5)[:12]:
            assert_good(build_fc_matching(range(5), sorted(h.edges)))

    def test_bfc_grid_32(self):
        from nonmatching.graphs import bipartite_subgraph_classes

        for h in bipartite_subgraph_classes(3, 2):
            for z in ((), (0,), (0, 1)):
                try:
                    assert_good(build_bfc_matching((0, 1, 2), (3, 4), z, sorted(h.edges)))
                except EmptyFamilyError:
                    pass
