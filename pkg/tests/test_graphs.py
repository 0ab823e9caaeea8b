"""Graphs, matchings, and the Gallai-Edmonds decomposition."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonmatching.errors import CapExceededError, FormatError, InternalCheckError
from nonmatching.graphs import (
    Graph,
    Matching,
    canonical_form,
    complete_edge_list,
    format_graph,
    gallai_edmonds,
    gallai_edmonds_violations,
    graph_isomorphism_classes,
    graph_to_mask,
    has_perfect_matching,
    is_factor_critical,
    is_y_factor_critical,
    is_yz_factor_critical,
    mask_to_graph,
    matching_number,
    maximum_matching,
    maximum_matchings,
    maximum_matching_split_violations,
    parse_graph,
    subdivided_complete_graph,
    subset_matching_numbers,
)


def nu_by_enumeration(g: Graph) -> int:
    """Independent oracle: scan every edge subset that is a matching."""
    edges = g.sorted_edges()
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for comb in itertools.combinations(edges, r):
            vs = [v for e in comb for v in e]
            if len(set(vs)) == len(vs):
                best = max(best, r)
                break
    return best


class TestMatchingNumber:
    def test_empty_graph(self):
        assert matching_number(Graph.empty(5)) == 0

    def test_k4(self):
        assert matching_number(Graph.complete(4)) == 2

    def test_subdivided_k6(self):
        # oracle first: exhaustive enumeration gives 3
        g = subdivided_complete_graph(6)
        assert nu_by_enumeration(g) == 3
        assert matching_number(g) == 3

    def test_certificate(self):
        g = Graph.cycle(7)
        m = maximum_matching(g)
        assert len(m) == matching_number(g) == 3
        assert m.edges <= g.edges

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 6), st.data())
    def test_against_enumeration(self, n, data):
        slots = complete_edge_list(n)
        mask = data.draw(st.integers(0, (1 << len(slots)) - 1))
        g = mask_to_graph(n, mask)
        assert matching_number(g) == nu_by_enumeration(g)

    def test_exhaustive_small_hosts(self):
        # every graph on <= 6 vertices: algorithm vs all-matchings oracle
        for n in range(0, 7):
            edges = complete_edge_list(n)
            matchings = []
            for m in range(1 << len(edges)):
                used = set()
                ok = True
                mm = m
                while mm:
                    b = (mm & -mm).bit_length() - 1
                    mm &= mm - 1
                    (u, v) = edges[b]
                    if u in used or v in used:
                        ok = False
                        break
                    used.add(u)
                    used.add(v)
                if ok:
                    matchings.append(m)
            table = subset_matching_numbers(edges) if edges else None
            # the per-graph algorithm is subsampled at n=6 (the tabulated
            # route below stays exhaustive there)
            step = 1 if n <= 5 else 9
            for mask in range(0, 1 << len(edges), step):
                naive = max((m.bit_count() for m in matchings if m & ~mask == 0), default=0)
                assert matching_number(mask_to_graph(n, mask)) == naive
            if table is not None:
                import numpy as np

                naive_all = np.zeros(1 << len(edges), dtype=np.uint8)
                for m in matchings:
                    naive_all[m] = m.bit_count()
                # subset-max transform: nu(G) = max over matchings inside G
                for b in range(len(edges)):
                    t = naive_all.reshape(-1, 1 << (b + 1))
                    np.maximum(t[:, 1 << b:], t[:, : 1 << b], out=t[:, 1 << b:])
                assert (table == naive_all).all()


class TestMaximumMatchings:
    def test_single_edge(self):
        g = Graph.from_edges(2, [(0, 1)])
        assert maximum_matchings(g) == [Matching(frozenset({(0, 1)}))]

    def test_path3(self):
        g = Graph.path(3)
        out = {frozenset(m.edges) for m in maximum_matchings(g)}
        assert out == {frozenset({(0, 1)}), frozenset({(1, 2)})}

    def test_c5(self):
        # oracle: brute force over edge subsets finds exactly 5 two-matchings
        g = Graph.cycle(5)
        expected = set()
        for comb in itertools.combinations(sorted(g.edges), 2):
            vs = [v for e in comb for v in e]
            if len(set(vs)) == 4:
                expected.add(frozenset(comb))
        assert len(expected) == 5
        assert {frozenset(m.edges) for m in maximum_matchings(g)} == expected

    def test_cap(self):
        with pytest.raises(CapExceededError):
            maximum_matchings(Graph.complete(6), edge_cap=10)


class TestPerfectMatchingAndFactorCritical:
    def test_empty_support(self):
        assert has_perfect_matching(Graph.empty(3), [])

    def test_c4(self):
        assert has_perfect_matching(Graph.cycle(4), range(4))

    def test_p3_odd(self):
        assert not has_perfect_matching(Graph.path(3), range(3))

    def test_single_vertex_factor_critical(self):
        assert is_factor_critical(Graph.empty(1), [0])

    def test_c5_factor_critical(self):
        assert is_factor_critical(Graph.cycle(5), range(5))

    def test_c4_not(self):
        assert not is_factor_critical(Graph.cycle(4), range(4))

    def test_p3_not_factor_critical(self):
        # definitional: deleting the centre vertex strands both endpoints
        assert not is_factor_critical(Graph.path(3), range(3))


class TestBipartiteFactorCritical:
    def test_empty_y(self):
        g = Graph.from_edges(3, [])
        assert is_y_factor_critical(g, [0, 1, 2], [])

    def test_k21(self):
        g = Graph.from_edges(3, [(0, 2), (1, 2)])
        assert is_y_factor_critical(g, [0, 1], [2])

    def test_perfect_matching_not(self):
        g = Graph.from_edges(4, [(0, 2), (1, 3)])
        assert not is_y_factor_critical(g, [0, 1], [2, 3])

    def test_yz_empty_z(self):
        g = Graph.from_edges(3, [(0, 2), (1, 2)])
        assert is_yz_factor_critical(g, [0, 1], [2], [])

    def test_yz_all_empty(self):
        assert is_yz_factor_critical(Graph.empty(0), [], [], [])

    def test_yz_z_as_big_as_y(self):
        # |Z| < |Y| is necessary when both non-empty
        g = Graph.from_edges(3, [(0, 2), (1, 2)])
        assert not is_yz_factor_critical(g, [0, 1], [2], [0])

    def test_deletion_equals_hall_exhaustive(self):
        # both routes agree on every bipartite graph with sides up to 4
        for a in range(0, 5):
            for b in range(0, 5):
                xs, ys = list(range(a)), list(range(a, a + b))
                pairs = [(x, y) for x in xs for y in ys]
                for mask in range(1 << len(pairs)):
                    edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
                    g = Graph.from_edges(a + b, edges)
                    # raises InternalCheckError if the two criteria disagree
                    is_y_factor_critical(g, xs, ys)


class TestGallaiEdmonds:
    def test_single_edge(self):
        ge = gallai_edmonds(Graph.from_edges(2, [(0, 1)]))
        assert ge.components == () and ge.a_set == frozenset() and ge.c_set == {0, 1}

    def test_path3(self):
        ge = gallai_edmonds(Graph.path(3))
        assert [set(c) for c in ge.components] == [{0}, {2}]
        assert ge.a_set == {1} and ge.c_set == frozenset()
        assert ge.component_count == 1 + 3 - 2 * 1

    def test_c5(self):
        ge = gallai_edmonds(Graph.cycle(5))
        assert len(ge.components) == 1 and ge.components[0] == frozenset(range(5))
        assert ge.a_set == frozenset() and ge.c_set == frozenset()

    def test_properties_small(self):
        for n in range(0, 6):
            for mask in range(1 << (n * (n - 1) // 2)):
                g = mask_to_graph(n, mask)
                ge = gallai_edmonds(g)
                assert gallai_edmonds_violations(g, ge) == []

    def test_maximum_matching_split(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
        ge = gallai_edmonds(g)
        for m in maximum_matchings(g):
            assert maximum_matching_split_violations(g, ge, m) == []


class TestCanonicalForm:
    def test_relabelings_of_path(self):
        g1 = Graph.from_edges(3, [(0, 1), (1, 2)])
        g2 = Graph.from_edges(3, [(0, 2), (1, 2)])
        assert canonical_form(g1) == canonical_form(g2)

    def test_k4_fixed_point(self):
        g = Graph.complete(4)
        assert canonical_form(g)[2] == graph_to_mask(g)

    def test_eleven_classes_on_four_vertices(self):
        keys = {canonical_form(mask_to_graph(4, m)) for m in range(1 << 6)}
        assert len(keys) == 11
        assert len(graph_isomorphism_classes(4)) == 11

    def test_cap(self):
        with pytest.raises(CapExceededError):
            canonical_form(Graph.empty(9))

    def test_bipartite_respects_classes(self):
        g1 = Graph.from_edges(4, [(0, 2)], ((0, 1), (2, 3)))
        g2 = Graph.from_edges(4, [(1, 3)], ((0, 1), (2, 3)))
        assert canonical_form(g1) == canonical_form(g2)


class TestEdgeListFormat:
    def test_roundtrip_plain(self):
        g = Graph.cycle(5)
        assert parse_graph(format_graph(g)) == g

    def test_roundtrip_bipartite(self):
        g = Graph.complete_bipartite(2, 3)
        assert parse_graph(format_graph(g)) == g

    def test_comments_and_blanks(self):
        g = parse_graph("# a graph\n\n3\n0 1  # edge\n\n1 2\n")
        assert g == Graph.path(3)

    def test_bad_header(self):
        with pytest.raises(FormatError):
            parse_graph("x\n0 1\n")

    def test_bad_edge(self):
        with pytest.raises(FormatError):
            parse_graph("3\n0\n")

    def test_crossing_enforced(self):
        with pytest.raises(FormatError):
            parse_graph("4 = 2 2\n0 1\n")


class TestGraphInvariants:
    def test_loop_rejected(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_empty_graph_any_order(self):
        for n in (0, 1, 5):
            assert Graph.empty(n).edge_count == 0

    def test_matching_disjointness(self):
        with pytest.raises(ValueError):
            Matching(frozenset({(0, 1), (1, 2)}))

    def test_subdivided_k6_shape(self):
        g = subdivided_complete_graph(6)
        assert g.vertex_count == 7 and g.edge_count == 16
        assert not g.has_edge(0, 1)
        assert g.has_edge(0, 6) and g.has_edge(1, 6)
