"""Element matchings: validation, acyclicity, and the four combinators."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonmatching.complexes import GroundSet, SimplicialComplex, build_nm_complex, order_complex
from nonmatching.constructions import build_pm_matching
from nonmatching.errors import EmptyFamilyError, MonotonicityError
from nonmatching.graphs import Graph
from nonmatching.homology import GF2, reduced_betti
from nonmatching.morse import (
    JoinPart,
    boolean_matching,
    check_matching,
    cluster_union,
    is_acyclic,
    join_matching,
    morse_inequality_details,
    projection_matching,
    validate_matching,
    verify_morse_inequality,
    witness_has_alternating_shape,
)

SQUARE = [0, 1, 2, 3]  # the full family over two elements


class TestValidate:
    def test_empty_matching(self):
        rep = validate_matching(SQUARE, [])
        assert rep.valid and rep.critical == (0, 1, 2, 3) and rep.acyclic is None

    def test_complete_matching(self):
        rep = validate_matching(SQUARE, [(0, 1), (2, 3)])
        assert rep.valid and rep.critical == ()

    def test_gap_two_invalid(self):
        rep = validate_matching(SQUARE, [(0, 3)])
        assert not rep.valid

    def test_not_subset_invalid(self):
        rep = validate_matching(SQUARE, [(1, 2)])
        assert not rep.valid

    def test_double_use_invalid(self):
        rep = validate_matching(SQUARE, [(0, 1), (1, 3)])
        assert not rep.valid

    def test_foreign_face_raises(self):
        with pytest.raises(ValueError):
            validate_matching([0, 1], [(0, 4)])


class TestAcyclic:
    def test_empty_matching_acyclic(self):
        ok, w = is_acyclic(SQUARE, [])
        assert ok and w is None

    def test_complete_square_acyclic(self):
        ok, _ = is_acyclic(SQUARE, [(0, 1), (2, 3)])
        assert ok

    def test_classic_cycle(self):
        # faces a, b, c, ab, ac, bc with all three matched upward
        fam = [1, 2, 4, 3, 5, 6]
        pairs = [(1, 3), (2, 6), (4, 5)]
        ok, witness = is_acyclic(fam, pairs)
        assert not ok
        assert witness_has_alternating_shape(witness, pairs)

    def test_toggle_on_square(self):
        ok, _ = is_acyclic(SQUARE, [(0, 1), (2, 3)])
        assert ok

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_boolean_always_acyclic(self, data):
        universe = 4
        masks = data.draw(st.sets(st.integers(0, 15), min_size=1))
        fam = sorted(masks)
        e0 = data.draw(st.integers(0, universe - 1))
        pairs, f0, f1 = boolean_matching(fam, e0)
        rep = check_matching(fam, pairs)
        assert rep.valid and rep.acyclic
        assert sorted(rep.critical) == f1
        # complete on f0 by definition
        matched = {f for p in pairs for f in p}
        assert matched == set(f0)


class TestBooleanMatching:
    def test_full_square(self):
        pairs, f0, f1 = boolean_matching(SQUARE, 0)
        assert f0 == SQUARE and f1 == [] and len(pairs) == 2

    def test_partial(self):
        fam = [0, 1, 2]  # empty, {e}, {f}
        pairs, f0, f1 = boolean_matching(fam, 0)
        assert f0 == [0, 1] and f1 == [2] and pairs == [(0, 1)]

    def test_all_families_three_elements(self):
        # every family over a 3-element ground, every toggle element
        for fam_mask in range(1, 1 << 8):
            fam = [m for m in range(8) if fam_mask >> m & 1]
            for e0 in range(3):
                pairs, f0, f1 = boolean_matching(fam, e0)
                rep = check_matching(fam, pairs)
                assert rep.valid and rep.acyclic
                assert set(rep.critical) == set(f1)


class TestClusterUnion:
    def test_single_part_identity(self):
        fam = SQUARE
        pairs = [(0, 1), (2, 3)]
        out = cluster_union(fam, lambda m: 0, lambda a, b: True, {0: pairs})
        assert sorted(out) == sorted(pairs)

    def test_size_key(self):
        fam = [0, 1, 2, 3]
        out = cluster_union(fam, lambda m: m.bit_count(), lambda a, b: a <= b,
                            {0: [], 1: [], 2: []})
        assert out == []

    def test_fixed_nu_gallai_edmonds_cells(self):
        # all subgraphs of the complete graph on 4 vertices with matching
        # number exactly one, clustered by decomposition, toggled per cell
        from nonmatching.graphs import (
            Graph,
            complete_edge_list,
            gallai_edmonds,
            mask_to_graph,
            subset_matching_numbers,
        )

        edges = complete_edge_list(4)
        nu = subset_matching_numbers(edges)
        fam = [m for m in range(1 << 6) if int(nu[m]) == 1]

        def key(m):
            ge = gallai_edmonds(mask_to_graph(4, m))
            return (ge.d_set, ge.d_set | ge.a_set, ge.components)

        def leq(k1, k2):
            if k1 == k2:
                return True
            return k1[0] <= k2[0] and k1[1] <= k2[1] and (k1[0], k1[1]) != (k2[0], k2[1])

        fibers = {}
        for m in fam:
            fibers.setdefault(key(m), []).append(m)
        part_pairs = {}
        for kk, members in fibers.items():
            # toggle on the least bit that pairs anything inside the fiber
            pairs = []
            for b in range(6):
                pairs, _, _ = boolean_matching(members, b)
                if pairs:
                    break
            part_pairs[kk] = pairs
        out = cluster_union(fam, key, leq, part_pairs)
        ok, _ = is_acyclic(fam, out)
        assert ok

    def test_non_monotone_rejected(self):
        fam = [0, 1]
        with pytest.raises(MonotonicityError):
            cluster_union(fam, lambda m: -m.bit_count(), lambda a, b: a <= b, {0: [], -1: []})

    def test_cross_fiber_pair_rejected(self):
        fam = [0, 1]
        with pytest.raises(ValueError):
            cluster_union(fam, lambda m: m, lambda a, b: a <= b, {0: [(0, 1)]})

    def test_gallai_edmonds_style_union(self):
        # per-fiber toggle matchings over a fixed-size-key family stay acyclic
        fam = [m for m in range(16) if m.bit_count() in (1, 2)]
        key = lambda m: m.bit_count()
        fibers = {}
        for m in fam:
            fibers.setdefault(key(m), []).append(m)
        part_pairs = {k: [] for k in fibers}
        out = cluster_union(fam, key, lambda a, b: a <= b, part_pairs)
        assert out == []


class TestJoin:
    def test_identity_with_point(self):
        res = join_matching([
            JoinPart.make(0b11, SQUARE, [(0, 1), (2, 3)]),
            JoinPart.make(0b100, [0], []),
        ])
        assert len(res.family) == 4 and res.criticals == ()

    def test_one_complete_part_makes_complete(self):
        res = join_matching([
            JoinPart.make(0b11, SQUARE, [(0, 1), (2, 3)]),
            JoinPart.make(0b1100, [0, 4, 8, 12], []),
        ])
        assert res.criticals == ()
        rep = check_matching(res.family, res.pairs)
        assert rep.valid and rep.acyclic

    def test_two_empty_matchings(self):
        res = join_matching([
            JoinPart.make(0b1, [0, 1], []),
            JoinPart.make(0b10, [0, 2], []),
        ])
        assert set(res.criticals) == {0, 1, 2, 3}

    def test_empty_family_rejected(self):
        with pytest.raises(EmptyFamilyError):
            join_matching([JoinPart.make(0b1, [], [])])

    def test_overlapping_grounds_rejected(self):
        with pytest.raises(ValueError):
            join_matching([JoinPart.make(0b1, [0, 1], []), JoinPart.make(0b1, [0, 1], [])])

    def test_pm_join_fc_instance(self):
        # join of a perfect-matching family with a one-face family: criticals
        # are exactly the joins of the factor criticals
        pm = build_pm_matching([0, 1, 2, 3])
        shift = len(pm.ground)
        extra_fam = [0, 1 << shift]
        res = join_matching([
            JoinPart.make((1 << shift) - 1, pm.family, pm.pairs),
            JoinPart.make(1 << shift, extra_fam, []),
        ])
        expect = {c | e for c in pm.criticals for e in extra_fam}
        assert set(res.criticals) == expect
        rep = check_matching(res.family, res.pairs)
        assert rep.valid and rep.acyclic


class TestProjection:
    def test_singleton_parts_isomorphic_lift(self):
        parts = [0b1, 0b10, 0b100]
        qfam = list(range(8))
        qpairs = [(0, 1), (2, 3), (4, 5), (6, 7)]
        res = projection_matching(parts, 0, qfam, qpairs)
        assert len(res.family) == 8 and res.criticals == ()

    def test_single_part_single_critical(self):
        res = projection_matching([0b11], 0, [0b1], [])
        assert res.criticals == (1,)
        assert set(res.family) == {1, 2, 3}

    def test_tau_forced(self):
        # one part of two elements, tau = one of them: the free bit toggles
        # the whole block, so the lift is complete
        res = projection_matching([0b11], 0b1, [0b1], [])
        assert set(res.family) == {0b1, 0b11}
        assert res.criticals == ()

    def test_tau_swallows_part(self):
        # part fully inside tau: single critical of size |tau|
        res = projection_matching([0b1], 0b1, [0b1], [])
        assert set(res.family) == {0b1}
        assert res.criticals == (0b1,)

    def test_missing_pi_tau_rejected(self):
        with pytest.raises(ValueError):
            projection_matching([0b1, 0b10], 0b1, [0b10], [])

    def test_size_formula(self):
        parts = [0b11, 0b1100, 0b10000]
        tau = 0b100
        qfam = [q for q in range(8) if q & 0b10]
        qpairs, _, _ = boolean_matching(qfam, 0)
        res = projection_matching(parts, tau, qfam, qpairs)
        matched_q = {f for p in qpairs for f in p}
        qcrit = set(qfam) - matched_q
        assert len(res.criticals) == len(set(res.criticals))
        for c in res.criticals:
            pc = sum(1 << i for i, p in enumerate(parts) if c & p)
            assert pc in qcrit
            assert c.bit_count() == pc.bit_count() - 1 + tau.bit_count()


class TestMorseInequality:
    def test_empty_matching_trivial(self):
        cx = build_nm_complex(Graph.complete(4), 2)
        assert verify_morse_inequality(cx, [], GF2)

    def test_apex_toggle_on_cone(self):
        # the apex toggle pairs every non-empty face except the apex vertex,
        # so criticals concentrate in dimension 0 and every comparison in
        # dimensions i >= 1 is 0 <= 0
        ground = GroundSet(tuple("abc"))
        cx = SimplicialComplex.full_simplex(ground)
        fam = [m for m in cx.faces if m]
        pairs, f0, f1 = boolean_matching(fam, 0)
        assert f1 == [1]
        details = morse_inequality_details(cx, pairs, GF2)
        assert details["holds"]
        for d, cmp_ in details["per_dim"].items():
            if d >= 1:
                assert cmp_["betti"] == 0 and cmp_["critical"] == 0

    def test_rejects_cyclic(self):
        ground = GroundSet(tuple("abc"))
        cx = SimplicialComplex(ground, frozenset(range(7)))
        pairs = [(1, 3), (2, 6), (4, 5)]
        with pytest.raises(ValueError):
            verify_morse_inequality(cx, pairs, GF2)

    def test_details_reduced_reported(self):
        cx = build_nm_complex(Graph.complete(4), 2)
        details = morse_inequality_details(cx, [], GF2)
        assert details["per_dim"][0]["reduced_holds"] is not None

    def test_pm_family_against_order_complex(self):
        # both sides computed independently: the construction's critical
        # counts vs the homology of the order complex of the family
        res = build_pm_matching([0, 1, 2, 3])
        ocx = order_complex(list(res.family))
        table = reduced_betti(ocx, GF2)
        # the family has a maximum member (the full host), so its order
        # complex is a cone: everything reduced vanishes
        assert all(b == 0 for b in table.betti.values())
        min_size = min(m.bit_count() for m in res.family)
        crit_by_dim = {}
        for c in res.criticals:
            d = c.bit_count() - min_size
            crit_by_dim[d] = crit_by_dim.get(d, 0) + 1
        for d in range(1, ocx.dim() + 1):
            assert table.get(d) <= crit_by_dim.get(d, 0)

    def test_tiny_complex_inequality(self):
        # hollow triangle with the empty matching: criticals dominate
        ground = GroundSet(tuple("abc"))
        cx = SimplicialComplex(ground, frozenset(range(7)))
        assert verify_morse_inequality(cx, [], GF2)


class TestMatchingSerialization:
    def test_text_roundtrip(self):
        from nonmatching.complexes import GroundSet
        from nonmatching.morse import ElementMatching

        ground = GroundSet(((0, 1), (0, 2), (1, 2)))
        m = ElementMatching(ground, ((0, 1), (2, 6)))
        back = ElementMatching.from_text(ground, m.to_text())
        assert sorted(back.pairs) == sorted(m.pairs)
        assert back.decode_pairs()[0][1] == ((0, 1),)


class TestBigMaskFallback:
    def test_cluster_union_beyond_word_size(self):
        # faces wider than 62 bits exercise the pure-python monotonicity path
        big = 1 << 80
        fam = [0, big, big | 1, 1]
        pairs, f0, f1 = boolean_matching(fam, 0)
        key = lambda m: 1 if m & big else 0
        out = cluster_union(fam, key, lambda a, b: a <= b,
                            {0: [(0, 1)], 1: [(big, big | 1)]})
        ok, _ = is_acyclic(fam, out)
        assert ok

    def test_cluster_union_big_mask_violation(self):
        big = 1 << 80
        fam = [0, big]
        with pytest.raises(MonotonicityError):
            cluster_union(fam, lambda m: 1 if m == 0 else 0, lambda a, b: a <= b,
                          {0: [], 1: []})
