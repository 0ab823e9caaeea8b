"""Rainbow matchings, the labelled complex, and matroid variants."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonmatching.complexes import build_nm_complex
from nonmatching.errors import FormatError, HypothesisError
from nonmatching.graphs import Graph
from nonmatching.rainbow import (
    RainbowCertificate,
    RainbowInstance,
    RankOracle,
    certificate_is_valid,
    find_rainbow_matching,
    format_instance,
    free_matroid_oracle,
    graphic_matroid_oracle,
    labelled_nm_complex,
    matroid_rainbow_check,
    parse_instance,
    partition_matroid_oracle,
    partition_rank,
    rainbow_brute_force,
    search_tightness,
    validate_rank_oracle,
    verify_hypotheses,
    verify_theorem,
    verify_topological_helly_conclusion,
)


def c4_host() -> Graph:
    return Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)], ((0, 1), (2, 3)))


def c4_pm_pair() -> RainbowInstance:
    return RainbowInstance.make(c4_host(), [[(0, 2), (1, 3)], [(0, 3), (1, 2)]], 2)


class TestFindRainbow:
    def test_k1_any_edge(self):
        inst = RainbowInstance.make(c4_host(), [[(0, 2)]], 1)
        cert = find_rainbow_matching(inst)
        assert cert is not None and len(cert) == 1

    def test_c4_pair_none(self):
        assert find_rainbow_matching(c4_pm_pair()) is None

    def test_third_set_gives_certificate(self):
        inst = RainbowInstance.make(
            c4_host(), [[(0, 2), (1, 3)], [(0, 3), (1, 2)], [(0, 2), (1, 3)]], 2
        )
        cert = find_rainbow_matching(inst)
        assert cert is not None and certificate_is_valid(inst, cert)

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_agrees_with_brute_force(self, data):
        n = data.draw(st.integers(3, 6))
        all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        host_edges = data.draw(
            st.sets(st.sampled_from(all_edges), min_size=1, max_size=6)
        )
        host = Graph.from_edges(n, host_edges)
        m = data.draw(st.integers(1, 5))
        sets = [
            frozenset(data.draw(st.sets(st.sampled_from(sorted(host_edges)), min_size=1, max_size=6)))
            for _ in range(m)
        ]
        k = data.draw(st.integers(1, 3))
        inst = RainbowInstance(host, tuple(sets), k)
        assert (find_rainbow_matching(inst) is not None) == rainbow_brute_force(inst)


class TestHypothesesAndTheorem:
    def test_c4_pair_hypotheses(self):
        assert verify_hypotheses(c4_pm_pair())

    def test_single_shared_edge_fails(self):
        inst = RainbowInstance.make(c4_host(), [[(0, 2)], [(0, 2)]], 2)
        assert not verify_hypotheses(inst)

    def test_theorem_satisfied(self):
        inst = RainbowInstance.make(
            c4_host(), [[(0, 2), (1, 3)], [(0, 3), (1, 2)], [(0, 2), (1, 3)]], 2
        )
        v = verify_theorem(inst)
        assert v.status == "SATISFIED" and certificate_is_valid(inst, v.certificate)

    def test_below_threshold_is_hypothesis_error(self):
        with pytest.raises(HypothesisError):
            verify_theorem(c4_pm_pair())  # 2 < 2k-1 = 3 sets

    def test_hypothesis_failure_distinct_from_violation(self):
        inst = RainbowInstance.make(c4_host(), [[(0, 2)], [(0, 2)], [(0, 2)]], 2)
        with pytest.raises(HypothesisError):
            verify_theorem(inst)

    def test_bipartite_threshold_vs_general(self):
        host_bip = c4_host()
        host_gen = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        sets = [[(0, 2), (1, 3)], [(0, 3), (1, 2)], [(0, 2), (1, 3)]]
        assert verify_theorem(RainbowInstance.make(host_bip, sets, 2)).status == "SATISFIED"
        with pytest.raises(HypothesisError):
            # a general host needs 3k-2 = 4 sets
            verify_theorem(RainbowInstance.make(host_gen, sets, 2))


class TestTightness:
    def test_k2_m2_witness(self):
        inst = search_tightness(2, True, 2)
        assert inst is not None
        assert verify_hypotheses(inst)
        assert find_rainbow_matching(inst) is None
        assert not rainbow_brute_force(inst)

    def test_k3_m4_witness(self):
        inst = search_tightness(3, True, 4)
        assert inst is not None
        assert verify_hypotheses(inst)
        assert find_rainbow_matching(inst) is None
        assert not rainbow_brute_force(inst)

    def test_k1_m0_vacuous(self):
        assert search_tightness(1, True, 0) is None


class TestLabelledComplex:
    def test_single_set_isomorphic_to_nm(self):
        host = c4_host()
        inst = RainbowInstance.make(host, [sorted(host.edges)], 2)
        lcx = labelled_nm_complex(inst)
        nm = build_nm_complex(host, 2)
        assert sorted(m.bit_count() for m in lcx.faces) == sorted(
            m.bit_count() for m in nm.faces
        )

    def test_duplicated_edge_both_copies(self):
        inst = RainbowInstance.make(c4_host(), [[(0, 2)], [(0, 2)]], 2)
        lcx = labelled_nm_complex(inst)
        assert ((0, 2), 0) in lcx.ground.elements
        assert ((0, 2), 1) in lcx.ground.elements

    def test_faces_project_to_low_nu(self):
        inst = c4_pm_pair()
        lcx = labelled_nm_complex(inst)
        for m in lcx.faces:
            edges = {e for (e, _) in lcx.ground.decode(m)}
            g = Graph.from_edges(4, edges)
            from nonmatching.graphs import matching_number

            assert matching_number(g) < 2

    def test_partition_rank(self):
        inst = c4_pm_pair()
        assert partition_rank(inst, [((0, 2), 0), ((1, 3), 0)]) == 1
        assert partition_rank(inst, [((0, 2), 0), ((0, 3), 1)]) == 2


class TestHelly:
    def test_with_rainbow_precondition_fails(self):
        inst = RainbowInstance.make(
            c4_host(), [[(0, 2), (1, 3)], [(0, 3), (1, 2)], [(0, 2), (1, 3)]], 2
        )
        with pytest.raises(HypothesisError):
            verify_topological_helly_conclusion(inst, 1)

    def test_identical_copies_conclusion_found(self):
        inst = RainbowInstance.make(c4_host(), [[(0, 2)], [(0, 2)], [(0, 2)]], 2)
        rep = verify_topological_helly_conclusion(inst, 1)
        assert rep.satisfied and rep.residual_rank <= 1

    def test_rank_below_d_plus_2(self):
        inst = c4_pm_pair()
        with pytest.raises(HypothesisError):
            verify_topological_helly_conclusion(inst, 1)  # m = 2 < 3


class TestRankOracles:
    def test_partition_oracle_valid(self):
        inst = RainbowInstance.make(
            c4_host(), [[(0, 2), (1, 3)], [(0, 3), (1, 2)], [(0, 2), (1, 3)]], 2
        )
        validate_rank_oracle(partition_matroid_oracle(inst))

    def test_free_and_graphic_valid(self):
        validate_rank_oracle(free_matroid_oracle([(0, 1), (2, 3)]))
        validate_rank_oracle(graphic_matroid_oracle(4, Graph.complete(4).edges))

    def test_bad_oracle_rejected(self):
        bad = RankOracle(("a", "b"), lambda s: 2 * len(s))
        with pytest.raises(ValueError):
            validate_rank_oracle(bad)

    def test_non_submodular_rejected(self):
        # rank jumping only on the full set violates submodularity
        bad = RankOracle(("a", "b", "c"), lambda s: 2 if len(s) == 3 else min(len(s), 1))
        with pytest.raises(ValueError):
            validate_rank_oracle(bad)


class TestMatroidRainbow:
    def test_free_matroid_on_disjoint_edges(self):
        edges = [(0, 1), (2, 3), (4, 5), (6, 7)]
        verdict = matroid_rainbow_check(edges, free_matroid_oracle(sorted(edges)), 2)
        assert verdict.status == "SATISFIED"

    def test_partition_reduces_to_theorem(self):
        # with pairwise-disjoint edge sets the partition matroid lives on the
        # plain edges (rank = number of sets touched); its rank-2 flats are
        # exactly the pairwise unions, so the matroid check and the rainbow
        # theorem check must agree
        host = Graph.complete_bipartite(3, 3)
        sets = [
            [(0, 3), (1, 4)],
            [(0, 4), (1, 5)],
            [(0, 5), (2, 3)],
        ]
        inst = RainbowInstance.make(host, sets, 2)
        part_of = {}
        for i, es in enumerate(inst.edge_sets):
            for e in es:
                part_of[e] = i
        ground = sorted(part_of)
        oracle = RankOracle(tuple(ground), lambda s: len({part_of[e] for e in s}))
        verdict = matroid_rainbow_check(ground, oracle, 2)
        theorem = verify_theorem(inst)
        assert verdict.status == theorem.status == "SATISFIED"

    def test_graphic_matroid_small(self):
        # 4 disjoint edges: graphic matroid ranks them freely
        edges = [(0, 1), (2, 3), (4, 5), (6, 7)]
        oracle = graphic_matroid_oracle(8, edges)
        verdict = matroid_rainbow_check(edges, oracle, 2)
        assert verdict.status == "SATISFIED"

    def test_rank_too_small(self):
        edges = [(0, 1), (2, 3)]
        with pytest.raises(HypothesisError):
            matroid_rainbow_check(edges, free_matroid_oracle(sorted(edges)), 2)


class TestInstanceFormat:
    def test_roundtrip(self):
        inst = RainbowInstance.make(
            c4_host(), [[(0, 2), (1, 3)], [(0, 3), (1, 2)], [(0, 2)]], 2
        )
        assert parse_instance(format_instance(inst)) == inst

    def test_k_override(self):
        inst = c4_pm_pair()
        text = format_instance(inst)
        assert parse_instance(text, k=1).k == 1

    def test_missing_k(self):
        text = "4 = 2 2\n0 2\n1 3\nSET 0: 0 2\n"
        with pytest.raises(FormatError):
            parse_instance(text)

    def test_malformed_set(self):
        with pytest.raises(FormatError):
            parse_instance("4 = 2 2\n0 2\nk = 2\nSET 0: 0\n")

    def test_empty_set_rejected(self):
        with pytest.raises(FormatError):
            parse_instance("4 = 2 2\n0 2\nk = 2\nSET 0:\n")


class TestCertificates:
    def test_disjointness_enforced(self):
        with pytest.raises(ValueError):
            RainbowCertificate((((0, 1), 0), ((1, 2), 1)))

    def test_distinct_sources_enforced(self):
        with pytest.raises(ValueError):
            RainbowCertificate((((0, 1), 0), ((2, 3), 0)))


class TestCanonicalInstance:
    def test_isomorphic_instances_share_keys(self):
        from nonmatching.rainbow import canonical_instance

        host1 = Graph.from_edges(4, [(0, 1), (2, 3)])
        host2 = Graph.from_edges(4, [(0, 3), (1, 2)])
        a = RainbowInstance.make(host1, [[(0, 1)], [(2, 3)]], 2)
        b = RainbowInstance.make(host2, [[(1, 2)], [(0, 3)]], 2)
        assert canonical_instance(a) == canonical_instance(b)

    def test_nonisomorphic_differ(self):
        from nonmatching.rainbow import canonical_instance

        host = Graph.from_edges(4, [(0, 1), (2, 3)])
        a = RainbowInstance.make(host, [[(0, 1)], [(2, 3)]], 2)
        c = RainbowInstance.make(host, [[(0, 1), (2, 3)], [(2, 3)]], 2)
        assert canonical_instance(a) != canonical_instance(c)
