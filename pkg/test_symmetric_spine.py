"""
Tests for the symmetric spine: compatible sets, ranks, commuting generators, K_min and move graphs
"""

import random
from itertools import combinations

import pytest

from config import get_settings
from defining_graph import Literal, complete_graph, edgeless_graph, order_report
from invariant_checks import check_commuting, check_kmin_floor, check_symmetric_ranks
from raag_automorphisms import commutes_in_out, fold, is_symmetric_auto, whitehead_auto
from raag_errors import DomainError, SearchBudgetExceeded
from symmetric_spine import (
    CompatibleSet,
    RankReport,
    abelian_generators,
    in_kmin_length_one,
    local_explore,
    max_compatible_set,
    mv_commuting,
    rank_report,
    symmetric_ranks,
    vcd_symout,
)
from whitehead_norms import identity_salvetti, marked_salvetti
from whitehead_partitions import all_partitions, compatible, enumerate_partitions


def largest_compatible_by_levels(partitions):
    """Grow every compatible subset one partition at a time; size of the largest"""
    n = len(partitions)
    ok = [[compatible(p, q) for q in partitions] for p in partitions]
    level = [(i,) for i in range(n)]
    best = 0
    while level:
        best = len(level[0])
        level = [
            members + (j,)
            for members in level
            for j in range(members[-1] + 1, n)
            if all(ok[i][j] for i in members)
        ]
    return best


class TestCompatibleSets:
    """Maximum compatible sets of partitions"""

    def test_complete_graph_is_empty(self, k3):
        found = max_compatible_set(k3)
        assert len(found) == 0
        assert found.texts() == []

    def test_edgeless_three(self, e3):
        assert len(max_compatible_set(e3)) == 3
        assert len(max_compatible_set(e3, symmetric_only=True)) == 1

    def test_base_filter(self, path_point_graph):
        found = max_compatible_set(path_point_graph, bases={"a"}, symmetric_only=True)
        assert all("a" in p.bases for p in found.partitions)

    def test_check_rejects_incompatible(self, path_point_graph, p1, p3):
        with pytest.raises(DomainError):
            CompatibleSet((p1, p3), frozenset(path_point_graph.vertices)).check()

    def test_check_rejects_asymmetric(self, path_point_graph, p2):
        with pytest.raises(DomainError):
            CompatibleSet((p2,), frozenset(path_point_graph.vertices), True).check()


class TestRankReport:
    """M(V), M(L), MΣ(V), MΣ(L)"""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_complete_graphs_are_zero(self, n):
        report = rank_report(complete_graph(n))
        assert (report.m_all, report.m_principal, report.m_sym_all, report.m_sym_principal) == (0, 0, 0, 0)
        assert report.vcd == 0

    def test_edgeless_three(self, e3):
        report = rank_report(e3)
        assert report.m_all == report.m_principal == 3
        assert report.m_sym_all == report.m_sym_principal == 1
        assert report.dim_spine == 3 and report.dim_symspine == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [4, 5])
    def test_edgeless_ranks(self, n):
        report = rank_report(edgeless_graph(n))
        assert report.m_sym_all == n - 2
        assert report.m_all == 2 * n - 3

    @pytest.mark.parametrize("n", [3, pytest.param(4, marks=pytest.mark.slow)])
    def test_edgeless_ranks_against_subset_growth(self, n):
        g = edgeless_graph(n)
        report = rank_report(g)
        assert report.m_all == largest_compatible_by_levels(all_partitions(g)) == 2 * n - 3
        assert report.m_sym_all == largest_compatible_by_levels(all_partitions(g, symmetric_only=True)) == n - 2

    def test_path_point_against_subset_growth(self, path_point_graph):
        g = path_point_graph
        principal = order_report(g).principal
        report = rank_report(g)
        assert report.m_all == largest_compatible_by_levels(all_partitions(g))
        assert report.m_principal == largest_compatible_by_levels(all_partitions(g, principal))
        assert report.m_sym_all == largest_compatible_by_levels(all_partitions(g, symmetric_only=True))
        assert report.m_sym_principal == largest_compatible_by_levels(
            all_partitions(g, principal, symmetric_only=True)
        )

    def test_path_point(self, path_point_graph):
        report = rank_report(path_point_graph)
        assert report.vcd == report.m_sym_all == vcd_symout(path_point_graph)
        assert report.m_sym_principal <= report.m_sym_all <= report.m_all
        assert symmetric_ranks(path_point_graph) == (report.m_sym_all, report.m_sym_principal)

    def test_witnesses_are_valid(self, path_point_graph):
        report = rank_report(path_point_graph)
        assert set(report.witnesses) == {"M(V)", "M(L)", "MΣ(V)", "MΣ(L)"}
        for witness in report.witnesses.values():
            witness.check()
        assert len(report.witnesses["MΣ(V)"]) == report.m_sym_all

    def test_dict_round_trip(self, e3):
        report = rank_report(e3)
        again = RankReport.from_dict(e3, report.to_dict())
        assert again.text() == report.text()

    def test_text_lines(self, e3):
        lines = rank_report(e3).text().splitlines()
        assert lines[:5] == ["M(V)=3", "M(L)=3", "MΣ(V)=1", "MΣ(L)=1", "vcd=1"]
        assert lines[5].startswith("witness M(V): ( ")

    def test_budget_exceeded(self, e3):
        with pytest.raises(SearchBudgetExceeded):
            rank_report(e3, budget=1)


class TestCommutingGenerators:
    """Commuting criterion and certified abelian generating sets"""

    def test_criterion_needs_non_commuting_bases(self, path_point_graph, p1):
        same_base = enumerate_partitions(path_point_graph, "a")[0]
        with pytest.raises(DomainError):
            mv_commuting(p1, same_base)

    def test_criterion_on_commuting_bases(self, path_point_graph, p1, p2):
        # a and b commute
        with pytest.raises(DomainError):
            mv_commuting(p1, p2)

    def test_criterion_agrees_with_out(self):
        passed, detail = check_commuting(max_vertices=3)
        assert passed, detail

    @pytest.mark.slow
    def test_criterion_agrees_with_out_five_vertices(self):
        passed, detail = check_commuting(max_vertices=5)
        assert passed, detail

    def test_edgeless_three(self, e3):
        pairs = abelian_generators(e3)
        assert len(pairs) == 1
        assert is_symmetric_auto(whitehead_auto(pairs[0]))

    def test_complete_graph(self, k3):
        assert abelian_generators(k3) == []

    def test_path_point_pairwise_commute(self, path_point_graph):
        pairs = abelian_generators(path_point_graph)
        assert len(pairs) == rank_report(path_point_graph).m_sym_principal
        autos = [whitehead_auto(p) for p in pairs]
        assert all(commutes_in_out(x, y) for x, y in combinations(autos, 2))

    def test_symmetric_ranks_on_corpus(self):
        passed, detail = check_symmetric_ranks(max_vertices=4)
        assert passed, detail

    @pytest.mark.slow
    def test_symmetric_ranks_on_corpus_six_vertices(self):
        passed, detail = check_symmetric_ranks(max_vertices=6)
        assert passed, detail


class TestKmin:
    """Length-one floor of the W-norm"""

    def test_identity(self, path_point_graph):
        assert in_kmin_length_one(identity_salvetti(path_point_graph))

    def test_fold_above_floor(self, path_point_graph):
        sigma = marked_salvetti(fold(path_point_graph, "e", Literal("b", -1)))
        assert not in_kmin_length_one(sigma)

    def test_random_symmetric_markings(self):
        passed, detail = check_kmin_floor(30, random.Random(5))
        assert passed, detail


class TestLocalExplore:
    """Breadth-first Whitehead move graphs"""

    def test_complete_graph_single_node(self, k3):
        graph = local_explore(identity_salvetti(k3), 2)
        assert graph.summary() == "nodes=1 edges=0"

    def test_depth_zero(self, e3):
        graph = local_explore(identity_salvetti(e3), 0)
        assert len(graph.nodes) == 1 and graph.edges == []

    def test_symmetric_depth_one(self, e3):
        graph = local_explore(identity_salvetti(e3), 1, symmetric_only=True)
        # six partial conjugations up to inner automorphisms, from twelve pairs
        assert len(graph.nodes) == 7
        assert len(graph.edges) == 12
        assert all(is_symmetric_auto(node.sigma.marking) for node in graph.nodes)
        assert all(edge.source == 0 for edge in graph.edges)
        assert all(node.depth <= 1 for node in graph.nodes)

    def test_dot_is_deterministic(self, e3):
        first = local_explore(identity_salvetti(e3), 1, symmetric_only=True).to_dot()
        second = local_explore(identity_salvetti(e3), 1, symmetric_only=True).to_dot()
        assert first == second
        assert first.startswith("digraph moves {\n  n0 [label=")
        assert " -> " in first

    def test_depth_limit(self, e3):
        limit = get_settings().explore_depth_limit
        with pytest.raises(DomainError):
            local_explore(identity_salvetti(e3), limit + 1)
        with pytest.raises(DomainError):
            local_explore(identity_salvetti(e3), -1)

    def test_node_limit(self, e3):
        with pytest.raises(SearchBudgetExceeded):
            local_explore(identity_salvetti(e3), 2, max_nodes=2)
