"""
Tests for Γ-Whitehead partitions, compatibility and Whitehead pairs
"""

from itertools import combinations

import pytest

from defining_graph import Literal, atlas_corpus, complete_graph, edgeless_graph
from raag_errors import DomainError, InvalidPartitionError, WordParseError
from raag_words import enumerate_classes
from whitehead_norms import count_partition
from whitehead_partitions import (
    WhiteheadPair,
    adjacent,
    all_partitions,
    compatible,
    enumerate_partitions,
    interior,
    inverse_pair,
    is_symmetric,
    make_partition,
    opposite_quadrant_partitions,
    parse_partition,
    quadrants,
    whitehead_pairs,
)


def lits(g, text):
    """Literal set from 'a b^-1 ...'"""
    out = set()
    for token in text.split():
        if token.endswith("^-1"):
            out.add(Literal(token[:-3], -1))
        else:
            out.add(Literal(token, 1))
    return frozenset(out)


def assert_opposite_quadrants(p, q, x, y):
    """x, y sit on a pair of opposite quadrants and keep a maximal vertex of p or q"""
    sides = {(a, b) for a, b in quadrants(p, q).opposite_pairs()}
    assert any(
        a in (x.side_p, x.side_q) and b in (y.side_p, y.side_q) for a, b in sides
    ), f"{x} / {y} are not opposite quadrants of {p} and {q}"
    allowed = p.mx | q.mx
    assert x.mx & allowed and y.mx & allowed


def assert_crossing_inequality(p, q, classes):
    """|X|_w + |Y|_w ≤ |P|_w + |Q|_w over the given classes"""
    x, y = opposite_quadrant_partitions(p, q)
    for c in classes:
        w = c.rep
        left = count_partition(x, w) + count_partition(y, w)
        right = count_partition(p, w) + count_partition(q, w)
        assert left <= right, f"[{w}] on {p} and {q}: {left} > {right}"


class TestPathPointPartitions:
    """The three worked partitions of the path-plus-point graph"""

    def test_symmetric_flags(self, p1, p2, p3):
        assert (p1.symmetric, p2.symmetric, p3.symmetric) == (True, False, False)
        assert is_symmetric(p1) and not is_symmetric(p2)

    def test_bases_and_splits(self, p1, p2, p3):
        assert p1.base == "a" and p1.splits == {"a"}
        assert p2.base == "b" and p2.splits == {"b", "e"}
        assert p2.mx == {"b"}
        assert p3.base == "d" and p3.mx == {"d"}

    def test_text_round_trip(self, path_point_graph, p1):
        assert p1.text() == "( a c^-1 c d^-1 d | a^-1 e^-1 e | b^-1 b )"
        assert parse_partition(path_point_graph, p1.text()) == p1

    def test_p1_p2_adjacent_and_compatible(self, p1, p2):
        assert adjacent(p1, p2)
        assert compatible(p1, p2)

    def test_p3_compatible_with_neither(self, p1, p2, p3):
        assert not compatible(p3, p1)
        assert not compatible(p3, p2)
        assert quadrants(p1, p3).all_nonempty()

    def test_interior(self, path_point_graph, p1):
        assert interior(p1, p1.side_p) == path_point_graph.literals_of({"c", "d"})
        assert interior(p1, p1.side_q) == lits(path_point_graph, "e e^-1")

    def test_interior_needs_a_side(self, path_point_graph, p1):
        with pytest.raises(DomainError):
            interior(p1, lits(path_point_graph, "a"))


class TestEnumeration:
    """Partitions per base and across all bases"""

    def test_path_point_base_a(self, path_point_graph, p1):
        found = enumerate_partitions(path_point_graph, "a")
        assert len(found) == 6
        symmetric = enumerate_partitions(path_point_graph, "a", symmetric_only=True)
        assert len(symmetric) == 2
        assert p1 in symmetric

    def test_complete_graph_has_none(self, k3):
        assert enumerate_partitions(k3, "a") == []
        assert all_partitions(complete_graph(5)) == []

    def test_edgeless_counts(self, e3):
        assert len(all_partitions(e3, symmetric_only=True)) == 6
        # bipartitions of the six literals, both sides ≥ 2, some vertex split
        assert len(all_partitions(e3)) == 22

    def test_degenerate_only_on_request(self, e3):
        assert not any(p.degenerate for p in all_partitions(e3))
        assert any(p.degenerate for p in all_partitions(e3, allow_degenerate=True))

    def test_deterministic_order(self, path_point_graph):
        first = [p.text() for p in enumerate_partitions(path_point_graph, "b")]
        second = [p.text() for p in enumerate_partitions(path_point_graph, "b")]
        assert first == second


class TestValidation:
    """Invalid partitions are rejected"""

    def test_component_split_between_sides(self, path_point_graph):
        g = path_point_graph
        with pytest.raises(InvalidPartitionError):
            make_partition(g, "a", lits(g, "a c"), lits(g, "a^-1 c^-1 d d^-1 e e^-1"))

    def test_both_sides_singletons(self):
        g = edgeless_graph(1)
        with pytest.raises(InvalidPartitionError):
            make_partition(g, "a", lits(g, "a"), lits(g, "a^-1"))

    def test_parse_errors(self, path_point_graph):
        with pytest.raises(WordParseError):
            parse_partition(path_point_graph, "a b | c")
        with pytest.raises(WordParseError):
            parse_partition(path_point_graph, "( a b | c )")

    def test_no_base_possible(self, path_point_graph):
        with pytest.raises(InvalidPartitionError):
            parse_partition(path_point_graph, "( a b | a^-1 b^-1 | c )")


class TestOppositeQuadrants:
    """Partitions realizing opposite quadrants of incompatible partitions"""

    def test_p1_p3(self, path_point_graph, p1, p3):
        x, y = opposite_quadrant_partitions(p1, p3)
        g = path_point_graph
        assert lits(g, "d^-1") in (x.side_p, x.side_q)
        assert x.degenerate
        assert lits(g, "a^-1 e^-1") in (y.side_p, y.side_q)
        assert x.mx & (p1.mx | p3.mx) and y.mx & (p1.mx | p3.mx)

    def test_p2_p3(self, p2, p3):
        x, y = opposite_quadrant_partitions(p2, p3)
        assert_opposite_quadrants(p2, p3, x, y)

    def test_compatible_input_rejected(self, p1, p2):
        with pytest.raises(DomainError):
            opposite_quadrant_partitions(p1, p2)

    @pytest.mark.parametrize("max_vertices", [3, pytest.param(4, marks=pytest.mark.slow)])
    def test_every_incompatible_pair_on_corpus(self, max_vertices):
        for g in atlas_corpus(max_vertices, connected_only=False):
            for p, q in combinations(all_partitions(g), 2):
                if not compatible(p, q):
                    x, y = opposite_quadrant_partitions(p, q)
                    assert_opposite_quadrants(p, q, x, y)

    @pytest.mark.parametrize("names", [("p1", "p3"), ("p2", "p3")])
    def test_crossing_inequality_worked(self, request, path_point_graph, names):
        p, q = (request.getfixturevalue(n) for n in names)
        assert_crossing_inequality(p, q, enumerate_classes(path_point_graph, 4))

    @pytest.mark.slow
    def test_crossing_inequality_on_corpus(self):
        for g in atlas_corpus(3, connected_only=False):
            classes = enumerate_classes(g, 5)
            for p, q in combinations(all_partitions(g), 2):
                if not compatible(p, q):
                    assert_crossing_inequality(p, q, classes)


class TestWhiteheadPairs:
    """Partition plus multiplier"""

    def test_multiplier_must_be_split(self, p1):
        with pytest.raises(InvalidPartitionError):
            WhiteheadPair(p1, Literal("c"))

    def test_inverse_pair(self, p2):
        pair = WhiteheadPair(p2, Literal("b"))
        inverse = inverse_pair(pair)
        assert inverse.multiplier == Literal("b", -1)
        assert inverse.partition.text() == "( b d^-1 d e^-1 | b^-1 e | a^-1 a c^-1 c )"
        assert inverse_pair(inverse) == pair

    def test_symmetric_pairs_of_e3(self, e3):
        pairs = whitehead_pairs(e3, symmetric_only=True)
        assert len(pairs) == 12
        assert pairs[0].multiplier == Literal("a", -1)
        assert all(p.in_mx for p in pairs)

    def test_pair_text(self, p2):
        pair = WhiteheadPair(p2, Literal("b"))
        assert pair.text() == "( b e | b^-1 d^-1 d e^-1 | a^-1 a c^-1 c ) by b"
