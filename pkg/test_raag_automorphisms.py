"""
Tests for automorphisms: elementary moves, composition, outer equality, Ω, file format
"""

import random

import pytest

from defining_graph import Literal, edgeless_graph
from raag_automorphisms import (
    OuterMarking,
    apply,
    canon_mod_omega,
    commutes_in_out,
    compose,
    fold,
    graph_symmetries,
    graph_symmetry,
    identity,
    inner,
    inversion,
    invert,
    is_inner,
    is_pure_symmetric,
    is_symmetric_auto,
    load_automorphism,
    omega_elements,
    outer_equal,
    outer_equal_mod_omega,
    partial_conjugation,
    random_symmetric_auto,
    whitehead_auto,
)
from raag_errors import AutomorphismParseError, DomainError, InvalidAutomorphism
from raag_words import parse_word
from whitehead_norms import marked_salvetti
from whitehead_partitions import WhiteheadPair


# ============================================================================
# FIXTURES
# ============================================================================

@pytest.fixture
def fold_e(path_point_graph):
    """e ↦ e b⁻¹"""
    return fold(path_point_graph, "e", Literal("b", -1))


@pytest.fixture
def conj_b_by_a(e3):
    return partial_conjugation(e3, "a", {"b"})


def image(a, v):
    return str(a.image(v))


class TestElementaryMoves:
    """Whitehead automorphisms, partial conjugations, folds, inversions"""

    def test_fold_is_p2_by_b(self, p2, fold_e):
        phi = whitehead_auto(WhiteheadPair(p2, Literal("b")))
        assert phi.images == fold_e.images
        assert image(fold_e, "e") == "e b^-1"
        assert image(fold_e, "d") == "d"

    def test_partial_conjugation(self, conj_b_by_a):
        assert image(conj_b_by_a, "b") == "a b a^-1"
        assert image(conj_b_by_a, "c") == "c"

    def test_partial_conjugation_needs_component(self, e3):
        with pytest.raises(DomainError):
            partial_conjugation(e3, "a", {"b", "c"})

    def test_fold_needs_domination(self, path_point_graph):
        with pytest.raises(DomainError):
            fold(path_point_graph, "a", Literal("b"))
        with pytest.raises(DomainError):
            fold(path_point_graph, "b", Literal("e"))

    def test_inversion(self, e3):
        a = inversion(e3, "b")
        assert image(a, "b") == "b^-1"
        assert image(a, "a") == "a"

    def test_graph_symmetry(self, path_point_graph):
        flip = graph_symmetry(path_point_graph, {"a": "d", "b": "c", "c": "b", "d": "a"})
        assert image(flip, "a") == "d"
        assert image(flip, "e") == "e"

    def test_graph_symmetry_must_preserve_edges(self, path_point_graph):
        with pytest.raises(DomainError):
            graph_symmetry(path_point_graph, {"a": "e", "e": "a"})


class TestComposition:
    """compose, invert, apply"""

    def test_compose_order(self, e3, conj_b_by_a):
        inv_a = inversion(e3, "a")
        # apply the conjugation first, then invert a
        a = compose(inv_a, conj_b_by_a)
        assert image(a, "b") == "a^-1 b a"

    def test_invert(self, fold_e):
        assert compose(invert(fold_e), fold_e).is_identity()
        assert compose(fold_e, invert(fold_e)).is_identity()

    def test_apply(self, path_point_graph, fold_e):
        w = parse_word(path_point_graph, "e b")
        assert str(apply(fold_e, w)) == "e"

    def test_identity(self, e3):
        assert identity(e3).is_identity()
        assert identity(e3).short_text() == "a->a; b->b; c->c"


class TestSymmetry:
    """Symmetric and pure symmetric automorphisms"""

    def test_partial_conjugation_is_pure_symmetric(self, conj_b_by_a):
        assert is_symmetric_auto(conj_b_by_a)
        assert is_pure_symmetric(conj_b_by_a)

    def test_inversion_symmetric_not_pure(self, e3):
        a = inversion(e3, "a")
        assert is_symmetric_auto(a)
        assert not is_pure_symmetric(a)

    def test_fold_not_symmetric(self, fold_e):
        assert not is_symmetric_auto(fold_e)

    def test_random_products_are_symmetric(self, path_point_graph):
        rng = random.Random(3)
        for _ in range(10):
            assert is_symmetric_auto(random_symmetric_auto(path_point_graph, 5, rng))


class TestOuterEquality:
    """Equality in Out(A_Γ) with a conjugator witness"""

    def test_inner_automorphism(self, e3):
        a = inner(e3, Literal("a"))
        assert image(a, "b") == "a b a^-1"
        assert str(outer_equal(a, identity(e3))) == "a"
        assert is_inner(a)

    def test_fold_not_inner(self, fold_e):
        assert not is_inner(fold_e)

    def test_partial_conjugations_same_base_commute(self, e3, conj_b_by_a):
        conj_c_by_a = partial_conjugation(e3, "a", {"c"})
        assert commutes_in_out(conj_b_by_a, conj_c_by_a)

    def test_inversion_and_conjugation_do_not_commute(self, e3, conj_b_by_a):
        assert not commutes_in_out(inversion(e3, "a"), conj_b_by_a)


class TestOmega:
    """Signed graph symmetries"""

    def test_graph_symmetries(self, path_point_graph):
        symmetries = graph_symmetries(path_point_graph)
        assert len(symmetries) == 2
        assert all(v == w for v, w in symmetries[0])

    def test_omega_size(self, path_point_graph, e3):
        assert len(omega_elements(path_point_graph)) == 2 * 2 ** 5
        assert len(omega_elements(e3)) == 6 * 2 ** 3

    def test_identity_is_canonical(self, e3):
        assert canon_mod_omega(identity(e3)).images == identity(e3).images
        assert canon_mod_omega(inversion(e3, "a")).images == identity(e3).images

    def test_markings_mod_omega(self, e3, conj_b_by_a):
        assert outer_equal_mod_omega(inversion(e3, "c"), identity(e3))
        assert OuterMarking(inversion(e3, "a")).same_as(OuterMarking(identity(e3)))
        assert not OuterMarking(conj_b_by_a).same_as(OuterMarking(identity(e3)))
        assert OuterMarking(inversion(e3, "a")).label() == "a->a; b->b; c->c"


class TestFileFormat:
    """Automorphism files"""

    def test_load_fold(self, path_point_graph, data_dir):
        a = load_automorphism(path_point_graph, (data_dir / "path_point_fold_e.auto").read_text())
        assert image(a, "e") == "e b^-1"
        assert len(a.moves) == 1

    def test_load_symmetric(self, path_point_graph, data_dir):
        a = load_automorphism(path_point_graph, (data_dir / "path_point_symmetric.auto").read_text())
        assert image(a, "e") == "b e b^-1"
        assert image(a, "a") == "a^-1"
        assert is_symmetric_auto(a)

    def test_text_reloads(self, path_point_graph, fold_e):
        again = load_automorphism(path_point_graph, fold_e.text())
        assert again.images == fold_e.images

    def test_bad_line_number(self, e3):
        with pytest.raises(AutomorphismParseError) as info:
            load_automorphism(e3, "a -> a\nb => b\nc -> c\n")
        assert info.value.line == 2

    def test_missing_image(self, e3):
        with pytest.raises(AutomorphismParseError):
            load_automorphism(e3, "a -> a\nb -> b\n")

    def test_not_a_homomorphism(self, path_point_graph):
        text = "a -> a\nb -> b e\nc -> c\nd -> d\ne -> e\n"
        with pytest.raises(InvalidAutomorphism):
            load_automorphism(path_point_graph, text)

    def test_images_without_moves_rejected(self):
        g = edgeless_graph(2)
        with pytest.raises(InvalidAutomorphism) as info:
            load_automorphism(g, "a -> a b\nb -> b\n")
        assert "move:" in str(info.value)
        assert info.value.exit_code == 2

    def test_valid_fold_without_moves_rejected(self, path_point_graph):
        text = "a -> a\nb -> b\nc -> c\nd -> d\ne -> e b^-1\n"
        with pytest.raises(InvalidAutomorphism) as info:
            load_automorphism(path_point_graph, text)
        assert "move:" in str(info.value)

    def test_identity_without_moves_is_a_marking(self, path_point_graph, data_dir):
        a = load_automorphism(path_point_graph, (data_dir / "path_point_identity.auto").read_text())
        assert a.is_identity() and a.moves == ()
        assert invert(a).is_identity()
        assert marked_salvetti(a).inverse.is_identity()
