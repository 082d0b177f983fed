"""
RAAG Automorphisms - automorphisms of A_Γ built from elementary moves

Covers:
- Elementary moves: inversions, graph symmetries, Whitehead pairs
- Γ-Whitehead automorphisms, partial conjugations and folds
- Composition (compose(a, b) applies b, then a), inversion via move words, application to words
- Symmetric / pure symmetric tests
- Outer equality with a conjugator witness, Ω(A_Γ) and Ω-canonical representatives
- Automorphism file format
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union
import logging
import random

import networkx as nx

from config import get_settings
from defining_graph import DefiningGraph, Literal
from raag_errors import (
    AutomorphismParseError,
    DomainError,
    InvalidAutomorphism,
    InvalidPartitionError,
    OuterEqualityUndecided,
    RaagError,
)
from raag_words import (
    Word,
    _back_positions,
    _front_positions,
    cyclic_reduce_with_prefix,
    is_trivial,
    multiply,
    normal_form,
    parse_literal,
    parse_word,
    word,
)
from whitehead_partitions import (
    WhiteheadPair,
    inverse_pair,
    make_partition,
    parse_partition,
    whitehead_pairs,
)

logger = logging.getLogger(__name__)


# ============================================================================
# ELEMENTARY MOVES
# ============================================================================

@dataclass(frozen=True)
class Inversion:
    vertex: str

    def inverse(self) -> "Inversion":
        return self

    def text(self) -> str:
        return f"inversion {self.vertex}"


@dataclass(frozen=True)
class GraphSymmetry:
    """Vertex permutation preserving E(Γ), stored as (v, π(v)) in vertex order"""

    mapping: Tuple[Tuple[str, str], ...]

    def inverse(self) -> "GraphSymmetry":
        back = {w: v for v, w in self.mapping}
        return GraphSymmetry(tuple((v, back[v]) for v, _ in self.mapping))

    def text(self) -> str:
        return "symmetry " + " ".join(f"{v}={w}" for v, w in self.mapping)


@dataclass(frozen=True)
class WhiteheadMove:
    pair: WhiteheadPair

    def inverse(self) -> "WhiteheadMove":
        return WhiteheadMove(inverse_pair(self.pair))

    def text(self) -> str:
        return f"whitehead {self.pair.text()}"


ElementaryMove = Union[Inversion, GraphSymmetry, WhiteheadMove]


def _move_images(g: DefiningGraph, move: ElementaryMove) -> Tuple[Word, ...]:
    if isinstance(move, Inversion):
        return tuple(
            word(g, (Literal(v, -1 if v == move.vertex else 1),)) for v in g.vertices
        )
    if isinstance(move, GraphSymmetry):
        pi = dict(move.mapping)
        return tuple(word(g, (Literal(pi[v], 1),)) for v in g.vertices)

    # u ↦ x^[u⁻¹ ∈ P_x] · u · x^-[u ∈ P_x], the multiplier's vertex fixed
    x = move.pair.multiplier
    positive = move.pair.positive_side
    images = []
    for v in g.vertices:
        u = Literal(v, 1)
        letters: List[Literal] = []
        if v != x.vertex:
            if u.inverse() in positive:
                letters.append(x)
            letters.append(u)
            if u in positive:
                letters.append(x.inverse())
        else:
            letters.append(u)
        images.append(normal_form(word(g, letters)))
    return tuple(images)


# ============================================================================
# AUTOMORPHISM
# ============================================================================

@dataclass(frozen=True)
class RaagAutomorphism:
    """
    Generator-image map with the move word that produces it.

    Moves are stored in application order: the automorphism equals
    moves[-1] ∘ ... ∘ moves[0].
    """

    graph: DefiningGraph = field(repr=False)
    images: Tuple[Word, ...]
    moves: Tuple[ElementaryMove, ...] = ()

    def image(self, v: str) -> Word:
        return self.images[self.graph.index[v]]

    def image_map(self) -> Dict[str, str]:
        return {v: str(w) for v, w in zip(self.graph.vertices, self.images)}

    def is_identity(self) -> bool:
        return all(
            w.letters == (Literal(v, 1),) for v, w in zip(self.graph.vertices, self.images)
        )

    def max_image_length(self) -> int:
        return max(len(w) for w in self.images)

    def map_key(self) -> Tuple:
        """Total order on image maps; the vertex's positive literal sorts first"""
        g = self.graph
        return tuple(
            (len(w), tuple((g.index[x.vertex], -x.sign) for x in w.letters))
            for w in self.images
        )

    def text(self) -> str:
        lines = [f"{v} -> {w}" for v, w in zip(self.graph.vertices, self.images)]
        lines += [f"move: {m.text()}" for m in self.moves]
        return "\n".join(lines) + "\n"

    def short_text(self) -> str:
        return "; ".join(
            f"{v}->{w}" for v, w in zip(self.graph.vertices, self.images)
        )


def identity(g: DefiningGraph) -> RaagAutomorphism:
    return RaagAutomorphism(g, tuple(word(g, (Literal(v, 1),)) for v in g.vertices))


def elementary(g: DefiningGraph, move: ElementaryMove) -> RaagAutomorphism:
    return RaagAutomorphism(g, _move_images(g, move), (move,))


def apply(a: RaagAutomorphism, w: Word) -> Word:
    g = a.graph
    pieces = []
    for x in w.letters:
        image = a.image(x.vertex)
        pieces.append(image if x.sign > 0 else image.inverse())
    return multiply(word(g), *pieces)


def compose(a: RaagAutomorphism, b: RaagAutomorphism) -> RaagAutomorphism:
    """a ∘ b: apply b, then a"""
    return RaagAutomorphism(
        a.graph, tuple(apply(a, w) for w in b.images), b.moves + a.moves
    )


def from_moves(g: DefiningGraph, moves: Iterable[ElementaryMove]) -> RaagAutomorphism:
    current = identity(g)
    for move in moves:
        current = compose(elementary(g, move), current)
    return current


def invert(a: RaagAutomorphism) -> RaagAutomorphism:
    """Replay the reversed word of inverse moves"""
    if not a.moves and not a.is_identity():
        raise InvalidAutomorphism("Cannot invert an image map without its move word")
    return from_moves(a.graph, [m.inverse() for m in reversed(a.moves)])


def is_homomorphism(a: RaagAutomorphism) -> bool:
    """Images of adjacent generators commute"""
    for u, v in a.graph.sorted_edges():
        x, y = a.image(u), a.image(v)
        if not is_trivial(x * y * x.inverse() * y.inverse()):
            return False
    return True


def validate(a: RaagAutomorphism) -> RaagAutomorphism:
    if not is_homomorphism(a):
        raise InvalidAutomorphism("Homomorphism check failed: edge images do not commute")
    replay = from_moves(a.graph, a.moves)
    if replay.images != a.images:
        raise InvalidAutomorphism("Image map is not generated by its move word")
    if not compose(invert(a), a).is_identity():
        raise InvalidAutomorphism("Invertibility check failed")
    return a


# ============================================================================
# GENERATORS
# ============================================================================

def whitehead_auto(pair: WhiteheadPair) -> RaagAutomorphism:
    a = elementary(pair.partition.graph, WhiteheadMove(pair))
    if not is_homomorphism(a):
        raise InvalidPartitionError(f"Pair {pair} does not define an automorphism")
    return a


def partial_conjugation(g: DefiningGraph, m: str, component: Iterable[str]) -> RaagAutomorphism:
    """v ↦ m v m⁻¹ for v in a component C of Γ ∖ st(m)"""
    g.require_vertex(m)
    chosen = frozenset(component)
    outside = g.to_networkx().subgraph(set(g.vertices) - g.star(m))
    if chosen not in {frozenset(c) for c in nx.connected_components(outside)}:
        raise DomainError(f"{sorted(chosen)} is not a component of Γ ∖ st({m})")
    side_p = {Literal(m, 1)} | g.literals_of(chosen)
    rest = g.literals_of(set(g.vertices) - g.star(m) - chosen)
    partition = make_partition(g, m, side_p, {Literal(m, -1)} | rest)
    return whitehead_auto(WhiteheadPair(partition, Literal(m, 1)))


def fold(g: DefiningGraph, v: str, by: Literal, left: bool = False) -> RaagAutomorphism:
    """Transvection v ↦ v·by (or by·v when left), realized by a partition based at by"""
    m = by.vertex
    if v == m or g.commutes(v, m) or not g.link(v) <= g.star(m):
        raise DomainError(f"Cannot fold {v} by {by}: needs lk({v}) ⊆ st({m}) and {v} ≁ {m}")
    x = by if left else by.inverse()
    moved = Literal(v, -1) if left else Literal(v, 1)
    side_p = {x, moved}
    side_q = set(g.literals) - side_p - g.literals_of(g.link(m))
    partition = make_partition(g, m, side_p, side_q)
    return whitehead_auto(WhiteheadPair(partition, x))


def inversion(g: DefiningGraph, v: str) -> RaagAutomorphism:
    return elementary(g, Inversion(g.require_vertex(v)))


def graph_symmetry(g: DefiningGraph, mapping: Mapping[str, str]) -> RaagAutomorphism:
    pi = {v: mapping.get(v, v) for v in g.vertices}
    if sorted(pi.values()) != sorted(g.vertices):
        raise DomainError("Graph symmetry must permute the vertices")
    if {frozenset(pi[u] for u in e) for e in g.edges} != set(g.edges):
        raise DomainError("Graph symmetry must preserve the edges")
    return elementary(g, GraphSymmetry(tuple((v, pi[v]) for v in g.vertices)))


def inner(g: DefiningGraph, x: Literal) -> RaagAutomorphism:
    """Conjugation w ↦ x w x⁻¹ as a product of partial conjugations"""
    outside = g.to_networkx().subgraph(set(g.vertices) - g.star(x.vertex))
    a = identity(g)
    for component in sorted(nx.connected_components(outside),
                            key=lambda c: min(g.index[v] for v in c)):
        a = compose(partial_conjugation(g, x.vertex, component), a)
    return a if x.sign > 0 else invert(a)


@lru_cache(maxsize=32)
def graph_symmetries(g: DefiningGraph) -> Tuple[Tuple[Tuple[str, str], ...], ...]:
    """Automorphisms of Γ as (v, π(v)) tuples, identity first"""
    nxg = g.to_networkx()
    found = {
        tuple((v, iso[v]) for v in g.vertices)
        for iso in nx.algorithms.isomorphism.vf2pp_all_isomorphisms(nxg, nxg)
    }
    return tuple(sorted(found, key=lambda m: [g.index[w] for _, w in m]))


@lru_cache(maxsize=32)
def omega_elements(g: DefiningGraph) -> Tuple[RaagAutomorphism, ...]:
    """Ω(A_Γ): signed graph symmetries v ↦ π(v)^ε_v"""
    elements = []
    for mapping in graph_symmetries(g):
        pi = dict(mapping)
        for signs in product((1, -1), repeat=len(g.vertices)):
            images = tuple(
                word(g, (Literal(pi[v], s),)) for v, s in zip(g.vertices, signs)
            )
            moves: List[ElementaryMove] = []
            if any(v != w for v, w in mapping):
                moves.append(GraphSymmetry(mapping))
            moves += [Inversion(pi[v]) for v, s in zip(g.vertices, signs) if s < 0]
            elements.append(RaagAutomorphism(g, images, tuple(moves)))
    logger.debug(f"Ω has {len(elements)} elements")
    return tuple(elements)


# ============================================================================
# PREDICATES
# ============================================================================

def _cores(a: RaagAutomorphism) -> List[Word]:
    return [cyclic_reduce_with_prefix(w)[1] for w in a.images]


def is_symmetric_auto(a: RaagAutomorphism) -> bool:
    """Each generator goes to a conjugate of a signed generator, bijectively on V"""
    cores = _cores(a)
    if any(len(c) != 1 for c in cores):
        return False
    return len({c.letters[0].vertex for c in cores}) == len(cores)


def is_pure_symmetric(a: RaagAutomorphism) -> bool:
    """Each generator goes to a conjugate of itself"""
    return all(
        c.letters == (Literal(v, 1),) for v, c in zip(a.graph.vertices, _cores(a))
    )


# ============================================================================
# OUTER EQUALITY
# ============================================================================

def _strip_front(g: DefiningGraph, letters: List[Literal], allowed: Set[str]) -> List[Literal]:
    """Remove the largest prefix with letters in `allowed`; return it"""
    taken = []
    while True:
        hit = next((i for i in _front_positions(g, letters) if letters[i].vertex in allowed), None)
        if hit is None:
            return taken
        taken.append(letters.pop(hit))


def _strip_back(g: DefiningGraph, letters: List[Literal], allowed: Set[str]) -> List[Literal]:
    taken = []
    while True:
        hit = next((i for i in _back_positions(g, letters) if letters[i].vertex in allowed), None)
        if hit is None:
            return list(reversed(taken))
        taken.append(letters.pop(hit))


def outer_equal(a: RaagAutomorphism, b: RaagAutomorphism) -> Optional[Word]:
    """
    Conjugator g with a(v) = g·b(v)·g⁻¹ for every v, or None.

    χ = a ∘ b⁻¹ must send v to p_v·v·p_v⁻¹; the admissible g for v form the
    coset p_v·A_st(v). Intersecting these cosets one vertex at a time decides
    existence exactly.
    """
    g = a.graph
    chi = compose(a, invert(b))
    rep = word(g)
    allowed: Set[str] = set(g.vertices)

    for v in g.vertices:
        prefix, core = cyclic_reduce_with_prefix(chi.image(v))
        if core.letters != (Literal(v, 1),):
            return None
        # rep·A_allowed ∩ prefix·A_st(v) is nonempty iff rep⁻¹·prefix ∈ A_allowed·A_st(v)
        z = list(multiply(rep.inverse(), prefix).letters)
        left = _strip_front(g, z, allowed)
        if any(x.vertex not in g.star(v) for x in z):
            return None
        rep = multiply(rep, word(g, left))
        allowed &= g.star(v)

    letters = list(rep.letters)
    _strip_back(g, letters, allowed)
    witness = normal_form(word(g, letters))

    bound = max(get_settings().conjugator_bound_floor,
                2 * max(a.max_image_length(), b.max_image_length()))
    if len(witness) > bound:
        raise OuterEqualityUndecided(
            f"Conjugator of length {len(witness)} exceeds the bound {bound}"
        )
    for v in g.vertices:
        if multiply(witness, b.image(v), witness.inverse()) != normal_form(a.image(v)):
            raise RaagError(f"Conjugator {witness} failed verification on {v}")
    return witness


def is_inner(a: RaagAutomorphism) -> bool:
    return outer_equal(a, identity(a.graph)) is not None


def commutes_in_out(a: RaagAutomorphism, b: RaagAutomorphism) -> bool:
    return outer_equal(compose(a, b), compose(b, a)) is not None


def canon_mod_omega(a: RaagAutomorphism) -> RaagAutomorphism:
    """Least a∘ω over ω ∈ Ω under the image-map order"""
    return min(
        (compose(a, omega) for omega in omega_elements(a.graph)),
        key=RaagAutomorphism.map_key,
    )


def outer_equal_mod_omega(a: RaagAutomorphism, b: RaagAutomorphism) -> bool:
    """(S, a) ~ (S, b): a∘ω agrees with b in Out for some ω ∈ Ω"""
    return any(
        outer_equal(compose(a, omega), b) is not None for omega in omega_elements(a.graph)
    )


@dataclass(frozen=True)
class OuterMarking:
    """Automorphism taken up to inner automorphisms (and Ω when mod_omega)"""

    rep: RaagAutomorphism
    mod_omega: bool = True

    def same_as(self, other: "OuterMarking") -> bool:
        if self.mod_omega or other.mod_omega:
            return outer_equal_mod_omega(self.rep, other.rep)
        return outer_equal(self.rep, other.rep) is not None

    def label(self) -> str:
        base = canon_mod_omega(self.rep) if self.mod_omega else self.rep
        return base.short_text()


# ============================================================================
# FILE FORMAT
# ============================================================================

def parse_move(g: DefiningGraph, text: str) -> ElementaryMove:
    kind, _, rest = text.strip().partition(" ")
    rest = rest.strip()
    if kind == "inversion":
        return Inversion(g.require_vertex(rest))
    if kind == "symmetry":
        mapping = {}
        for token in rest.split():
            v, sep, w = token.partition("=")
            if not sep:
                raise AutomorphismParseError(f"Malformed symmetry entry {token!r}")
            mapping[g.require_vertex(v)] = g.require_vertex(w)
        return graph_symmetry(g, mapping).moves[0]
    if kind == "whitehead":
        partition_text, sep, multiplier = rest.rpartition(" by ")
        if not sep:
            raise AutomorphismParseError(f"Whitehead move needs 'by <literal>': {text!r}")
        pair = WhiteheadPair(parse_partition(g, partition_text), parse_literal(g, multiplier.strip()))
        return WhiteheadMove(pair)
    raise AutomorphismParseError(f"Unknown move kind {kind!r}")


def load_automorphism(g: DefiningGraph, text: str) -> RaagAutomorphism:
    """Parse '<vertex> -> <word>' lines plus optional 'move:' lines, then validate"""
    declared: Dict[str, Word] = {}
    moves: List[ElementaryMove] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("move:"):
                moves.append(parse_move(g, line[len("move:"):]))
                continue
            vertex, sep, image = line.partition("->")
            if not sep:
                raise AutomorphismParseError(f"Malformed line {line!r}")
            vertex = g.require_vertex(vertex.strip())
            if vertex in declared:
                raise AutomorphismParseError(f"Vertex {vertex!r} listed twice")
            declared[vertex] = normal_form(parse_word(g, image))
        except RaagError as e:
            raise AutomorphismParseError(str(e), number) from e

    missing = [v for v in g.vertices if v not in declared]
    if missing:
        raise AutomorphismParseError(f"No image given for {', '.join(missing)}")
    a = RaagAutomorphism(g, tuple(declared[v] for v in g.vertices), tuple(moves))
    if not moves and not a.is_identity():
        # inverses come from the move word, never from the images
        raise InvalidAutomorphism(
            "Image map has no 'move:' lines; only the identity may omit them"
        )
    return validate(a)


# ============================================================================
# RANDOM SYMMETRIC PRODUCTS
# ============================================================================

def symmetric_moves(g: DefiningGraph) -> List[ElementaryMove]:
    """Partial conjugations, inversions and graph symmetries"""
    moves: List[ElementaryMove] = [WhiteheadMove(p) for p in whitehead_pairs(g, symmetric_only=True)]
    moves += [Inversion(v) for v in g.vertices]
    moves += [GraphSymmetry(m) for m in graph_symmetries(g) if any(v != w for v, w in m)]
    return moves


def random_symmetric_auto(g: DefiningGraph, max_moves: int,
                          rng: random.Random) -> RaagAutomorphism:
    pool = symmetric_moves(g)
    count = rng.randint(0, max_moves)
    return from_moves(g, [rng.choice(pool) for _ in range(count)])
