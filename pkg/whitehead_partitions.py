"""
Whitehead Partitions - Γ-Whitehead partitions of V^± and Whitehead pairs

Covers:
- Partition validation, enumeration per base and across all bases
- Derived data: splits, bases, maximal split vertices, symmetric/degenerate flags
- Adjacency and compatibility of partitions
- Quadrants of two partitions and opposite-quadrant partitions
- Whitehead pairs (partition + multiplier) and their inverse pairs
- Bit-exact text form "( P | P̄ | lk )"
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
import logging

from defining_graph import DefiningGraph, Literal, components_outside_star, dominated
from raag_errors import DomainError, InvalidPartitionError, RaagError, WordParseError
from raag_words import parse_literal

logger = logging.getLogger(__name__)

Side = FrozenSet[Literal]


# ============================================================================
# PARTITION
# ============================================================================

@dataclass(frozen=True, eq=False)
class WhiteheadPartition:
    """
    Partition (P | P̄ | lk(m)^±) of V^± based at m.

    The stored orientation puts the base m in side_p and m⁻¹ in side_q.
    Identity is the unordered pair of sides; `base` only records which
    base the partition was built from.
    """

    graph: DefiningGraph = field(repr=False)
    base: str
    side_p: Side
    side_q: Side
    link_set: Side

    def __post_init__(self):
        g, m = self.graph, self.base
        g.require_vertex(m)
        everything = frozenset(g.literals)
        if self.link_set != g.literals_of(g.link(m)):
            raise InvalidPartitionError(f"Link set is not lk({m})^±")
        if (self.side_p & self.side_q) or (self.side_p | self.side_q) & self.link_set:
            raise InvalidPartitionError("Sides and link must be pairwise disjoint")
        if self.side_p | self.side_q | self.link_set != everything:
            raise InvalidPartitionError("Sides and link must cover V^±")
        if Literal(m, 1) not in self.side_p or Literal(m, -1) not in self.side_q:
            raise InvalidPartitionError(f"Base {m} must lie in P and {m}^-1 in P̄")
        for component in components_outside_star(g, m):
            if not (component <= self.side_p or component <= self.side_q):
                raise InvalidPartitionError(
                    f"Component {format_literals(g, component)} is split between the sides"
                )
        thin = [s for s in (self.side_p, self.side_q) if len(s) < 2]
        if len(thin) == 2:
            raise InvalidPartitionError("Both sides are singletons")
        for v in self.splits:
            if not g.link(v) <= g.link(m):
                raise InvalidPartitionError(f"Split vertex {v} has lk({v}) ⊄ lk({m})")

    # ------------------------------------------------------------------
    # Identity
    # ------------------------------------------------------------------

    @cached_property
    def key(self) -> FrozenSet[Side]:
        return frozenset((self.side_p, self.side_q))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WhiteheadPartition):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def sort_key(self) -> Tuple:
        g = self.graph
        return (
            g.index[self.base],
            len(self.side_p),
            tuple(sorted(g.literal_key(x) for x in self.side_p)),
        )

    # ------------------------------------------------------------------
    # Derived data
    # ------------------------------------------------------------------

    def side_of(self, x: Literal) -> Optional[Side]:
        if x in self.side_p:
            return self.side_p
        if x in self.side_q:
            return self.side_q
        return None

    def other_side(self, side: Side) -> Side:
        return self.side_q if side == self.side_p else self.side_p

    @cached_property
    def splits(self) -> FrozenSet[str]:
        return frozenset(
            v for v in self.graph.vertices
            if (Literal(v, 1) in self.side_p) != (Literal(v, -1) in self.side_p)
            and Literal(v, 1) not in self.link_set
        )

    @cached_property
    def bases(self) -> FrozenSet[str]:
        lk = self.graph.link(self.base)
        return frozenset(n for n in self.splits if self.graph.link(n) == lk)

    @cached_property
    def mx(self) -> FrozenSet[str]:
        """Split vertices maximal under ≤ restricted to the split set"""
        g = self.graph
        return frozenset(
            n for n in self.splits
            if not any(
                dominated(g, n, k) and not dominated(g, k, n) for k in self.splits
            )
        )

    @cached_property
    def symmetric(self) -> bool:
        return self.splits == {self.base}

    @cached_property
    def degenerate(self) -> bool:
        return len(self.side_p) == 1 or len(self.side_q) == 1

    def text(self) -> str:
        g = self.graph
        parts = (format_literals(g, s) for s in (self.side_p, self.side_q, self.link_set))
        return "( " + " | ".join(parts) + " )"

    def __str__(self) -> str:
        return self.text()

    def to_dict(self) -> Dict:
        return {
            "base": self.base,
            "text": self.text(),
            "splits": sorted(self.splits, key=self.graph.index.__getitem__),
            "symmetric": self.symmetric,
            "degenerate": self.degenerate,
        }


def format_literals(g: DefiningGraph, literals: Iterable[Literal]) -> str:
    return " ".join(str(x) for x in sorted(literals, key=g.literal_key))


def make_partition(g: DefiningGraph, base: str, side_a: Iterable[Literal],
                   side_b: Iterable[Literal]) -> WhiteheadPartition:
    """Build a partition based at `base`, orienting whichever side holds the base first"""
    a, b = frozenset(side_a), frozenset(side_b)
    if Literal(base, 1) in b:
        a, b = b, a
    return WhiteheadPartition(g, base, a, b, g.literals_of(g.link(base)))


def parse_partition(g: DefiningGraph, text: str) -> WhiteheadPartition:
    """Read the text form; the base is the least vertex the sides admit as base"""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise WordParseError(f"Partition must be parenthesized: {text!r}")
    chunks = body[1:-1].split("|")
    if len(chunks) != 3:
        raise WordParseError(f"Partition needs three '|'-separated parts: {text!r}")
    side_a, side_b, link_part = (
        frozenset(parse_literal(g, t) for t in chunk.split()) for chunk in chunks
    )

    for first, second in ((side_a, side_b), (side_b, side_a)):
        for m in g.vertices:
            if (Literal(m, 1) in first and Literal(m, -1) in second
                    and link_part == g.literals_of(g.link(m))):
                return WhiteheadPartition(g, m, first, second, link_part)
    raise InvalidPartitionError(f"No vertex can serve as base of {text!r}")


# ============================================================================
# ENUMERATION
# ============================================================================

def enumerate_partitions(g: DefiningGraph, base: str, symmetric_only: bool = False,
                         allow_degenerate: bool = False) -> List[WhiteheadPartition]:
    """Every valid partition based at `base`, each exactly once"""
    g.require_vertex(base)
    components = components_outside_star(g, base)
    link_set = g.literals_of(g.link(base))
    m, m_inv = Literal(base, 1), Literal(base, -1)

    found = []
    for mask in range(2 ** len(components)):
        side_p, side_q = {m}, {m_inv}
        for i, component in enumerate(components):
            (side_p if mask >> i & 1 else side_q).update(component)
        if len(side_p) == 1 and len(side_q) == 1:
            continue
        p = WhiteheadPartition(g, base, frozenset(side_p), frozenset(side_q), link_set)
        if p.degenerate and not allow_degenerate:
            continue
        if symmetric_only and not p.symmetric:
            continue
        found.append(p)
    return sorted(found, key=WhiteheadPartition.sort_key)


@lru_cache(maxsize=128)
def _all_partitions(g: DefiningGraph, bases: Tuple[str, ...], symmetric_only: bool,
                    allow_degenerate: bool) -> Tuple[WhiteheadPartition, ...]:
    unique: Dict[FrozenSet[Side], WhiteheadPartition] = {}
    for base in bases:
        for p in enumerate_partitions(g, base, symmetric_only, allow_degenerate):
            unique.setdefault(p.key, p)
    logger.debug(f"{len(unique)} partitions based in {' '.join(bases)}")
    return tuple(unique.values())


def all_partitions(g: DefiningGraph, bases: Optional[Iterable[str]] = None,
                   symmetric_only: bool = False,
                   allow_degenerate: bool = False) -> List[WhiteheadPartition]:
    """Partitions based at any of `bases` (default: all vertices), deduplicated"""
    chosen = tuple(sorted(set(bases if bases is not None else g.vertices),
                          key=g.index.__getitem__))
    return list(_all_partitions(g, chosen, symmetric_only, allow_degenerate))


# ============================================================================
# PREDICATES
# ============================================================================

def is_symmetric(p: WhiteheadPartition) -> bool:
    """Every vertex other than the base has both literals on one side (or in the link)"""
    return all(
        p.side_of(Literal(v, 1)) == p.side_of(Literal(v, -1))
        for v in p.graph.vertices if v != p.base
    )


def adjacent(p: WhiteheadPartition, q: WhiteheadPartition) -> bool:
    """Some base of p and some base of q are distinct and commute"""
    g = p.graph
    return any(m != n and g.commutes(m, n) for m in p.bases for n in q.bases)


def compatible(p: WhiteheadPartition, q: WhiteheadPartition) -> bool:
    if adjacent(p, q):
        return True
    return any(not (a & b) for a in (p.side_p, p.side_q) for b in (q.side_p, q.side_q))


# ============================================================================
# QUADRANTS
# ============================================================================

@dataclass(frozen=True)
class QuadrantReport:
    """The four side-side intersections of two partitions"""

    p_and_q: Side
    p_and_qbar: Side
    pbar_and_q: Side
    pbar_and_qbar: Side

    def opposite_pairs(self) -> Tuple[Tuple[Side, Side], Tuple[Side, Side]]:
        """Opposite quadrants switch the side of both partitions"""
        return (
            (self.p_and_q, self.pbar_and_qbar),
            (self.p_and_qbar, self.pbar_and_q),
        )

    def all_nonempty(self) -> bool:
        return all((self.p_and_q, self.p_and_qbar, self.pbar_and_q, self.pbar_and_qbar))


def interior(p: WhiteheadPartition, side: Side) -> Side:
    """Part of a side lying outside st(base)^±"""
    if side not in (p.side_p, p.side_q):
        raise DomainError(f"{format_literals(p.graph, side)} is not a side of {p}")
    return side - p.graph.literals_of(p.graph.star(p.base))


def quadrants(p: WhiteheadPartition, q: WhiteheadPartition) -> QuadrantReport:
    return QuadrantReport(
        p_and_q=p.side_p & q.side_p,
        p_and_qbar=p.side_p & q.side_q,
        pbar_and_q=p.side_q & q.side_p,
        pbar_and_qbar=p.side_q & q.side_q,
    )


def opposite_quadrant_partitions(
    p: WhiteheadPartition, q: WhiteheadPartition
) -> Tuple[WhiteheadPartition, WhiteheadPartition]:
    """
    Two (possibly degenerate) partitions having a pair of opposite quadrants
    of p and q as sides, each with a maximal split vertex from mx(p) ∪ mx(q).

    Incompatible partitions always admit such a pair; an empty search raises.
    """
    if compatible(p, q):
        raise DomainError("opposite_quadrant_partitions needs incompatible partitions")

    g = p.graph
    by_side: Dict[Side, List[WhiteheadPartition]] = {}
    for cand in all_partitions(g, allow_degenerate=True):
        by_side.setdefault(cand.side_p, []).append(cand)
        by_side.setdefault(cand.side_q, []).append(cand)

    allowed = p.mx | q.mx

    def pick(side: Side) -> Optional[WhiteheadPartition]:
        found = [c for c in by_side.get(side, []) if c.mx & allowed]
        return min(found, key=WhiteheadPartition.sort_key) if found else None

    for a, b in quadrants(p, q).opposite_pairs():
        if not a or not b:
            continue
        x, y = pick(a), pick(b)
        if x is not None and y is not None:
            return x, y
    raise RaagError(f"No opposite quadrants of {p} and {q} define partitions with maximal vertex in mx")


# ============================================================================
# WHITEHEAD PAIRS
# ============================================================================

@dataclass(frozen=True)
class WhiteheadPair:
    """Partition plus multiplier literal; the positive side holds the multiplier"""

    partition: WhiteheadPartition
    multiplier: Literal

    def __post_init__(self):
        if self.multiplier.vertex not in self.partition.splits:
            raise InvalidPartitionError(
                f"Multiplier {self.multiplier} is not split by {self.partition}"
            )

    @property
    def positive_side(self) -> Side:
        return self.partition.side_of(self.multiplier)

    @property
    def in_mx(self) -> bool:
        return self.multiplier.vertex in self.partition.mx

    def text(self) -> str:
        return f"{self.partition.text()} by {self.multiplier}"

    def __str__(self) -> str:
        return self.text()


def inverse_pair(pair: WhiteheadPair) -> WhiteheadPair:
    """Swap x and x⁻¹ between the sides; multiplier x⁻¹"""
    p, x = pair.partition, pair.multiplier
    pos = pair.positive_side
    neg = p.other_side(pos)
    new_pos = (pos - {x}) | {x.inverse()}
    new_neg = (neg - {x.inverse()}) | {x}
    return WhiteheadPair(make_partition(p.graph, p.base, new_pos, new_neg), x.inverse())


def whitehead_pairs(g: DefiningGraph, symmetric_only: bool = False,
                    bases: Optional[Iterable[str]] = None) -> List[WhiteheadPair]:
    """Non-degenerate pairs with multiplier in mx, ordered by (base, partition, multiplier)"""
    pairs: List[WhiteheadPair] = []
    seen = set()
    chosen = g.vertices if bases is None else [v for v in g.vertices if v in set(bases)]
    for base in chosen:
        for p in enumerate_partitions(g, base, symmetric_only=symmetric_only):
            for v in sorted(p.mx, key=g.index.__getitem__):
                for sign in (-1, 1):
                    identity = (p.key, v, sign)
                    if identity in seen:
                        continue
                    seen.add(identity)
                    pairs.append(WhiteheadPair(p, Literal(v, sign)))
    return pairs
