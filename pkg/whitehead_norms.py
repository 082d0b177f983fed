"""
Whitehead Norms - conjugacy lengths under a marking and norm descent

Covers:
- |P|_w (crossing count) and |v|_w (occurrence count)
- ℓ_σ(g) for a marked Salvetti σ = (S_Γ, α)
- Norm prefixes (‖σ‖_W, ‖σ‖_0, bounded tail), compared lexicographically
- Exact length change of a Whitehead move, reductive pair search, greedy minimization
- Class-set files
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

from config import get_settings
from defining_graph import DefiningGraph, Literal
from raag_automorphisms import (
    RaagAutomorphism,
    apply,
    compose,
    identity,
    invert,
    whitehead_auto,
)
from raag_errors import DomainError, RaagError, TieAtBound, WordParseError
from raag_words import (
    CyclicClass,
    Word,
    conj_canon,
    cyclic_reduce,
    enumerate_classes,
    is_cyclically_reduced,
    parse_word,
)
from whitehead_partitions import WhiteheadPair, WhiteheadPartition, whitehead_pairs

logger = logging.getLogger(__name__)


# ============================================================================
# COUNTS
# ============================================================================

def _crossings(p: WhiteheadPartition, letters: Sequence[Literal]) -> int:
    # link letters commute with the multiplier, so pairing skips over them
    kept = [x for x in letters if x not in p.link_set]
    n = len(kept)
    total = 0
    for i in range(n):
        a, b = kept[i], kept[(i + 1) % n].inverse()
        if (a in p.side_p) != (b in p.side_p):
            total += 1
    return total


def count_partition(p: WhiteheadPartition, w: Word) -> int:
    """
    |P|_w: cyclic positions where u_i and u_{i+1}⁻¹ lie on different sides.

    Letters of lk(P) are dropped first, so u_{i+1} is the next letter
    outside the link.
    """
    if not is_cyclically_reduced(w):
        raise DomainError(f"count_partition needs a cyclically reduced word, got {w}")
    return _crossings(p, w.letters)


def count_vertex(v: str, w: Word) -> int:
    """|v|_w: occurrences of v or v⁻¹"""
    return sum(1 for x in w.letters if x.vertex == v)


# ============================================================================
# MARKED SALVETTI
# ============================================================================

@dataclass(frozen=True)
class MarkedSalvetti:
    """Marking α together with its cached inverse"""

    marking: RaagAutomorphism
    inverse: RaagAutomorphism = field(repr=False)

    @property
    def graph(self) -> DefiningGraph:
        return self.marking.graph


def marked_salvetti(alpha: RaagAutomorphism) -> MarkedSalvetti:
    inverse = invert(alpha)
    if not compose(inverse, alpha).is_identity():
        raise DomainError("Cached inverse does not invert the marking")
    return MarkedSalvetti(alpha, inverse)


def identity_salvetti(g: DefiningGraph) -> MarkedSalvetti:
    one = identity(g)
    return MarkedSalvetti(one, one)


def pulled_back(sigma: MarkedSalvetti, g: CyclicClass) -> Word:
    """Cyclically reduced representative of α⁻¹(g)"""
    return cyclic_reduce(apply(sigma.inverse, g.rep))


def ell(sigma: MarkedSalvetti, g: CyclicClass) -> int:
    return len(pulled_back(sigma, g))


def whitehead_move(sigma: MarkedSalvetti, pair: WhiteheadPair) -> MarkedSalvetti:
    """σ ↦ (S_Γ, α∘φ) with cached inverse φ⁻¹∘α⁻¹"""
    phi = whitehead_auto(pair)
    return MarkedSalvetti(compose(sigma.marking, phi), compose(invert(phi), sigma.inverse))


# ============================================================================
# NORM PREFIX
# ============================================================================

@dataclass(frozen=True, order=True)
class NormPrefix:
    """(‖σ‖_W, ‖σ‖_0, ℓ over classes up to the tail bound); ordered lexicographically"""

    w_entry: int
    zero_entry: int
    tail: Tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"W={self.w_entry} G0={self.zero_entry} tail=[{' '.join(map(str, self.tail))}]"


class _PulledBackClasses:
    """α⁻¹-representatives of the W, G_0 and tail classes of one marking"""

    def __init__(self, sigma: MarkedSalvetti, w_set: Sequence[CyclicClass], tail_bound: int):
        g = sigma.graph
        cache: Dict[CyclicClass, Tuple[Literal, ...]] = {}

        def reps(classes: Iterable[CyclicClass]) -> List[Tuple[Literal, ...]]:
            out = []
            for c in classes:
                if c not in cache:
                    cache[c] = pulled_back(sigma, c).letters
                out.append(cache[c])
            return out

        self.w_reps = reps(w_set)
        self.zero_reps = reps(enumerate_classes(g, 2))
        self.tail_reps = reps(enumerate_classes(g, tail_bound))

    def prefix(self) -> NormPrefix:
        return NormPrefix(
            sum(len(w) for w in self.w_reps),
            sum(len(w) for w in self.zero_reps),
            tuple(len(w) for w in self.tail_reps),
        )


def norm_prefix(sigma: MarkedSalvetti, w_set: Iterable[CyclicClass],
                tail_bound: Optional[int] = None) -> NormPrefix:
    bound = get_settings().tail_bound if tail_bound is None else tail_bound
    return _PulledBackClasses(sigma, list(w_set), bound).prefix()


def predicted_length(sigma: MarkedSalvetti, pair: WhiteheadPair, g: CyclicClass) -> int:
    """ℓ_σ(g) + |P|_w − |m|_w with w the representative of α⁻¹(g)"""
    w = pulled_back(sigma, g)
    return len(w) + _crossings(pair.partition, w.letters) - count_vertex(pair.multiplier.vertex, w)


# ============================================================================
# DESCENT
# ============================================================================

@lru_cache(maxsize=64)
def _candidate_pairs(g: DefiningGraph) -> Tuple[WhiteheadPair, ...]:
    return tuple(whitehead_pairs(g))


def _delta(pair: WhiteheadPair, letters: Tuple[Literal, ...]) -> int:
    if not letters:
        return 0
    m = pair.multiplier.vertex
    return _crossings(pair.partition, letters) - sum(1 for x in letters if x.vertex == m)


def _sign_of_delta(pair: WhiteheadPair, reps: _PulledBackClasses) -> int:
    """Sign of the lexicographic delta vector (ΔW, ΔG0, Δtail...)"""
    for group in (reps.w_reps, reps.zero_reps):
        total = sum(_delta(pair, w) for w in group)
        if total:
            return -1 if total < 0 else 1
    for w in reps.tail_reps:
        d = _delta(pair, w)
        if d:
            return -1 if d < 0 else 1
    return 0


def find_reductive(sigma: MarkedSalvetti, w_set: Iterable[CyclicClass],
                   tail_bound: Optional[int] = None) -> Optional[WhiteheadPair]:
    """First pair (base, partition, multiplier order) whose move lowers the norm prefix"""
    bound = get_settings().tail_bound if tail_bound is None else tail_bound
    reps = _PulledBackClasses(sigma, list(w_set), bound)
    tied: Optional[WhiteheadPair] = None
    for pair in _candidate_pairs(sigma.graph):
        sign = _sign_of_delta(pair, reps)
        if sign < 0:
            return pair
        if sign == 0 and tied is None:
            tied = pair
    if tied is not None:
        raise TieAtBound(f"Pair {tied} ties the norm through the whole prefix (tail bound {bound})")
    return None


@dataclass
class DescentStep:
    pair: WhiteheadPair
    delta_w: int
    prefix: NormPrefix

    def to_dict(self) -> Dict:
        return {"pair": self.pair.text(), "delta_w": self.delta_w, "prefix": str(self.prefix)}


@dataclass
class DescentResult:
    final: MarkedSalvetti
    initial_prefix: NormPrefix
    steps: List[DescentStep] = field(default_factory=list)

    @property
    def moves(self) -> List[WhiteheadPair]:
        return [s.pair for s in self.steps]

    @property
    def final_prefix(self) -> NormPrefix:
        return self.steps[-1].prefix if self.steps else self.initial_prefix


def minimize(sigma: MarkedSalvetti, w_set: Iterable[CyclicClass],
             tail_bound: Optional[int] = None) -> DescentResult:
    """Apply reductive moves until none remains"""
    bound = get_settings().tail_bound if tail_bound is None else tail_bound
    classes = list(w_set)
    current = norm_prefix(sigma, classes, bound)
    result = DescentResult(final=sigma, initial_prefix=current)

    while True:
        pair = find_reductive(sigma, classes, bound)
        if pair is None:
            break
        sigma = whitehead_move(sigma, pair)
        nxt = norm_prefix(sigma, classes, bound)
        if not nxt < current:
            raise RaagError(f"Move {pair} did not lower the norm ({current} -> {nxt})")
        result.steps.append(DescentStep(pair, nxt.w_entry - current.w_entry, nxt))
        logger.debug(f"Descent step {len(result.steps)}: {pair} -> {nxt}")
        current = nxt

    result.final = sigma
    logger.info(f"✅ Descent finished after {len(result.steps)} steps at {current}")
    return result


# ============================================================================
# CLASS SETS
# ============================================================================

def length_one_classes(g: DefiningGraph) -> List[CyclicClass]:
    return enumerate_classes(g, 1)


def load_class_set(g: DefiningGraph, text: str) -> List[CyclicClass]:
    """One word per line; canonicalized, duplicates and the trivial class dropped"""
    found = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            canon = conj_canon(parse_word(g, line))
        except WordParseError as e:
            raise WordParseError(str(e), number) from e
        if canon.length:
            found.add(canon)
    return sorted(found, key=CyclicClass.sort_key)
