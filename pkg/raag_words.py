"""
RAAG Words - elements of A_Γ as words in signed generators

Covers:
- Free and partially commutative cancellation (trace reduction)
- Lex-least normal form (v⁻¹ ordered before v, vertices in declaration order)
- Cyclic reduction with the conjugating prefix
- Conjugacy length ℓ and canonical conjugacy-class representatives
- Enumeration of all classes up to a length bound
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple
import logging
import random

from defining_graph import DefiningGraph, Literal
from raag_errors import UnknownVertexError, WordParseError

logger = logging.getLogger(__name__)

Letters = Tuple[Literal, ...]


# ============================================================================
# WORD
# ============================================================================

@dataclass(frozen=True)
class Word:
    """Finite sequence of literals over the ambient graph"""

    letters: Letters
    graph: DefiningGraph = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, self.graph)

    def inverse(self) -> "Word":
        return Word(tuple(x.inverse() for x in reversed(self.letters)), self.graph)

    def sort_key(self) -> Tuple:
        return (len(self.letters), tuple(self.graph.literal_key(x) for x in self.letters))

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters) if self.letters else "1"


def word(g: DefiningGraph, letters: Iterable[Literal] = ()) -> Word:
    return Word(tuple(letters), g)


def parse_literal(g: DefiningGraph, token: str) -> Literal:
    vertex, sign = token, 1
    if token.endswith("^-1"):
        vertex, sign = token[:-3], -1
    if not vertex or "^" in vertex:
        raise WordParseError(f"Malformed literal {token!r}")
    try:
        g.require_vertex(vertex)
    except UnknownVertexError as e:
        raise WordParseError(str(e)) from e
    return Literal(vertex, sign)


def parse_word(g: DefiningGraph, text: str) -> Word:
    """Whitespace-separated literals; the empty word is written "1" """
    tokens = text.split()
    if tokens == ["1"]:
        return word(g)
    if not tokens:
        raise WordParseError("Empty word text (write '1' for the identity)")
    return word(g, (parse_literal(g, t) for t in tokens))


# ============================================================================
# TRACE REDUCTION AND NORMAL FORM
# ============================================================================

def _blocks(g: DefiningGraph, x: Literal, y: Literal) -> bool:
    """y cannot be shuffled past x"""
    return not g.commutes(x.vertex, y.vertex)


def _reduce(g: DefiningGraph, letters: Iterable[Literal]) -> List[Literal]:
    # x cancels against the nearest earlier blocking letter when that letter is x⁻¹
    out: List[Literal] = []
    for x in letters:
        for i in range(len(out) - 1, -1, -1):
            if _blocks(g, out[i], x):
                if out[i].vertex == x.vertex and out[i].sign == -x.sign:
                    del out[i]
                    break
                out.append(x)
                break
        else:
            out.append(x)
    return out


def _linearize(g: DefiningGraph, letters: Sequence[Literal]) -> Letters:
    """Greedy lex-least topological order of the trace"""
    n = len(letters)
    preds = [
        {j for j in range(i) if _blocks(g, letters[j], letters[i])} for i in range(n)
    ]
    emitted: Set[int] = set()
    result: List[Literal] = []
    while len(result) < n:
        best = min(
            (i for i in range(n) if i not in emitted and preds[i] <= emitted),
            key=lambda i: g.literal_key(letters[i]),
        )
        emitted.add(best)
        result.append(letters[best])
    return tuple(result)


def _normal_letters(g: DefiningGraph, letters: Iterable[Literal]) -> Letters:
    return _linearize(g, _reduce(g, letters))


def normal_form(w: Word) -> Word:
    return Word(_normal_letters(w.graph, w.letters), w.graph)


def multiply(*words: Word) -> Word:
    """Normal form of the product"""
    g = words[0].graph
    return Word(_normal_letters(g, (x for w in words for x in w.letters)), g)


def is_trivial(w: Word) -> bool:
    return not _reduce(w.graph, w.letters)


# ============================================================================
# CYCLIC REDUCTION
# ============================================================================

def _front_positions(g: DefiningGraph, letters: Sequence[Literal]) -> List[int]:
    return [
        i for i in range(len(letters))
        if not any(_blocks(g, letters[j], letters[i]) for j in range(i))
    ]


def _back_positions(g: DefiningGraph, letters: Sequence[Literal]) -> List[int]:
    n = len(letters)
    return [
        i for i in range(n)
        if not any(_blocks(g, letters[i], letters[j]) for j in range(i + 1, n))
    ]


def cyclic_reduce_with_prefix(w: Word) -> Tuple[Word, Word]:
    """Return (p, core) with w = p · core · p⁻¹ and core cyclically reduced"""
    g = w.graph
    letters = _reduce(g, w.letters)
    prefix: List[Literal] = []
    while True:
        backs = {letters[i]: i for i in _back_positions(g, letters)}
        peel = None
        for i in _front_positions(g, letters):
            j = backs.get(letters[i].inverse())
            if j is not None:
                peel = (i, j)
                break
        if peel is None:
            break
        i, j = peel
        prefix.append(letters[i])
        letters = [x for k, x in enumerate(letters) if k not in peel]
    return normal_form(word(g, prefix)), Word(_linearize(g, letters), g)


def cyclic_reduce(w: Word) -> Word:
    return cyclic_reduce_with_prefix(w)[1]


def conj_length(w: Word) -> int:
    return len(cyclic_reduce(w))


def is_cyclically_reduced(w: Word) -> bool:
    return len(_reduce(w.graph, w.letters)) == len(w) and conj_length(w) == len(w)


# ============================================================================
# CONJUGACY CLASSES
# ============================================================================

@dataclass(frozen=True)
class CyclicClass:
    """Conjugacy class of A_Γ keyed by its canonical cyclically reduced word"""

    rep: Word
    length: int

    def sort_key(self) -> Tuple:
        return self.rep.sort_key()

    def __str__(self) -> str:
        return str(self.rep)


def cyclic_shuffles(w: Word) -> Set[Letters]:
    """All cyclic linearizations reachable by moving a front letter to the back"""
    g = w.graph
    start = _normal_letters(g, cyclic_reduce(w).letters)
    seen = {start}
    frontier = [start]
    while frontier:
        letters = frontier.pop()
        for i in _front_positions(g, letters):
            moved = _linearize(g, letters[:i] + letters[i + 1:] + (letters[i],))
            if moved not in seen:
                seen.add(moved)
                frontier.append(moved)
    return seen


def conj_canon(w: Word) -> CyclicClass:
    g = w.graph
    best = min(cyclic_shuffles(w), key=lambda ls: tuple(g.literal_key(x) for x in ls))
    return CyclicClass(Word(best, g), len(best))


@lru_cache(maxsize=64)
def _classes_up_to(g: DefiningGraph, max_len: int) -> Tuple[CyclicClass, ...]:
    found = set()
    for length in range(1, max_len + 1):
        for letters in product(g.literals, repeat=length):
            if any(a == b.inverse() for a, b in zip(letters, letters[1:])):
                continue
            canon = conj_canon(word(g, letters))
            if canon.length == length:
                found.add(canon)
    classes = tuple(sorted(found, key=CyclicClass.sort_key))
    logger.debug(f"Enumerated {len(classes)} classes up to length {max_len}")
    return classes


def enumerate_classes(g: DefiningGraph, max_len: int) -> List[CyclicClass]:
    """Nontrivial conjugacy classes with ℓ ≤ max_len, sorted by (length, rep)"""
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    return list(_classes_up_to(g, max_len))


# ============================================================================
# ORACLE AND SAMPLING
# ============================================================================

def conjugacy_orbit(w: Word, max_length: int) -> Set[Letters]:
    """
    Breadth-first closure of w under conjugation by single generators,
    keeping only normal forms of length ≤ max_length.
    """
    g = w.graph
    start = _normal_letters(g, w.letters)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for letters in frontier:
            for x in g.literals:
                conj = _normal_letters(g, (x,) + letters + (x.inverse(),))
                if len(conj) <= max_length and conj not in seen:
                    seen.add(conj)
                    nxt.append(conj)
        frontier = nxt
    return seen


def random_word(g: DefiningGraph, length: int, rng: Optional[random.Random] = None) -> Word:
    rng = rng or random.Random()
    return word(g, (rng.choice(g.literals) for _ in range(length)))


def random_cyclic_word(g: DefiningGraph, max_length: int, rng: random.Random) -> Word:
    """Cyclically reduced word of length 1..max_length (empty if none drawn)"""
    for _ in range(50):
        w = cyclic_reduce(random_word(g, rng.randint(1, max_length), rng))
        if len(w):
            return w
    return word(g, (g.literals[1],))
