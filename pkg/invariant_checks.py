"""
Invariant Checks - the `selftest` suites

Each suite runs at reduced sizes and reports one PASS/FAIL line:
- worked-examples:   principal/maximal vertices and the three worked partitions
- word-oracle:       canonical conjugacy classes against breadth-first conjugation
- length-change:     predicted lengths after a Whitehead move against direct application
- commuting:         the combinatorial commuting criterion against outer commutation
- symmetric-ranks:   M^Σ(L) = M^Σ(V) and a certified abelian witness of that rank
- kmin-floor:        symmetric markings stay at the length-one floor
- fold-descent:      markings with folds descend with strictly decreasing norm prefixes
"""

import logging
import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Set, Tuple

from defining_graph import DefiningGraph, Literal, atlas_corpus, dominated, from_edges, order_report
from raag_automorphisms import commutes_in_out, compose, fold, random_symmetric_auto, whitehead_auto
from raag_errors import RaagError
from raag_words import CyclicClass, conj_canon, conjugacy_orbit, normal_form, random_cyclic_word, word
from symmetric_spine import abelian_generators, in_kmin_length_one, mv_commuting, symmetric_ranks
from whitehead_norms import (
    MarkedSalvetti,
    ell,
    length_one_classes,
    marked_salvetti,
    minimize,
    predicted_length,
    whitehead_move,
)
from whitehead_partitions import (
    WhiteheadPair,
    adjacent,
    all_partitions,
    compatible,
    parse_partition,
    whitehead_pairs,
)

logger = logging.getLogger(__name__)


# ============================================================================
# FIXTURE GRAPHS
# ============================================================================

LEAFY_TRIANGLE_EDGES = [("p", "q"), ("q", "r"), ("r", "s"), ("q", "v"), ("r", "v")]
PATH_POINT_EDGES = [("a", "b"), ("b", "c"), ("c", "d")]

PATH_POINT_P1 = "( a c^-1 c d^-1 d | a^-1 e^-1 e | b^-1 b )"
PATH_POINT_P2 = "( b e | b^-1 d^-1 d e^-1 | a^-1 a c^-1 c )"
PATH_POINT_P3 = "( a^-1 a b^-1 b d e^-1 | d^-1 e | c^-1 c )"


def leafy_triangle_graph() -> DefiningGraph:
    return from_edges("pqrsv", LEAFY_TRIANGLE_EDGES)


def path_point_graph() -> DefiningGraph:
    return from_edges("abcde", PATH_POINT_EDGES)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


# ============================================================================
# SUITES
# ============================================================================

def check_worked_examples() -> Tuple[bool, str]:
    report = order_report(leafy_triangle_graph())
    if report.principal != {"q", "r", "v"} or report.maximal != {"q", "r"}:
        return False, f"principal={sorted(report.principal)} maximal={sorted(report.maximal)}"

    g = path_point_graph()
    p1, p2, p3 = (parse_partition(g, t) for t in (PATH_POINT_P1, PATH_POINT_P2, PATH_POINT_P3))
    flags = (p1.symmetric, p2.symmetric, p3.symmetric)
    if flags != (True, False, False):
        return False, f"symmetric flags {flags}"
    if not (compatible(p1, p2) and adjacent(p1, p2)):
        return False, "P1 and P2 should be adjacent and compatible"
    if compatible(p3, p1) or compatible(p3, p2):
        return False, "P3 should be compatible with neither"
    return True, "worked graphs match"


def check_word_oracle(max_vertices: int = 3, max_length: int = 3) -> Tuple[bool, str]:
    """Equal canon iff the normal forms lie in one breadth-first conjugation orbit"""
    compared = 0
    for g in atlas_corpus(max_vertices, connected_only=False):
        words = {
            normal_form(word(g, letters)).letters
            for n in range(1, max_length + 1)
            for letters in product(g.literals, repeat=n)
        }
        groups: Dict[CyclicClass, Set[Tuple[Literal, ...]]] = {}
        for w in words:
            groups.setdefault(conj_canon(word(g, w)), set()).add(w)
        for canon, members in groups.items():
            for w in members:
                orbit = conjugacy_orbit(word(g, w), len(w) + 2)
                reached = {o for o in orbit if len(o) <= len(w)}
                expected = {o for o in members if len(o) <= len(w)}
                compared += 1
                if reached != expected:
                    return False, f"class [{canon}] disagrees at {word(g, w)}"
    return True, f"{compared} words agree"


def check_length_change(trials: int, rng: random.Random,
                        max_vertices: int = 5, max_length: int = 6) -> Tuple[bool, str]:
    corpus = [g for g in atlas_corpus(max_vertices, connected_only=False) if whitehead_pairs(g)]
    for _ in range(trials):
        g = rng.choice(corpus)
        pair = rng.choice(whitehead_pairs(g))
        sigma = marked_salvetti(random_symmetric_auto(g, 2, rng))
        c = conj_canon(random_cyclic_word(g, max_length, rng))
        predicted = predicted_length(sigma, pair, c)
        actual = ell(whitehead_move(sigma, pair), c)
        if predicted != actual:
            return False, f"{pair} on [{c}]: predicted {predicted}, got {actual}"
    return True, f"{trials} trials exact"


def commuting_disagreements(g: DefiningGraph) -> List[Tuple[str, str]]:
    """Partition pairs with non-commuting bases where the two commuting tests differ"""
    bad = []
    partitions = all_partitions(g)
    for p, q in product(partitions, repeat=2):
        if p.base == q.base or g.commutes(p.base, q.base) or p.sort_key() >= q.sort_key():
            continue
        phi = whitehead_auto(WhiteheadPair(p, Literal(p.base, 1)))
        psi = whitehead_auto(WhiteheadPair(q, Literal(q.base, 1)))
        if mv_commuting(p, q) != commutes_in_out(phi, psi):
            bad.append((p.text(), q.text()))
    return bad


def check_commuting(max_vertices: int = 4) -> Tuple[bool, str]:
    graphs = atlas_corpus(max_vertices, connected_only=False)
    for g in graphs:
        bad = commuting_disagreements(g)
        if bad:
            return False, f"{bad[0][0]} vs {bad[0][1]}"
    return True, f"{len(graphs)} graphs agree"


def check_symmetric_ranks(max_vertices: int = 5) -> Tuple[bool, str]:
    graphs = atlas_corpus(max_vertices, connected_only=True)
    for g in graphs:
        m_sym_all, m_sym_principal = symmetric_ranks(g)
        if m_sym_all != m_sym_principal:
            return False, f"MΣ(V)={m_sym_all} MΣ(L)={m_sym_principal} on {g.sorted_edges()}"
        if len(abelian_generators(g)) != m_sym_all:
            return False, f"abelian witness below rank {m_sym_all} on {g.sorted_edges()}"
    return True, f"{len(graphs)} connected graphs"


def check_kmin_floor(trials: int, rng: random.Random, max_vertices: int = 4) -> Tuple[bool, str]:
    corpus = atlas_corpus(max_vertices, connected_only=False)
    for _ in range(trials):
        g = rng.choice(corpus)
        sigma = marked_salvetti(random_symmetric_auto(g, 8, rng))
        if not in_kmin_length_one(sigma):
            return False, f"symmetric marking above the floor: {sigma.marking.short_text()}"
    return True, f"{trials} symmetric markings at the floor"


def fold_targets(g: DefiningGraph) -> List[Tuple[str, str]]:
    """(v, m) with v ≠ m, [v, m] ≠ 1 and lk(v) ⊆ st(m)"""
    return [
        (v, m) for v, m in product(g.vertices, repeat=2)
        if v != m and not g.commutes(v, m) and dominated(g, v, m)
    ]


def random_fold_marking(g: DefiningGraph, rng: random.Random) -> MarkedSalvetti:
    """Random symmetric product with one or two folds spliced in"""
    targets = fold_targets(g)
    alpha = random_symmetric_auto(g, 3, rng)
    for _ in range(rng.randint(1, 2)):
        v, m = rng.choice(targets)
        alpha = compose(fold(g, v, Literal(m, rng.choice((-1, 1))), left=rng.random() < 0.5), alpha)
        alpha = compose(random_symmetric_auto(g, 2, rng), alpha)
    return marked_salvetti(alpha)


def check_fold_descent(trials: int, rng: random.Random, max_vertices: int = 4) -> Tuple[bool, str]:
    """minimize on fold markings: strictly decreasing prefixes, W-entry never rising"""
    corpus = [g for g in atlas_corpus(max_vertices, connected_only=False) if fold_targets(g)]
    steps = 0
    for _ in range(trials):
        g = rng.choice(corpus)
        sigma = random_fold_marking(g, rng)
        classes = length_one_classes(g)
        result = minimize(sigma, classes)
        prefixes = [result.initial_prefix] + [s.prefix for s in result.steps]
        if any(not b < a for a, b in zip(prefixes, prefixes[1:])):
            return False, f"prefix rose while minimizing {sigma.marking.short_text()}"
        if any(s.delta_w > 0 for s in result.steps):
            return False, f"W-entry rose while minimizing {sigma.marking.short_text()}"
        steps += len(result.steps)
    return True, f"{trials} fold markings minimized in {steps} steps"


# ============================================================================
# RUNNER
# ============================================================================

def run_selftest(seed: int = 0) -> List[SuiteResult]:
    rng = random.Random(seed)
    suites: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
        ("worked-examples", check_worked_examples),
        ("word-oracle", check_word_oracle),
        ("length-change", lambda: check_length_change(200, rng)),
        ("commuting", check_commuting),
        ("symmetric-ranks", check_symmetric_ranks),
        ("kmin-floor", lambda: check_kmin_floor(50, rng)),
        ("fold-descent", lambda: check_fold_descent(20, rng)),
    ]
    results = []
    for name, suite in suites:
        try:
            passed, detail = suite()
        except RaagError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(SuiteResult(name, passed, detail))
        logger.info(f"{'✅' if passed else '❌'} {name}: {detail}")
    return results
