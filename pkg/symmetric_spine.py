"""
Symmetric Spine - compatible sets, ranks and local move graphs

Covers:
- Maximum compatible sets M(W) and M^Σ(W) via exact clique search
- Rank report: spine and symmetric spine dimensions, principal ranks, vcd of ΣOut
- Commuting criterion for Whitehead automorphisms with non-commuting bases
- Certified free abelian generating sets of symmetric Whitehead automorphisms
- K_min membership for the length-one class set
- Breadth-first Whitehead move graphs with DOT export
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple
import logging

from cache_service import get_cache
from compatibility_cliques import maximum_clique
from config import get_settings
from defining_graph import DefiningGraph, Literal, order_report
from raag_automorphisms import (
    OuterMarking,
    commutes_in_out,
    outer_equal_mod_omega,
    whitehead_auto,
)
from raag_errors import DomainError, NoCertifiedAssignment, SearchBudgetExceeded
from raag_words import enumerate_classes
from whitehead_norms import (
    MarkedSalvetti,
    ell,
    length_one_classes,
    whitehead_move,
)
from whitehead_partitions import (
    WhiteheadPair,
    WhiteheadPartition,
    adjacent,
    all_partitions,
    compatible,
    parse_partition,
    whitehead_pairs,
)

logger = logging.getLogger(__name__)


# ============================================================================
# COMPATIBLE SETS
# ============================================================================

@dataclass(frozen=True)
class CompatibleSet:
    """Pairwise compatible partitions based in base_filter"""

    partitions: Tuple[WhiteheadPartition, ...]
    base_filter: FrozenSet[str]
    symmetric_only: bool = False

    def __len__(self) -> int:
        return len(self.partitions)

    def check(self) -> "CompatibleSet":
        for i, p in enumerate(self.partitions):
            if not p.bases & self.base_filter:
                raise DomainError(f"{p} has no base in {sorted(self.base_filter)}")
            if self.symmetric_only and not p.symmetric:
                raise DomainError(f"{p} is not symmetric")
            for q in self.partitions[i + 1:]:
                if not compatible(p, q):
                    raise DomainError(f"{p} and {q} are not compatible")
        return self

    def texts(self) -> List[str]:
        return [p.text() for p in self.partitions]


def max_compatible_set(g: DefiningGraph, bases: Optional[Iterable[str]] = None,
                       symmetric_only: bool = False,
                       budget: Optional[int] = None) -> CompatibleSet:
    """Largest compatible set of (symmetric) partitions based in `bases`"""
    chosen = frozenset(bases if bases is not None else g.vertices)
    candidates = sorted(
        all_partitions(g, chosen, symmetric_only=symmetric_only),
        key=WhiteheadPartition.sort_key,
    )
    members = maximum_clique(candidates, compatible, budget)
    return CompatibleSet(tuple(members), chosen, symmetric_only).check()


# ============================================================================
# RANK REPORT
# ============================================================================

@dataclass
class RankReport:
    m_all: int
    m_principal: int
    m_sym_all: int
    m_sym_principal: int
    witnesses: Dict[str, CompatibleSet] = field(default_factory=dict)

    @property
    def dim_spine(self) -> int:
        return self.m_all

    @property
    def dim_symspine(self) -> int:
        return self.m_sym_all

    @property
    def vcd(self) -> int:
        return self.m_sym_all

    def text(self) -> str:
        lines = [
            f"M(V)={self.m_all}",
            f"M(L)={self.m_principal}",
            f"MΣ(V)={self.m_sym_all}",
            f"MΣ(L)={self.m_sym_principal}",
            f"vcd={self.vcd}",
        ]
        for name, witness in self.witnesses.items():
            body = " ; ".join(witness.texts()) if len(witness) else "-"
            lines.append(f"witness {name}: {body}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict:
        return {
            "m_all": self.m_all,
            "m_principal": self.m_principal,
            "m_sym_all": self.m_sym_all,
            "m_sym_principal": self.m_sym_principal,
            "vcd": self.vcd,
            "witnesses": {
                name: {
                    "partitions": w.texts(),
                    "bases": sorted(w.base_filter),
                    "symmetric_only": w.symmetric_only,
                }
                for name, w in self.witnesses.items()
            },
        }

    @classmethod
    def from_dict(cls, g: DefiningGraph, data: Dict) -> "RankReport":
        witnesses = {
            name: CompatibleSet(
                tuple(parse_partition(g, t) for t in w["partitions"]),
                frozenset(w["bases"]),
                w["symmetric_only"],
            ).check()
            for name, w in data["witnesses"].items()
        }
        return cls(
            data["m_all"], data["m_principal"], data["m_sym_all"],
            data["m_sym_principal"], witnesses,
        )


def _compute_rank_report(g: DefiningGraph, budget: Optional[int]) -> RankReport:
    principal = order_report(g).principal
    witnesses = {
        "M(V)": max_compatible_set(g, None, False, budget),
        "M(L)": max_compatible_set(g, principal, False, budget),
        "MΣ(V)": max_compatible_set(g, None, True, budget),
        "MΣ(L)": max_compatible_set(g, principal, True, budget),
    }
    sizes = [len(w) for w in witnesses.values()]
    report = RankReport(*sizes, witnesses=witnesses)
    if not (report.m_sym_principal <= report.m_sym_all <= report.m_all
            and report.m_principal <= report.m_all):
        raise DomainError(f"Rank report violates the rank ordering: {sizes}")
    return report


def rank_report(g: DefiningGraph, budget: Optional[int] = None) -> RankReport:
    """Exact M(V), M(L), M^Σ(V), M^Σ(L); cached in Redis when enabled"""
    cache = get_cache()
    if not cache.available:
        report = _compute_rank_report(g, budget)
    else:
        payload = {"graph": g.graph_text(), "budget": budget or get_settings().search_budget}
        data = cache.fetch("ranks", payload, lambda: _compute_rank_report(g, budget).to_dict())
        report = RankReport.from_dict(g, data)
    logger.info(
        f"✅ Ranks for {len(g.vertices)} vertices: "
        f"M(V)={report.m_all} MΣ(V)={report.m_sym_all} MΣ(L)={report.m_sym_principal}"
    )
    return report


def symmetric_ranks(g: DefiningGraph, budget: Optional[int] = None) -> Tuple[int, int]:
    """(M^Σ(V), M^Σ(L)) without the unrestricted searches"""
    principal = order_report(g).principal
    return (
        len(max_compatible_set(g, None, True, budget)),
        len(max_compatible_set(g, principal, True, budget)),
    )


def vcd_symout(g: DefiningGraph, budget: Optional[int] = None) -> int:
    return symmetric_ranks(g, budget)[0]


# ============================================================================
# COMMUTING WHITEHEAD AUTOMORPHISMS
# ============================================================================

def mv_commuting(p: WhiteheadPartition, q: WhiteheadPartition) -> bool:
    """
    Combinatorial commuting test for φ(P, m) and φ(Q, n) with [m, n] ≠ 1:
    compatible, P does not split n and Q does not split m.
    """
    m, n = p.base, q.base
    if m == n or p.graph.commutes(m, n):
        raise DomainError(f"Criterion needs non-commuting bases, got {m} and {n}")
    return compatible(p, q) and n not in p.splits and m not in q.splits


def _combinatorially_commuting(a: WhiteheadPair, b: WhiteheadPair) -> bool:
    p, q = a.partition, b.partition
    if p.base == q.base or adjacent(p, q):
        return True
    return mv_commuting(p, q)


def _class_representatives(g: DefiningGraph, principal: FrozenSet[str]) -> FrozenSet[str]:
    """Principal vertices, with each nonabelian class cut down to its first vertex"""
    report = order_report(g)
    dropped = set()
    for cls in report.nonabelian_classes():
        dropped.update(cls[1:])
    return frozenset(v for v in principal if v not in dropped)


def _assign_multipliers(partitions: List[WhiteheadPartition]) -> Optional[List[WhiteheadPair]]:
    chosen: List[WhiteheadPair] = []
    autos = []

    def extend(i: int) -> bool:
        if i == len(partitions):
            return True
        p = partitions[i]
        for sign in (1, -1):
            pair = WhiteheadPair(p, Literal(p.base, sign))
            phi = whitehead_auto(pair)
            if all(
                _combinatorially_commuting(pair, other) and commutes_in_out(phi, psi)
                for other, psi in zip(chosen, autos)
            ):
                chosen.append(pair)
                autos.append(phi)
                if extend(i + 1):
                    return True
                chosen.pop()
                autos.pop()
        return False

    return list(chosen) if extend(0) else None


def abelian_generators(g: DefiningGraph, budget: Optional[int] = None) -> List[WhiteheadPair]:
    """
    Maximum compatible set of symmetric principal partitions with one
    multiplier each, every pair certified to commute in Out(A_Γ).
    """
    principal = order_report(g).principal
    target = len(max_compatible_set(g, principal, True, budget))

    attempts = [_class_representatives(g, principal), principal]
    for bases in attempts:
        witness = max_compatible_set(g, bases, True, budget)
        if len(witness) < target:
            logger.debug(f"Rebased search on {sorted(bases)} only reaches {len(witness)}")
            continue
        pairs = _assign_multipliers(list(witness.partitions))
        if pairs is not None:
            logger.info(f"✅ Certified {len(pairs)} commuting symmetric generators")
            return pairs

    raise NoCertifiedAssignment(
        f"No pairwise commuting multiplier assignment of size {target}"
    )


# ============================================================================
# K_MIN
# ============================================================================

def in_kmin_length_one(sigma: MarkedSalvetti) -> bool:
    """‖σ‖_W at its floor 2|V| for W = all length-one classes"""
    g = sigma.graph
    return sum(ell(sigma, c) for c in length_one_classes(g)) == 2 * len(g.vertices)


# ============================================================================
# MOVE GRAPH
# ============================================================================

@dataclass
class MoveNode:
    index: int
    sigma: MarkedSalvetti
    depth: int
    label: str


@dataclass(frozen=True)
class MoveEdge:
    source: int
    target: int
    pair: WhiteheadPair


@dataclass
class MoveGraph:
    nodes: List[MoveNode] = field(default_factory=list)
    edges: List[MoveEdge] = field(default_factory=list)
    root: int = 0

    def summary(self) -> str:
        return f"nodes={len(self.nodes)} edges={len(self.edges)}"

    def to_dot(self) -> str:
        lines = ["digraph moves {"]
        for node in self.nodes:
            lines.append(f'  n{node.index} [label="{node.label}"];')
        for edge in self.edges:
            lines.append(f'  n{edge.source} -> n{edge.target} [label="{edge.pair.text()}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _fingerprint(sigma: MarkedSalvetti, classes) -> Tuple[int, ...]:
    # multiset of ℓ over short classes; unchanged by inner automorphisms and Ω
    return tuple(sorted(ell(sigma, c) for c in classes))


def local_explore(sigma0: MarkedSalvetti, depth: int, symmetric_only: bool = False,
                  max_nodes: Optional[int] = None) -> MoveGraph:
    """Breadth-first Whitehead move closure of sigma0, nodes taken mod inner and Ω"""
    settings = get_settings()
    if depth < 0 or depth > settings.explore_depth_limit:
        raise DomainError(
            f"Depth {depth} outside 0..{settings.explore_depth_limit} (RAAG_EXPLORE_DEPTH_LIMIT)"
        )
    limit = max_nodes or settings.explore_max_nodes
    g = sigma0.graph
    pairs = whitehead_pairs(g, symmetric_only=symmetric_only)
    probe = enumerate_classes(g, 2)

    graph = MoveGraph()
    buckets: Dict[Tuple[int, ...], List[int]] = {}
    seen_edges = set()

    def add_node(sigma: MarkedSalvetti, level: int) -> Tuple[int, bool]:
        key = _fingerprint(sigma, probe)
        for index in buckets.get(key, []):
            if outer_equal_mod_omega(graph.nodes[index].sigma.marking, sigma.marking):
                return index, False
        index = len(graph.nodes)
        if index >= limit:
            raise SearchBudgetExceeded(f"Move graph exceeded {limit} nodes")
        label = OuterMarking(sigma.marking).label()
        graph.nodes.append(MoveNode(index, sigma, level, label))
        buckets.setdefault(key, []).append(index)
        return index, True

    add_node(sigma0, 0)
    frontier = [0]
    for level in range(1, depth + 1):
        nxt = []
        for source in frontier:
            for pair in pairs:
                target, fresh = add_node(whitehead_move(graph.nodes[source].sigma, pair), level)
                if target == source or (source, target, pair) in seen_edges:
                    continue
                seen_edges.add((source, target, pair))
                graph.edges.append(MoveEdge(source, target, pair))
                if fresh:
                    nxt.append(target)
        frontier = nxt
        logger.debug(f"Explore level {level}: {graph.summary()}")

    logger.info(f"✅ Explored to depth {depth}: {graph.summary()}")
    return graph
