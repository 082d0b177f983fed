"""
Defining Graph - the simplicial graph Γ presenting a right-angled Artin group A_Γ

Covers:
- Graph file parsing with line-numbered errors
- Links, stars and the commutation relation
- Signed generators (literals) and adjacency in the double Γ^±
- Domination order, equivalence classes, principal and maximal vertices
- Connected components of Γ^± outside a star
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple
import logging
import string

import networkx as nx

from raag_errors import DomainError, GraphParseError, UnknownVertexError

logger = logging.getLogger(__name__)

_FORBIDDEN_NAME_CHARS = set("^-") | set(string.whitespace)


# ============================================================================
# LITERALS
# ============================================================================

@dataclass(frozen=True, slots=True)
class Literal:
    """A signed generator v or v⁻¹"""

    vertex: str
    sign: int = 1

    def inverse(self) -> "Literal":
        return Literal(self.vertex, -self.sign)

    def __str__(self) -> str:
        return self.vertex if self.sign > 0 else f"{self.vertex}^-1"


# ============================================================================
# GRAPH
# ============================================================================

@dataclass(frozen=True)
class DefiningGraph:
    """
    Finite simplicial graph Γ.

    Vertex declaration order is the canonical total order on V; every
    enumeration and tie-break downstream uses it.
    """

    vertices: Tuple[str, ...]
    edges: FrozenSet[FrozenSet[str]] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.vertices:
            raise DomainError("Graph must have at least one vertex")
        seen: Set[str] = set()
        for name in self.vertices:
            if not name or _FORBIDDEN_NAME_CHARS & set(name):
                raise DomainError(f"Invalid vertex name {name!r}")
            if name in seen:
                raise DomainError(f"Duplicate vertex {name!r}")
            seen.add(name)
        for edge in self.edges:
            if len(edge) != 2:
                raise DomainError(f"Loop edge on {sorted(edge)[0]!r}")
            for end in edge:
                if end not in seen:
                    raise UnknownVertexError(f"Edge endpoint {end!r} not declared")

    # ------------------------------------------------------------------
    # Derived lookups
    # ------------------------------------------------------------------

    @cached_property
    def index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> Dict[str, FrozenSet[str]]:
        neighbours: Dict[str, Set[str]] = {v: set() for v in self.vertices}
        for edge in self.edges:
            u, v = tuple(edge)
            neighbours[u].add(v)
            neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    @cached_property
    def literals(self) -> Tuple[Literal, ...]:
        """V^± in canonical order (v⁻¹ before v)"""
        return tuple(Literal(v, s) for v in self.vertices for s in (-1, 1))

    def require_vertex(self, v: str) -> str:
        if v not in self.index:
            raise UnknownVertexError(f"Unknown vertex {v!r}")
        return v

    def link(self, v: str) -> FrozenSet[str]:
        return self.adjacency[self.require_vertex(v)]

    def star(self, v: str) -> FrozenSet[str]:
        return self.link(v) | {v}

    def commutes(self, u: str, v: str) -> bool:
        """Distinct vertices joined by an edge"""
        return v in self.adjacency[u]

    def literal_key(self, x: Literal) -> Tuple[int, int]:
        return (self.index[x.vertex], x.sign)

    def literals_adjacent(self, x: Literal, y: Literal) -> bool:
        """Adjacency in the double Γ^±; never relates x to x⁻¹"""
        return self.commutes(x.vertex, y.vertex)

    def literals_of(self, vertices: Iterable[str]) -> FrozenSet[Literal]:
        return frozenset(Literal(v, s) for v in vertices for s in (-1, 1))

    # ------------------------------------------------------------------
    # Conversions
    # ------------------------------------------------------------------

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(e) for e in self.edges)
        return graph

    def sorted_edges(self) -> List[Tuple[str, str]]:
        pairs = [tuple(sorted(e, key=self.index.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (self.index[p[0]], self.index[p[1]]))

    def graph_text(self) -> str:
        """Canonical graph file text"""
        lines = ["vertices: " + " ".join(self.vertices)]
        lines += [f"edge: {u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"


# ============================================================================
# PARSING AND BUILDERS
# ============================================================================

def load_graph(text: str) -> DefiningGraph:
    """Parse graph file contents (see README for the format)"""
    vertices: Optional[List[str]] = None
    vertices_line = 0
    edge_lines: List[Tuple[int, str, str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, sep, rest = line.partition(":")
        if not sep:
            raise GraphParseError(f"Malformed line {line!r}", number)
        keyword = keyword.strip()
        tokens = rest.split()

        if keyword == "vertices":
            if vertices is not None:
                raise GraphParseError("Second 'vertices:' line", number)
            if not tokens:
                raise GraphParseError("Empty vertex list", number)
            seen: Set[str] = set()
            for name in tokens:
                if _FORBIDDEN_NAME_CHARS & set(name):
                    raise GraphParseError(f"Invalid vertex name {name!r}", number)
                if name in seen:
                    raise GraphParseError(f"Duplicate vertex {name!r}", number)
                seen.add(name)
            vertices, vertices_line = tokens, number
        elif keyword == "edge":
            if len(tokens) != 2:
                raise GraphParseError(f"Edge needs two endpoints, got {len(tokens)}", number)
            edge_lines.append((number, tokens[0], tokens[1]))
        else:
            raise GraphParseError(f"Unknown keyword {keyword!r}", number)

    if vertices is None:
        raise GraphParseError("Missing 'vertices:' line")

    declared = set(vertices)
    edges: Set[FrozenSet[str]] = set()
    for number, u, v in edge_lines:
        for end in (u, v):
            if end not in declared:
                raise GraphParseError(f"Edge endpoint {end!r} not declared", number)
        if u == v:
            raise GraphParseError(f"Loop edge on {u!r}", number)
        edges.add(frozenset((u, v)))

    graph = DefiningGraph(tuple(vertices), frozenset(edges))
    logger.debug(
        f"Graph loaded from line {vertices_line}: "
        f"{len(graph.vertices)} vertices, {len(graph.edges)} edges"
    )
    return graph


def _names(n: int) -> List[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"v{i}" for i in range(1, n + 1)]


def from_edges(vertices: Iterable[str], edges: Iterable[Tuple[str, str]] = ()) -> DefiningGraph:
    return DefiningGraph(tuple(vertices), frozenset(frozenset(e) for e in edges))


def complete_graph(n: int) -> DefiningGraph:
    names = _names(n)
    return from_edges(names, combinations(names, 2))


def edgeless_graph(n: int) -> DefiningGraph:
    return from_edges(_names(n))


def from_networkx(graph: nx.Graph) -> DefiningGraph:
    """Relabel nodes in sorted order as a, b, c, ..."""
    nodes = sorted(graph.nodes())
    names = dict(zip(nodes, _names(len(nodes))))
    return from_edges(
        [names[v] for v in nodes], [(names[u], names[v]) for u, v in graph.edges()]
    )


def atlas_corpus(max_vertices: int, connected_only: bool = True) -> List[DefiningGraph]:
    """All graphs up to isomorphism with 1..max_vertices vertices (max 7)"""
    corpus = []
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n == 0 or n > max_vertices:
            continue
        if connected_only and not nx.is_connected(graph):
            continue
        corpus.append(from_networkx(graph))
    return corpus


# ============================================================================
# ORDER THEORY
# ============================================================================

def link(g: DefiningGraph, v: str) -> FrozenSet[str]:
    return g.link(v)


def star(g: DefiningGraph, v: str) -> FrozenSet[str]:
    return g.star(v)


def dominated(g: DefiningGraph, v: str, w: str) -> bool:
    """v ≤ w  iff  lk(v) ⊆ st(w)"""
    return g.link(v) <= g.star(w)


def strictly_link_dominated(g: DefiningGraph, v: str, w: str) -> bool:
    """v <∘ w  iff  lk(v) ⊊ lk(w)"""
    return g.link(v) < g.link(w)


@dataclass(frozen=True)
class OrderReport:
    """Domination data of a defining graph"""

    leq: FrozenSet[Tuple[str, str]]
    strict_link_leq: FrozenSet[Tuple[str, str]]
    classes: Tuple[Tuple[str, ...], ...]
    link_classes: Tuple[Tuple[str, ...], ...]
    star_classes: Tuple[Tuple[str, ...], ...]
    principal: FrozenSet[str]
    maximal: FrozenSet[str]
    abelian: Tuple[bool, ...]  # per entry of `classes`

    def class_of(self, v: str) -> Tuple[str, ...]:
        return next(c for c in self.classes if v in c)

    def nonabelian_classes(self) -> List[Tuple[str, ...]]:
        return [c for c, ab in zip(self.classes, self.abelian) if not ab and len(c) > 1]

    def to_dict(self) -> Dict:
        return {
            "classes": [list(c) for c in self.classes],
            "link_classes": [list(c) for c in self.link_classes],
            "star_classes": [list(c) for c in self.star_classes],
            "principal": sorted(self.principal),
            "maximal": sorted(self.maximal),
        }


def _group_by(g: DefiningGraph, key) -> Tuple[Tuple[str, ...], ...]:
    groups: Dict[object, List[str]] = {}
    for v in g.vertices:
        groups.setdefault(key(v), []).append(v)
    return tuple(tuple(members) for members in groups.values())


def order_report(g: DefiningGraph) -> OrderReport:
    vs = g.vertices
    leq = frozenset((v, w) for v in vs for w in vs if dominated(g, v, w))
    strict = frozenset((v, w) for v in vs for w in vs if strictly_link_dominated(g, v, w))

    classes = _group_by(g, lambda v: frozenset(w for w in vs if (v, w) in leq and (w, v) in leq))
    abelian = tuple(
        all(g.commutes(u, w) for u, w in combinations(c, 2)) for c in classes
    )
    principal = frozenset(v for v in vs if not any((v, w) in strict for w in vs))

    maximal = set()
    for c in classes:
        if not any((v, w) in leq for v in c for w in vs if w not in c):
            maximal.update(c)

    return OrderReport(
        leq=leq,
        strict_link_leq=strict,
        classes=classes,
        link_classes=_group_by(g, g.link),
        star_classes=_group_by(g, g.star),
        principal=principal,
        maximal=frozenset(maximal),
        abelian=abelian,
    )


# ============================================================================
# DOUBLE GRAPH
# ============================================================================

def components_outside_star(g: DefiningGraph, m: str) -> List[FrozenSet[Literal]]:
    """Connected components of Γ^± ∖ st(m)^±, ordered by least literal"""
    outside = [x for x in g.literals if x.vertex not in g.star(m)]
    double = nx.Graph()
    double.add_nodes_from(outside)
    double.add_edges_from(
        (x, y) for x, y in combinations(outside, 2) if g.literals_adjacent(x, y)
    )
    components = [frozenset(c) for c in nx.connected_components(double)]
    return sorted(components, key=lambda c: min(g.literal_key(x) for x in c))
