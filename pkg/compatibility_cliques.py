"""
Compatibility Cliques - exact maximum clique search with a node budget

Branch and bound over bitsets: vertices are ranked by core number (degeneracy)
and degree, and each node is bounded by a greedy coloring of its candidates.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, TypeVar
import logging

import networkx as nx
import numpy as np

from config import get_settings
from raag_errors import SearchBudgetExceeded

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class CliqueResult:
    members: List[int]  # indices into the input item list, ascending
    nodes: int

    @property
    def size(self) -> int:
        return len(self.members)


def compatibility_matrix(items: Sequence[T], related: Callable[[T, T], bool]) -> np.ndarray:
    """Symmetric boolean matrix of a pairwise relation, zero diagonal"""
    n = len(items)
    matrix = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if related(items[i], items[j]):
                matrix[i, j] = matrix[j, i] = True
    return matrix


class CliqueSearch:
    """Exact maximum clique of a boolean adjacency matrix"""

    def __init__(self, matrix: np.ndarray, budget: int):
        self.n = matrix.shape[0]
        self.budget = budget
        self.nodes = 0

        graph = nx.from_numpy_array(matrix.astype(np.uint8))
        cores = nx.core_number(graph) if self.n else {}
        degrees = matrix.sum(axis=0)
        # rank 0 = highest core number, then highest degree
        self.order = sorted(range(self.n), key=lambda i: (-cores[i], -int(degrees[i]), i))
        rank = {v: r for r, v in enumerate(self.order)}

        self.neighbours = [0] * self.n
        for i in range(self.n):
            bits = 0
            for j in np.flatnonzero(matrix[i]):
                bits |= 1 << rank[int(j)]
            self.neighbours[rank[i]] = bits

        self.best: List[int] = []

    def _color_sort(self, candidates: int):
        order, colors = [], []
        uncolored, color = candidates, 0
        while uncolored:
            color += 1
            available = uncolored
            while available:
                v = (available & -available).bit_length() - 1
                available &= ~(1 << v) & ~self.neighbours[v]
                uncolored &= ~(1 << v)
                order.append(v)
                colors.append(color)
        return order, colors

    def _expand(self, current: List[int], candidates: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"Clique search exceeded {self.budget} nodes (best so far {len(self.best)})"
            )
        order, colors = self._color_sort(candidates)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + colors[idx] <= len(self.best):
                return
            v = order[idx]
            current.append(v)
            narrowed = candidates & self.neighbours[v]
            if narrowed:
                self._expand(current, narrowed)
            elif len(current) > len(self.best):
                self.best = list(current)
            current.pop()
            candidates &= ~(1 << v)

    def run(self) -> CliqueResult:
        if self.n:
            self._expand([], (1 << self.n) - 1)
        members = sorted(self.order[r] for r in self.best)
        logger.debug(f"Clique search: size {len(members)} after {self.nodes} nodes")
        return CliqueResult(members, self.nodes)


def maximum_clique(items: Sequence[T], related: Callable[[T, T], bool],
                   budget: Optional[int] = None) -> List[T]:
    matrix = compatibility_matrix(items, related)
    result = CliqueSearch(matrix, budget or get_settings().search_budget).run()
    return [items[i] for i in result.members]
