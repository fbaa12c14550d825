"""Labeled simple graphs, Seidel matrices, switching and relabeling.

Edges live in a triangular bitset: the pair ``i < j`` occupies bit
``j*(j-1)//2 + i``. Rank is independent of ``n``, so induced subgraphs and
graphs of different orders share one layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_VERTICES = 28


def pair_rank(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


@lru_cache(maxsize=None)
def _star_masks(n: int) -> tuple[int, ...]:
    """Bitmask of all pairs incident to each vertex of K_n."""
    masks = []
    for v in range(n):
        m = 0
        for u in range(n):
            if u != v:
                m |= 1 << pair_rank(u, v)
        masks.append(m)
    return tuple(masks)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range for n={n}")


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``; ``edges`` is the pair bitset."""

    n: int
    edges: int = 0

    def __post_init__(self) -> None:
        _check_n(self.n)
        full = (1 << (self.n * (self.n - 1) // 2)) - 1
        if self.edges & ~full:
            raise ValueError("edge bitset references pairs outside the vertex range")

    def has_edge(self, i: int, j: int) -> bool:
        _check_vertex(self.n, i)
        _check_vertex(self.n, j)
        if i == j:
            return False
        return bool(self.edges >> pair_rank(i, j) & 1)

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(i, j)`` pairs with ``i < j``."""
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.edges >> pair_rank(i, j) & 1
        ]

    @property
    def num_edges(self) -> int:
        return self.edges.bit_count()

    def complement(self) -> Graph:
        full = (1 << (self.n * (self.n - 1) // 2)) - 1
        return Graph(self.n, self.edges ^ full)


def new_graph(n: int, edge_list: Iterable[Sequence[int]] = ()) -> Graph:
    _check_n(n)
    bits = 0
    for pair in edge_list:
        i, j = pair
        _check_vertex(n, i)
        _check_vertex(n, j)
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        bits |= 1 << pair_rank(i, j)
    return Graph(n, bits)


def seidel_matrix(g: Graph) -> np.ndarray:
    """Seidel matrix: 0 on the diagonal, -1 for adjacent pairs, +1 otherwise."""
    s = np.ones((g.n, g.n), dtype=np.int8)
    np.fill_diagonal(s, 0)
    for i, j in g.edge_list():
        s[i, j] = s[j, i] = -1
    return s


def _vertex_set(n: int, s: Iterable[int]) -> frozenset[int]:
    vs = frozenset(s)
    for v in vs:
        _check_vertex(n, v)
    return vs


def switch(g: Graph, s: Iterable[int]) -> Graph:
    """Flip adjacency on every pair with exactly one endpoint in ``s``."""
    vs = _vertex_set(g.n, s)
    stars = _star_masks(g.n)
    cross = 0
    # pairs inside s are toggled twice and cancel
    for v in vs:
        cross ^= stars[v]
    return Graph(g.n, g.edges ^ cross)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Move vertex ``i`` to ``perm[i]``."""
    perm = list(perm)
    if sorted(perm) != list(range(g.n)):
        raise ValueError(f"not a permutation of 0..{g.n - 1}: {perm}")
    return new_graph(g.n, [(perm[i], perm[j]) for i, j in g.edge_list()])


def triple_parity(g: Graph, t: Iterable[int]) -> int:
    """1 if the triple spans an odd number of edges, else 0."""
    a, b, c = _triple(g.n, t)
    e = g.edges
    return (e >> pair_rank(a, b) ^ e >> pair_rank(a, c) ^ e >> pair_rank(b, c)) & 1


def _triple(n: int, t: Iterable[int]) -> tuple[int, int, int]:
    vs = tuple(t)
    if len(vs) != 3 or len(set(vs)) != 3:
        raise ValueError(f"expected three distinct vertices, got {vs}")
    for v in vs:
        _check_vertex(n, v)
    a, b, c = sorted(vs)
    return a, b, c


def induced_subgraph(g: Graph, subset: Sequence[int]) -> Graph:
    """Subgraph on ``subset``, vertex ``subset[k]`` becoming ``k``."""
    sub = list(subset)
    if len(set(sub)) != len(sub):
        raise ValueError("repeated vertex in subset")
    for v in sub:
        _check_vertex(g.n, v)
    return new_graph(
        len(sub),
        [(a, b) for a in range(len(sub)) for b in range(a + 1, len(sub)) if g.has_edge(sub[a], sub[b])],
    )


def to_dot(g: Graph, name: str = "G", labels: Sequence[str] | None = None) -> str:
    """Undirected DOT text; vertices are named ``v1..vn`` unless labels are given."""
    names = list(labels) if labels is not None else [f"v{i + 1}" for i in range(g.n)]
    if len(names) != g.n:
        raise ValueError("one label per vertex required")
    lines = [f"graph {name} {{"]
    lines += [f'  "{v}";' for v in names]
    lines += [f'  "{names[i]}" -- "{names[j]}";' for i, j in g.edge_list()]
    lines.append("}")
    return "\n".join(lines) + "\n"
