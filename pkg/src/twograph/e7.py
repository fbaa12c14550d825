"""Minimal vectors of E7* and the 28-vertex bitangent two-graph.

Each vector ``±u_jk`` is stored scaled by 4, so its entries are ``-1``
everywhere except ``3`` at positions ``j`` and ``k`` (1-based), times the
sign. Dot products of scaled vectors are 16 times the true value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .seidel import Graph, new_graph
from .twograph import TwoGraph, two_graph_of

DIM = 8
PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(1, DIM + 1), 2))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}

# scaled dot products between distinct minimal vectors
EDGE_DOT = -8
NON_EDGE_DOT = 8
NORM_DOT = 24


@dataclass(frozen=True)
class SignedMinimalVector:
    j: int
    k: int
    sign: int = 1

    def __post_init__(self) -> None:
        if not (1 <= self.j < self.k <= DIM):
            raise ValueError(f"need 1 <= j < k <= {DIM}, got j={self.j}, k={self.k}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.j, self.k)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(self.sign * (3 if i in (self.j, self.k) else -1) for i in range(1, DIM + 1))

    def __neg__(self) -> SignedMinimalVector:
        return SignedMinimalVector(self.j, self.k, -self.sign)

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else ''}u{self.j}{self.k}"


def minimal_vector(j: int, k: int, sign: int = 1) -> SignedMinimalVector:
    return SignedMinimalVector(j, k, sign)


def dot16(v: SignedMinimalVector, w: SignedMinimalVector) -> int:
    return sum(a * b for a, b in zip(v.entries, w.entries))


_TOKEN = re.compile(r"([+-]?)u([1-8])([1-8])")


def parse_vector_spec(s: str) -> SignedMinimalVector:
    """Parse tokens like ``u18`` or ``-u15``."""
    token = s.strip().replace("−", "-")
    m = _TOKEN.fullmatch(token)
    if m is None:
        raise ValueError(f"malformed vector token {s!r}; expected e.g. 'u18' or '-u15'")
    j, k = int(m.group(2)), int(m.group(3))
    if j >= k:
        raise ValueError(f"indices in {s!r} must be strictly increasing")
    return SignedMinimalVector(j, k, -1 if m.group(1) == "-" else 1)


def parse_vector_list(text: str) -> list[SignedMinimalVector]:
    """Comma- or whitespace-separated tokens; anything after ``#`` is ignored."""
    body = text.split("#", 1)[0]
    return [parse_vector_spec(tok) for tok in re.split(r"[\s,]+", body) if tok]


def read_vector_lists(lines: Iterable[str]) -> list[list[SignedMinimalVector]]:
    """One vector list per non-blank line."""
    out = []
    for line in lines:
        vs = parse_vector_list(line)
        if vs:
            out.append(vs)
    return out


def graph_from_vectors(vs: Sequence[SignedMinimalVector]) -> Graph:
    """Edge between two vectors iff their dot product is -1/2."""
    seen: dict[tuple[int, int], int] = {}
    for a, v in enumerate(vs):
        if v.pair in seen:
            raise ValueError(
                f"vectors {seen[v.pair]} and {a} ({vs[seen[v.pair]]}, {v}) give the same bitangent"
            )
        seen[v.pair] = a
    edges = []
    for a, b in combinations(range(len(vs)), 2):
        d = dot16(vs[a], vs[b])
        if d == EDGE_DOT:
            edges.append((a, b))
        elif d != NON_EDGE_DOT:
            raise AssertionError(f"unexpected scaled dot product {d}")
    return new_graph(len(vs), edges)


@dataclass(frozen=True)
class BitangentModel:
    """The 28 pairs ``±u_jk``, vertex ``i`` bound to ``PAIRS[i]``."""

    vectors: tuple[SignedMinimalVector, ...]
    full_two_graph: TwoGraph

    @cached_property
    def graph(self) -> Graph:
        return graph_from_vectors(self.vectors)

    @cached_property
    def delta_cube(self) -> np.ndarray:
        """Boolean (28, 28, 28) membership array of Delta, symmetric in all axes."""
        n = self.full_two_graph.n
        cube = np.zeros((n, n, n), dtype=bool)
        for a, b, c in self.full_two_graph.triples():
            for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
                cube[x, y, z] = True
        return cube

    def pair_of(self, vertex: int) -> tuple[int, int]:
        return self.vectors[vertex].pair

    def vertex_of(self, v: SignedMinimalVector) -> int:
        return PAIR_INDEX[v.pair]

    def with_two_graph(self, tg: TwoGraph) -> BitangentModel:
        """Same vectors, different triple set; used to build negative controls."""
        return BitangentModel(self.vectors, tg)


def model_from_signs(signs: Sequence[int]) -> BitangentModel:
    if len(signs) != len(PAIRS):
        raise ValueError(f"need {len(PAIRS)} signs")
    vectors = tuple(SignedMinimalVector(j, k, s) for (j, k), s in zip(PAIRS, signs))
    return BitangentModel(vectors, two_graph_of(graph_from_vectors(vectors)))


@lru_cache(maxsize=1)
def bitangent_two_graph() -> BitangentModel:
    model = model_from_signs([1] * len(PAIRS))
    return BitangentModel(model.vectors, TwoGraph(model.full_two_graph.n, model.full_two_graph.delta))


def full_triple_count() -> int:
    return bitangent_two_graph().full_two_graph.size

