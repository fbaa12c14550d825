"""Two-graphs: triple sets with even parity on every 4-subset.

``TwoGraph.delta`` is an integer bitset over the C(n,3) triples of
``0..n-1`` in lexicographic order, so bit ``r`` is the ``r``-th triple
``(i, j, k)`` with ``i < j < k``.

Canonical keys minimise that integer over every relabeling of the vertices,
which is exhaustive and therefore limited to ``n <= 8``.
"""

from __future__ import annotations

import json
from dataclasses import InitVar, dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .seidel import Graph, pair_rank, new_graph, triple_parity

MAX_CANONICAL_N = 8

# number of two-graph classes on n vertices
T_N = {1: 1, 2: 1, 3: 2, 4: 3, 5: 7, 6: 16, 7: 54, 8: 243, 9: 2038, 10: 33120}

# n for which the class count is enforced as a self-check
ENFORCED_T_N = {n: t for n, t in T_N.items() if n <= 7}


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(combinations(range(n), 3))


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict[tuple[int, int, int], int]:
    return {t: r for r, t in enumerate(triples(n))}


def triple_rank(n: int, t: Iterable[int]) -> int:
    a, b, c = sorted(t)
    return triple_index(n)[(a, b, c)]


@lru_cache(maxsize=None)
def _rank_cube(n: int) -> np.ndarray:
    """``cube[a, b, c]`` is the rank of ``{a, b, c}`` for any ordering; -1 if degenerate."""
    cube = np.full((n, n, n), -1, dtype=np.int32)
    for r, (a, b, c) in enumerate(triples(n)):
        for x, y, z in permutations((a, b, c)):
            cube[x, y, z] = r
    return cube


@lru_cache(maxsize=None)
def _quad_ranks(n: int) -> np.ndarray:
    """Ranks of the four triples inside each 4-subset, shape (C(n,4), 4)."""
    idx = triple_index(n)
    rows = [
        [idx[(a, b, c)], idx[(a, b, d)], idx[(a, c, d)], idx[(b, c, d)]]
        for a, b, c, d in combinations(range(n), 4)
    ]
    return np.array(rows, dtype=np.int32).reshape(-1, 4)


def _bits(delta: int, length: int) -> np.ndarray:
    return np.array([(delta >> r) & 1 for r in range(length)], dtype=np.uint8)


def validate(n: int, delta: int) -> bool:
    """True iff every 4-subset contains an even number of triples of ``delta``."""
    total = comb(n, 3)
    if delta < 0 or delta >> total:
        return False
    if n < 4 or delta == 0:
        return True
    bits = _bits(delta, total)
    return not np.any(bits[_quad_ranks(n)].sum(axis=1) & 1)


@dataclass(frozen=True)
class TwoGraph:
    n: int
    delta: int = 0
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        if check and not validate(self.n, self.delta):
            raise ValueError("triple set violates the even-parity condition on some 4-subset")

    @classmethod
    def from_triples(cls, n: int, ts: Iterable[Iterable[int]]) -> TwoGraph:
        delta = 0
        for t in ts:
            vs = tuple(t)
            if len(set(vs)) != 3 or not all(0 <= v < n for v in vs):
                raise ValueError(f"bad triple {vs} for n={n}")
            delta |= 1 << triple_rank(n, vs)
        return cls(n, delta)

    @property
    def size(self) -> int:
        """Number of triples, |Delta|."""
        return self.delta.bit_count()

    def triples(self) -> list[tuple[int, int, int]]:
        return [t for r, t in enumerate(triples(self.n)) if self.delta >> r & 1]

    def __contains__(self, t: Iterable[int]) -> bool:
        return bool(self.delta >> triple_rank(self.n, t) & 1)


def two_graph_of(g: Graph) -> TwoGraph:
    """Triples spanning an odd number of edges of ``g``."""
    delta = 0
    for r, t in enumerate(triples(g.n)):
        if triple_parity(g, t):
            delta |= 1 << r
    return TwoGraph(g.n, delta, check=False)


def induced(tg: TwoGraph, subset: Sequence[int]) -> TwoGraph:
    """Restriction to ``subset``; vertex ``subset[k]`` becomes ``k``."""
    sub = list(subset)
    if len(sub) < 3:
        raise ValueError("induced sub-two-graph needs at least 3 vertices")
    if len(set(sub)) != len(sub) or not all(0 <= v < tg.n for v in sub):
        raise ValueError(f"invalid vertex subset {sub} for n={tg.n}")
    m = len(sub)
    cube = _rank_cube(tg.n)
    delta = 0
    for r, (a, b, c) in enumerate(triples(m)):
        if tg.delta >> int(cube[sub[a], sub[b], sub[c]]) & 1:
            delta |= 1 << r
    return TwoGraph(m, delta, check=False)


def relabel_two_graph(tg: TwoGraph, perm: Sequence[int]) -> TwoGraph:
    """Move vertex ``i`` to ``perm[i]``."""
    if sorted(perm) != list(range(tg.n)):
        raise ValueError("not a permutation")
    return TwoGraph.from_triples(tg.n, [(perm[a], perm[b], perm[c]) for a, b, c in tg.triples()])


def representative_graph(tg: TwoGraph) -> Graph:
    """The graph in the switching class with vertex ``n-1`` isolated."""
    if tg.n < 3:
        return Graph(max(tg.n, 1))
    last = tg.n - 1
    return new_graph(
        tg.n,
        [(i, j) for i, j in combinations(range(last), 2) if (i, j, last) in tg],
    )


@dataclass(frozen=True, order=True)
class CanonicalKey:
    n: int
    key: int

    @property
    def size(self) -> int:
        return self.key.bit_count()

    @property
    def hex(self) -> str:
        width = max(1, -(-comb(self.n, 3) // 4))
        return format(self.key, f"0{width}x")

    def two_graph(self) -> TwoGraph:
        return TwoGraph(self.n, self.key, check=False)


@lru_cache(maxsize=None)
def _perm_weights(n: int) -> np.ndarray:
    """``w[p, r]`` is the bit weight of triple ``r`` after relabeling ``p``."""
    perms = np.array(list(permutations(range(n))), dtype=np.int32).reshape(-1, n)
    ts = np.array(triples(n), dtype=np.int32).reshape(-1, 3)
    images = _rank_cube(n)[perms[:, ts[:, 0]], perms[:, ts[:, 1]], perms[:, ts[:, 2]]]
    return np.left_shift(np.uint64(1), images.astype(np.uint64))


def orbit(tg: TwoGraph) -> np.ndarray:
    """Delta bitsets of all n! relabelings (with repetition), as uint64."""
    if tg.n > MAX_CANONICAL_N:
        raise ValueError(f"relabeling orbits supported only for n <= {MAX_CANONICAL_N}")
    if tg.n < 3:
        return np.zeros(1, dtype=np.uint64)
    w = _perm_weights(tg.n)
    bits = [r for r in range(w.shape[1]) if tg.delta >> r & 1]
    if not bits:
        return np.zeros(w.shape[0], dtype=np.uint64)
    return w[:, bits].sum(axis=1, dtype=np.uint64)


def canonical_key(tg: TwoGraph) -> CanonicalKey:
    return CanonicalKey(tg.n, int(orbit(tg).min()))


@lru_cache(maxsize=1 << 16)
def canonical_key_of_delta(n: int, delta: int) -> CanonicalKey:
    """Memoized ``canonical_key`` for a trusted delta bitset."""
    return canonical_key(TwoGraph(n, delta, check=False))


def equivalent(a: TwoGraph, b: TwoGraph) -> bool:
    if a.n != b.n or a.size != b.size:
        return False
    return canonical_key(a) == canonical_key(b)


# drawn switching-class representatives, vertices in drawing order
FIGURE_REPRESENTATIVES: dict[int, dict[str, list[tuple[int, int]]]] = {
    5: {
        "(5,0)": [],
        "(5,3)": [(0, 1)],
        "(5,4)": [(0, 1), (1, 2)],
        "(5,5)": [(0, 1), (1, 2), (2, 3)],
        "(5,6)": [(0, 1), (2, 3)],
        "(5,7)": [(0, 1), (1, 2), (0, 2)],
        "(5,10)": [(i, j) for i, j in combinations(range(5), 2)],
    },
    6: {
        "(6,0)": [],
        "(6,4)": [(0, 1)],
        "(6,6)": [(0, 1), (1, 2)],
        "(6,8)_1": [(0, 1), (2, 3)],
        "(6,8)_2": [(0, 1), (1, 2), (2, 3)],
        "(6,8)_3": [(0, 1), (1, 2), (2, 3), (0, 3)],
        "(6,10)_1": [(0, 1), (1, 2), (2, 3), (3, 4)],
        "(6,10)_2": [(0, 1), (1, 2), (0, 2)],
        "(6,10)_3": [(0, 1), (1, 2), (3, 4)],
        "(6,10)_4": [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
        "(6,12)_1": [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5)],
        "(6,12)_2": [(0, 1), (1, 2), (2, 3), (4, 5)],
        "(6,12)_3": [(0, 1), (2, 3), (4, 5)],
        "(6,14)": [(0, 1), (1, 2), (0, 2), (3, 4)],
        "(6,16)": [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)],
        "(6,20)": [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
    },
}


def figure_graph(label: str) -> Graph:
    n = int(label[1 : label.index(",")])
    return new_graph(n, FIGURE_REPRESENTATIVES[n][label])


@dataclass(frozen=True)
class ClassEntry:
    key: CanonicalKey
    label: str

    @property
    def delta_popcount(self) -> int:
        return self.key.size

    def representative(self) -> Graph:
        return representative_graph(self.key.two_graph())


@dataclass(frozen=True)
class ClassCatalog:
    n: int
    classes: tuple[ClassEntry, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def by_label(self, label: str) -> ClassEntry:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(f"no class labeled {label} on {self.n} vertices")

    def label_of(self, key: CanonicalKey) -> str:
        for c in self.classes:
            if c.key == key:
                return c.label
        raise KeyError(f"key {key.hex} not in catalog for n={self.n}")

    def classify(self, tg: TwoGraph) -> ClassEntry:
        key = canonical_key(tg)
        for c in self.classes:
            if c.key == key:
                return c
        raise KeyError(f"key {key.hex} not in catalog for n={self.n}")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "classes": [
                {
                    "label": c.label,
                    "delta_popcount": c.delta_popcount,
                    "key_hex": c.key.hex,
                    "representative_edges": [list(e) for e in c.representative().edge_list()],
                }
                for c in self.classes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> ClassCatalog:
        n = doc["n"]
        return cls(
            n,
            tuple(ClassEntry(CanonicalKey(n, int(c["key_hex"], 16)), c["label"]) for c in doc["classes"]),
        )


def _normal_form_index(n: int, deltas: np.ndarray) -> np.ndarray:
    """Index of the vertex-(n-1)-isolated graph for each labeled delta."""
    out = np.zeros(deltas.shape, dtype=np.int64)
    last = n - 1
    idx = triple_index(n)
    for i, j in combinations(range(last), 2):
        bit = (deltas >> np.uint64(idx[(i, j, last)])) & np.uint64(1)
        out |= bit.astype(np.int64) << pair_rank(i, j)
    return out


def _assign_labels(n: int, keys: list[CanonicalKey]) -> list[str]:
    if n in FIGURE_REPRESENTATIVES:
        bound = {}
        for label in FIGURE_REPRESENTATIVES[n]:
            k = canonical_key(two_graph_of(figure_graph(label)))
            if k in bound:
                raise ValueError(f"figure representatives {bound[k]} and {label} are equivalent")
            bound[k] = label
        missing = [k.hex for k in keys if k not in bound]
        if missing or len(bound) != len(keys):
            raise ValueError(f"figure label binding failed for n={n}: unbound keys {missing}")
        return [bound[k] for k in keys]
    by_size: dict[int, int] = {}
    for k in keys:
        by_size[k.size] = by_size.get(k.size, 0) + 1
    seen: dict[int, int] = {}
    labels = []
    for k in keys:
        base = f"({n},{k.size})"
        if by_size[k.size] > 1:
            seen[k.size] = seen.get(k.size, 0) + 1
            base += f"_{seen[k.size]}"
        labels.append(base)
    return labels


def enumerate_classes(n: int) -> ClassCatalog:
    """All two-graph classes on ``n`` vertices, sorted by (|Delta|, key).

    Sweeps the 2^C(n-1,2) graphs with vertex ``n-1`` isolated (one per labeled
    two-graph); each new class marks its whole relabeling orbit as seen.
    """
    if not 1 <= n <= MAX_CANONICAL_N:
        raise ValueError(f"class enumeration supports 1 <= n <= {MAX_CANONICAL_N}, got {n}")
    if n < 3:
        return ClassCatalog(n, (ClassEntry(CanonicalKey(n, 0), f"({n},0)"),))
    total = 1 << comb(n - 1, 2)
    seen = np.zeros(total, dtype=bool)
    keys = []
    pos = 0
    while pos < total:
        tg = two_graph_of(Graph(n, pos))
        images = orbit(tg)
        keys.append(CanonicalKey(n, int(images.min())))
        seen[_normal_form_index(n, images)] = True
        rest = np.flatnonzero(~seen[pos:])
        if rest.size == 0:
            break
        pos += int(rest[0])
    keys.sort(key=lambda k: (k.size, k.key))
    labels = _assign_labels(n, keys)
    return ClassCatalog(n, tuple(ClassEntry(k, lab) for k, lab in zip(keys, labels)))
