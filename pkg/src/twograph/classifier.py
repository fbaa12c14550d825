"""Exhaustive realizability scans over bitangent subsets and lemma checks."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import chain, combinations, islice
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .e7 import BitangentModel, graph_from_vectors, parse_vector_list
from .seidel import Graph, switch
from .twograph import (
    CanonicalKey,
    ClassCatalog,
    TwoGraph,
    canonical_key,
    canonical_key_of_delta,
    induced,
    triples,
    two_graph_of,
    validate,
)

MIN_SUBSET = 3
MAX_SUBSET = 7
BLOCK = 1 << 16
DEFAULT_SEED = 20190101

# witness lists printed for each realizable class on 5 and 6 bitangents
REFERENCE_WITNESSES: dict[str, str] = {
    "(5,0)": "u18, u28, u38, u48, u58",
    "(5,3)": "u18, u28, u38, u48, -u15",
    "(5,4)": "u18, u28, u38, u48, -u12",
    "(5,5)": "u18, u28, u38, u23, -u24",
    "(5,6)": "u18, u28, u13, u23, u12",
    "(6,0)": "u18, u28, u38, u48, u58, u68",
    "(6,4)": "u18, u28, u38, u48, u58, -u16",
    "(6,6)": "u18, u28, u38, u48, u58, -u12",
    "(6,8)_1": "u18, u28, u38, u48, -u15, -u26",
    "(6,8)_2": "u18, u28, u38, u48, -u15, -u25",
    "(6,8)_3": "u18, u28, u38, -u14, u23, u48",
    "(6,10)_1": "u18, u28, u38, u48, -u14, -u34",
    "(6,10)_4": "u18, u28, u38, u23, -u24, u35",
    "(6,12)_3": "u18, u28, u38, u12, u13, u23",
}

EXCLUDED_6 = ("(6,10)_2", "(6,10)_3", "(6,12)_1", "(6,12)_2", "(6,14)", "(6,16)", "(6,20)")
REALIZABLE_6 = tuple(label for label in REFERENCE_WITNESSES if label.startswith("(6,"))
FORBIDDEN_5 = ("(5,7)", "(5,10)")


@dataclass(frozen=True)
class ClassRecord:
    label: str
    key: CanonicalKey
    count: int
    witness: tuple[int, ...] | None
    witness_pairs: tuple[tuple[int, int], ...] | None

    @property
    def realizable(self) -> bool:
        return self.count > 0


@dataclass(frozen=True)
class RealizabilityReport:
    n: int
    total_subsets: int
    records: tuple[ClassRecord, ...]
    max_delta_size: int

    @property
    def realizable(self) -> list[ClassRecord]:
        return [r for r in self.records if r.realizable]

    @property
    def unrealizable(self) -> list[ClassRecord]:
        return [r for r in self.records if not r.realizable]

    @property
    def counted(self) -> int:
        return sum(r.count for r in self.records)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total_subsets": self.total_subsets,
            "classes": [
                {
                    "label": r.label,
                    "key_hex": r.key.hex,
                    "realizable": r.realizable,
                    "count": r.count,
                    "witness_pairs": [list(p) for p in r.witness_pairs] if r.witness_pairs else None,
                }
                for r in self.records
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        width = max(len(r.label) for r in self.records)
        lines = [f"{'class':<{width}}  {'|D|':>4}  {'realizable':<10}  {'subsets':>9}  witness"]
        for r in self.records:
            w = " ".join(f"u{j}{k}" for j, k in r.witness_pairs) if r.witness_pairs else "-"
            lines.append(
                f"{r.label:<{width}}  {r.key.size:>4}  {'yes' if r.realizable else 'no':<10}  {r.count:>9}  {w}"
            )
        lines.append(
            f"{len(self.realizable)} of {len(self.records)} classes realizable; "
            f"{self.counted} of {self.total_subsets} subsets of size {self.n}"
        )
        return "\n".join(lines)


@dataclass
class LemmaReport:
    lemma: str
    checked: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = False) -> dict:
        doc = {
            "lemma": self.lemma,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
        }
        if timing:
            doc["elapsed_s"] = round(self.elapsed, 3)
        return doc


def colex_rank(subset: Sequence[int]) -> int:
    return sum(comb(v, i + 1) for i, v in enumerate(sorted(subset)))


def colex_unrank(rank: int, k: int) -> tuple[int, ...]:
    out = []
    for i in range(k, 0, -1):
        v = i - 1
        while comb(v + 1, i) <= rank:
            v += 1
        out.append(v)
        rank -= comb(v, i)
    return tuple(reversed(out))


def _scan_block(n: int, cube: np.ndarray, start: int, stop: int, universe: int):
    """Tally labeled deltas of subsets ``start..stop`` (lexicographic order)."""
    flat = np.fromiter(
        chain.from_iterable(islice(combinations(range(universe), n), start, stop)),
        dtype=np.int64,
        count=(stop - start) * n,
    )
    subs = flat.reshape(-1, n)
    ts = np.array(triples(n), dtype=np.int64).reshape(-1, 3)
    bits = cube[subs[:, ts[:, 0]], subs[:, ts[:, 1]], subs[:, ts[:, 2]]]
    weights = np.left_shift(np.int64(1), np.arange(ts.shape[0], dtype=np.int64))
    deltas = bits.astype(np.int64) @ weights
    sizes = bits.sum(axis=1)
    binom = np.array([[comb(v, i + 1) for i in range(n)] for v in range(universe)], dtype=np.int64)
    colex = binom[subs, np.arange(n)].sum(axis=1)
    uniq, inv = np.unique(deltas, return_inverse=True)
    counts = np.bincount(inv, minlength=uniq.size)
    first = np.full(uniq.size, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(first, inv, colex)
    tally: dict[int, list[int]] = {}
    for d, c, f in zip(uniq.tolist(), counts.tolist(), first.tolist()):
        key = canonical_key_of_delta(n, d).key
        if key in tally:
            tally[key][0] += c
            tally[key][1] = min(tally[key][1], f)
        else:
            tally[key] = [c, f]
    return tally, int(sizes.max()) if sizes.size else 0


def _merge(into: dict[int, list[int]], part: dict[int, list[int]]) -> None:
    for key, (c, f) in part.items():
        if key in into:
            into[key][0] += c
            into[key][1] = min(into[key][1], f)
        else:
            into[key] = [c, f]


def resolve_workers(workers: int) -> int:
    if workers == 0:
        return os.cpu_count() or 1
    return max(1, workers)


def classify_subsets(
    n: int, catalog: ClassCatalog, model: BitangentModel, workers: int = 1
) -> RealizabilityReport:
    """Tally every ``n``-subset of the bitangents by the class of its two-graph."""
    if not MIN_SUBSET <= n <= MAX_SUBSET:
        raise ValueError(f"subset size must be in {MIN_SUBSET}..{MAX_SUBSET}, got {n}")
    if catalog.n != n:
        raise ValueError(f"catalog is for n={catalog.n}, scan requested n={n}")
    universe = model.full_two_graph.n
    if universe != len(model.vectors):
        raise ValueError("model vector count does not match its two-graph")
    total = comb(universe, n)
    cube = model.delta_cube
    bounds = [(s, min(s + BLOCK, total)) for s in range(0, total, BLOCK)]
    tally: dict[int, list[int]] = {}
    max_size = 0
    nworkers = resolve_workers(workers)
    if nworkers == 1:
        parts = (_scan_block(n, cube, s, e, universe) for s, e in bounds)
        for part, m in parts:
            _merge(tally, part)
            max_size = max(max_size, m)
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            futures = [pool.submit(_scan_block, n, cube, s, e, universe) for s, e in bounds]
            for fut in futures:
                part, m = fut.result()
                _merge(tally, part)
                max_size = max(max_size, m)

    known = {c.key.key for c in catalog}
    stray = set(tally) - known
    if stray:
        raise RuntimeError(f"scan produced keys outside the catalog: {sorted(stray)}")
    records = []
    for c in catalog:
        count, first = tally.get(c.key.key, (0, None))
        witness = colex_unrank(first, n) if count else None
        pairs = tuple(model.pair_of(v) for v in witness) if witness else None
        records.append(ClassRecord(c.label, c.key, count, witness, pairs))
    return RealizabilityReport(n, total, tuple(records), max_size)


def verify_unique_tetrad(model: BitangentModel) -> LemmaReport:
    """Each triple of Delta lies in exactly one 4-set whose triples are all in Delta."""
    t0 = time.perf_counter()
    report = LemmaReport("unique-tetrad")
    cube = model.delta_cube
    for a, b, c in model.full_two_graph.triples():
        completions = np.flatnonzero(cube[a, b] & cube[a, c] & cube[b, c])
        report.checked += 1
        if completions.size != 1:
            report.violations.append({"triple": [a, b, c], "completions": completions.tolist()})
    report.elapsed = time.perf_counter() - t0
    return report


def deletion_sizes(tg: TwoGraph) -> list[int]:
    """|Delta| of each single-vertex-deleted sub-two-graph."""
    return [induced(tg, [v for v in range(tg.n) if v != i]).size for i in range(tg.n)]


def verify_reduction_bound(tg: TwoGraph) -> bool:
    if tg.n < 4:
        raise ValueError("reduction bound needs at least 4 vertices")
    d = tg.size
    ds = deletion_sizes(tg)
    return sum(ds) == (tg.n - 3) * d and max(ds) * tg.n >= (tg.n - 3) * d


def verify_excluded_by_subgraph(catalog6: ClassCatalog, catalog5: ClassCatalog) -> LemmaReport:
    """Excluded 6-classes contain a forbidden 5-class; realizable ones contain none."""
    t0 = time.perf_counter()
    report = LemmaReport("exclusions")
    if catalog6.n != 6 or catalog5.n != 5:
        raise ValueError("need catalogs for n=6 and n=5")
    try:
        entries = {label: catalog6.by_label(label) for label in EXCLUDED_6 + REALIZABLE_6}
    except KeyError as exc:
        raise ValueError(f"label binding failure: {exc}") from exc
    for label, entry in entries.items():
        tg = entry.key.two_graph()
        subs = [catalog5.label_of(canonical_key(induced(tg, [v for v in range(6) if v != i]))) for i in range(6)]
        report.checked += 1
        hit = any(s in FORBIDDEN_5 for s in subs)
        if hit != (label in EXCLUDED_6):
            report.violations.append({"class": label, "deletions": subs})
    report.elapsed = time.perf_counter() - t0
    return report


def verify_paper_examples(model: BitangentModel, catalogs: Mapping[int, ClassCatalog]) -> LemmaReport:
    """Each printed vector list lands in the class it is listed under."""
    t0 = time.perf_counter()
    report = LemmaReport("examples")
    for label, text in REFERENCE_WITNESSES.items():
        vs = parse_vector_list(text)
        tg = two_graph_of(graph_from_vectors(vs))
        got = canonical_key(tg)
        want = catalogs[len(vs)].by_label(label).key
        # the same vertices read off the 28-vertex model must agree exactly
        sub = induced(model.full_two_graph, [model.vertex_of(v) for v in vs])
        report.checked += 1
        if got != want or sub.delta != tg.delta:
            try:
                got_label = catalogs[len(vs)].label_of(got)
            except KeyError:
                got_label = None
            report.violations.append(
                {
                    "class": label,
                    "vectors": text,
                    "expected_key": want.hex,
                    "got_key": got.hex,
                    "got_class": got_label,
                }
            )
    report.elapsed = time.perf_counter() - t0
    return report


def random_graph(rng: np.random.Generator, n: int) -> Graph:
    """Fair coin per vertex pair."""
    m = n * (n - 1) // 2
    bits = rng.integers(0, 2, size=m)
    return Graph(n, sum(1 << i for i in np.flatnonzero(bits).tolist()))


def random_subset(rng: np.random.Generator, n: int) -> list[int]:
    return np.flatnonzero(rng.integers(0, 2, size=n)).tolist()


def verify_parity(seed: int = DEFAULT_SEED, trials: int = 2000, max_n: int = 12) -> LemmaReport:
    """Random graphs: switching keeps the triple set, and the triple set is a two-graph."""
    t0 = time.perf_counter()
    report = LemmaReport("parity")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(3, max_n + 1))
        g = random_graph(rng, n)
        s = random_subset(rng, n)
        a, b = two_graph_of(g), two_graph_of(switch(g, s))
        report.checked += 1
        if a.delta != b.delta or not validate(n, a.delta):
            report.violations.append({"n": n, "edges": g.edge_list(), "switch": s})
    report.elapsed = time.perf_counter() - t0
    return report


def verify_sign_independence(model: BitangentModel, seed: int = DEFAULT_SEED, trials: int = 100) -> LemmaReport:
    from .e7 import model_from_signs

    t0 = time.perf_counter()
    report = LemmaReport("sign-independence")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        signs = (rng.integers(0, 2, size=len(model.vectors)) * 2 - 1).tolist()
        report.checked += 1
        if model_from_signs(signs).full_two_graph.delta != model.full_two_graph.delta:
            report.violations.append({"signs": signs})
    report.elapsed = time.perf_counter() - t0
    return report


def verify_six_subset_bound(report: RealizabilityReport) -> LemmaReport:
    """No 6-subset may carry 14 or more triples."""
    out = LemmaReport("six-subset-bound", checked=report.total_subsets)
    if report.n == 6 and report.max_delta_size >= 14:
        out.violations.append({"max_delta_size": report.max_delta_size})
    return out


def _realizable_keys(report: RealizabilityReport) -> set[int]:
    return {r.key.key for r in report.realizable}


def monotone_violations(big: RealizabilityReport, small: RealizabilityReport) -> list[str]:
    """Realizable classes of ``big`` with a deletion outside ``small``'s realizable set."""
    ok = _realizable_keys(small)
    bad = []
    for r in big.realizable:
        tg = r.key.two_graph()
        for i in range(tg.n):
            k = canonical_key(induced(tg, [v for v in range(tg.n) if v != i]))
            if k.key not in ok:
                bad.append(r.label)
                break
    return bad



def verify_reduction_random(seed: int = DEFAULT_SEED, trials: int = 1000) -> LemmaReport:
    """Deletion-count identity and bound on random two-graphs with 4..8 vertices."""
    t0 = time.perf_counter()
    report = LemmaReport("reduction")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(4, 9))
        tg = two_graph_of(random_graph(rng, n))
        report.checked += 1
        if not verify_reduction_bound(tg):
            report.violations.append({"n": n, "delta": tg.delta})
    report.elapsed = time.perf_counter() - t0
    return report
