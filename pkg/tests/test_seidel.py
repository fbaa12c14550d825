import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twograph.seidel import (
    Graph,
    induced_subgraph,
    new_graph,
    relabel,
    seidel_matrix,
    switch,
    to_dot,
    triple_parity,
)

DIAMOND_TAIL = [(0, 1), (1, 2), (2, 3), (1, 3)]


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Graph(n, bits)


@st.composite
def graph_and_subsets(draw, count=1, min_n=1, max_n=10):
    g = draw(graphs(min_n, max_n))
    subsets = [draw(st.sets(st.integers(0, g.n - 1))) for _ in range(count)]
    return (g, *subsets)


@st.composite
def graph_subset_perm(draw):
    g, s = draw(graph_and_subsets())
    perm = draw(st.permutations(range(g.n)))
    return g, s, perm


def test_new_graph_example():
    g = new_graph(4, DIAMOND_TAIL)
    assert g.edge_list() == [(0, 1), (1, 2), (1, 3), (2, 3)]
    assert new_graph(5, []).edge_list() == []
    assert new_graph(3, [(0, 1), (0, 1)]).edge_list() == [(0, 1)]


@pytest.mark.parametrize(
    "n, edges",
    [(4, [(0, 0)]), (4, [(0, 4)]), (3, [(-1, 2)]), (0, []), (29, [])],
)
def test_new_graph_rejects(n, edges):
    with pytest.raises(ValueError):
        new_graph(n, edges)


def test_seidel_matrix_examples():
    assert seidel_matrix(new_graph(2)).tolist() == [[0, 1], [1, 0]]
    assert seidel_matrix(new_graph(2, [(0, 1)])).tolist() == [[0, -1], [-1, 0]]
    s = seidel_matrix(new_graph(4, DIAMOND_TAIL))
    expected = np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)
    for i, j in DIAMOND_TAIL:
        expected[i, j] = expected[j, i] = -1
    assert (s == expected).all()


def test_switch_examples():
    g = new_graph(5, [(0, 1), (2, 3)])
    assert switch(g, []) == g
    assert switch(g, range(5)) == g
    assert switch(new_graph(3), {0}).edge_list() == [(0, 1), (0, 2)]
    with pytest.raises(ValueError):
        switch(g, {5})


def test_relabel_examples():
    g = new_graph(3, [(0, 1)])
    assert relabel(g, [0, 1, 2]) == g
    assert relabel(g, [1, 2, 0]).edge_list() == [(1, 2)]
    path = new_graph(3, [(0, 1), (1, 2)])
    assert relabel(path, [2, 1, 0]) == path
    with pytest.raises(ValueError):
        relabel(g, [0, 0, 1])


def test_triple_parity_examples():
    assert triple_parity(new_graph(3, [(0, 1), (1, 2), (0, 2)]), (0, 1, 2)) == 1
    assert triple_parity(new_graph(6), (1, 3, 5)) == 0
    assert triple_parity(new_graph(4, DIAMOND_TAIL), (0, 2, 3)) == 1
    with pytest.raises(ValueError):
        triple_parity(new_graph(4), (0, 0, 1))
    with pytest.raises(ValueError):
        triple_parity(new_graph(4), (0, 1))


def test_induced_subgraph_reindexes():
    g = new_graph(5, [(1, 3), (3, 4)])
    assert induced_subgraph(g, [4, 3, 1]).edge_list() == [(0, 1), (1, 2)]


def test_dot_export():
    text = to_dot(new_graph(3, [(0, 2)]))
    assert text.startswith("graph G {")
    assert '"v1" -- "v3";' in text
    assert '"v2";' in text


@given(graph_and_subsets())
def test_switch_is_involution(gs):
    g, s = gs
    assert switch(switch(g, s), s) == g


@given(graph_and_subsets())
def test_switch_by_complement(gs):
    g, s = gs
    assert switch(g, s) == switch(g, set(range(g.n)) - s)


@given(graph_and_subsets(count=2))
def test_switching_is_group_action(gst):
    g, s, t = gst
    assert switch(g, s ^ t) == switch(switch(g, s), t)


@given(graph_and_subsets(min_n=3))
def test_switch_preserves_triple_parity(gs):
    g, s = gs
    h = switch(g, s)
    for t in [(a, b, c) for a in range(g.n) for b in range(a + 1, g.n) for c in range(b + 1, g.n)]:
        assert triple_parity(h, t) == triple_parity(g, t)


@given(graph_subset_perm())
def test_relabel_commutes_with_switch(gsp):
    g, s, perm = gsp
    assert relabel(switch(g, s), perm) == switch(relabel(g, perm), {perm[v] for v in s})


@settings(max_examples=200)
@given(graph_and_subsets())
def test_seidel_matrix_conjugation(gs):
    g, s = gs
    d = np.diag([-1 if v in s else 1 for v in range(g.n)])
    assert (seidel_matrix(switch(g, s)) == d @ seidel_matrix(g) @ d).all()


@given(graphs())
def test_seidel_matrix_invariants(g):
    s = seidel_matrix(g)
    assert (np.diag(s) == 0).all()
    assert (s == s.T).all()
    off = s[~np.eye(g.n, dtype=bool)]
    assert set(off.tolist()) <= {-1, 1}
    for i in range(g.n):
        for j in range(g.n):
            if i != j:
                assert (s[i, j] == -1) == g.has_edge(i, j)
