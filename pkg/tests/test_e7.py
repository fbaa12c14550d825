from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twograph.e7 import (
    PAIRS,
    bitangent_two_graph,
    dot16,
    graph_from_vectors,
    minimal_vector,
    model_from_signs,
    parse_vector_list,
    parse_vector_spec,
    read_vector_lists,
)
from twograph.twograph import canonical_key, induced, two_graph_of, validate

# popcount of the full 28-vertex triple set, pinned after first computation
FULL_DELTA_SIZE = 1260


def u(j, k, sign=1):
    return minimal_vector(j, k, sign)


def test_minimal_vector_entries():
    assert u(1, 4).entries == (3, -1, -1, 3, -1, -1, -1, -1)
    assert u(1, 4, -1).entries == (-3, 1, 1, -3, 1, 1, 1, 1)
    assert (-u(1, 4)).entries == u(1, 4, -1).entries
    with pytest.raises(ValueError):
        u(4, 1)
    with pytest.raises(ValueError):
        u(0, 3)
    with pytest.raises(ValueError):
        u(1, 9)


def test_scaled_norm():
    for j, k in PAIRS:
        for s in (1, -1):
            v = u(j, k, s)
            assert dot16(v, v) == 24
            assert sum(v.entries) == 0


def test_dot16_examples():
    assert dot16(u(1, 8), u(1, 8)) == 24
    assert dot16(u(1, 8), u(2, 8)) == 8
    assert dot16(u(1, 8), u(2, 3)) == -8
    assert dot16(u(1, 8), u(1, 8, -1)) == -24


def test_dot16_pair_geometry():
    for p, q in combinations(PAIRS, 2):
        shared = len(set(p) & set(q))
        want = 8 if shared == 1 else -8
        assert dot16(u(*p), u(*q)) == want
        assert dot16(u(*p), u(*q, -1)) == -want


@pytest.mark.parametrize(
    "token, expected",
    [("u18", (1, 8, 1)), ("-u15", (1, 5, -1)), ("+u27", (2, 7, 1)), ("−u14", (1, 4, -1))],
)
def test_parse_vector_spec(token, expected):
    v = parse_vector_spec(token)
    assert (v.j, v.k, v.sign) == expected


@pytest.mark.parametrize("token", ["u81", "u11", "u19", "v18", "u1", "--u18", "u18x", ""])
def test_parse_vector_spec_rejects(token):
    with pytest.raises(ValueError):
        parse_vector_spec(token)


def test_parse_lists_and_files():
    assert [str(v) for v in parse_vector_list("u18, u28,-u15  u38 # comment u48")] == ["u18", "u28", "-u15", "u38"]
    lists = read_vector_lists(["u18 u28 u38", "", "# only a comment", "u12,u13,u23"])
    assert [[str(v) for v in vs] for vs in lists] == [["u18", "u28", "u38"], ["u12", "u13", "u23"]]


def test_graph_from_vectors_examples():
    g = graph_from_vectors(parse_vector_list("u18 u28 u38 u48 u58"))
    assert g.n == 5 and g.edge_list() == []
    with pytest.raises(ValueError):
        graph_from_vectors([u(1, 8), u(1, 8, -1)])
    with pytest.raises(ValueError):
        graph_from_vectors([u(1, 8), u(1, 8)])


def test_example_37_graph_is_complement_of_drawing():
    # computed with the -1/2 edge rule; the drawing shows the complementary graph
    g = graph_from_vectors(parse_vector_list("u14 u18 u28 u38"))
    assert g.edge_list() == [(0, 2), (0, 3)]
    drawn = [(0, 1), (1, 2), (2, 3), (1, 3)]
    assert g.complement().edge_list() == sorted(drawn)
    tg = two_graph_of(g)
    assert tg.triples() == [(0, 1, 2), (0, 1, 3)]


def test_full_model():
    model = bitangent_two_graph()
    tg = model.full_two_graph
    assert tg.n == 28
    assert tg.size == FULL_DELTA_SIZE
    assert validate(28, tg.delta)
    assert [v.pair for v in model.vectors] == list(PAIRS)
    assert all(v.sign == 1 for v in model.vectors)


def test_full_model_triple_examples():
    tg = bitangent_two_graph().full_two_graph
    idx = {p: i for i, p in enumerate(PAIRS)}
    assert (idx[(1, 8)], idx[(2, 8)], idx[(3, 8)]) not in tg
    assert (idx[(1, 4)], idx[(2, 8)], idx[(3, 8)]) not in tg
    # only {1,3} and {2,4} are disjoint: one edge, odd
    assert (idx[(1, 2)], idx[(1, 3)], idx[(2, 4)]) in tg
    assert (idx[(1, 2)], idx[(3, 4)], idx[(5, 6)]) in tg


def test_delta_oracle_from_pair_disjointness():
    tg = bitangent_two_graph().full_two_graph
    for t in combinations(range(28), 3):
        ps = [set(PAIRS[i]) for i in t]
        disjoint = sum(not (a & b) for a, b in combinations(ps, 2))
        assert (t in tg) == bool(disjoint % 2)


def test_induced_example_37_equivalent():
    model = bitangent_two_graph()
    idx = [model.vertex_of(v) for v in parse_vector_list("u14 u18 u28 u38")]
    sub = induced(model.full_two_graph, idx)
    drawn = two_graph_of(graph_from_vectors(parse_vector_list("u14 u18 u28 u38")).complement())
    assert canonical_key(sub) == canonical_key(drawn)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=28, max_size=28))
def test_sign_independence(signs):
    assert model_from_signs(signs).full_two_graph.delta == bitangent_two_graph().full_two_graph.delta


def test_single_sign_flip_is_switch():
    from twograph.seidel import switch

    base = bitangent_two_graph().graph
    signs = [1] * 28
    signs[5] = -1
    assert graph_from_vectors(model_from_signs(signs).vectors) == switch(base, {5})


def test_unique_tetrad_property():
    model = bitangent_two_graph()
    cube = model.delta_cube
    for a, b, c in model.full_two_graph.triples():
        assert np.count_nonzero(cube[a, b] & cube[a, c] & cube[b, c]) == 1


def test_delta_cube_symmetric():
    cube = bitangent_two_graph().delta_cube
    assert (cube == cube.transpose(1, 0, 2)).all()
    assert (cube == cube.transpose(0, 2, 1)).all()
    assert cube.sum() == 6 * FULL_DELTA_SIZE
