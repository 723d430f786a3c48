import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from connmatch import (
    BudgetExceeded,
    GraphError,
    MultipartiteSpec,
    build_complete,
    components,
    enumerate_colorings,
    figure1_coloring,
    from_word,
    load_graph,
)
from oracles import bfs_components


def test_spec_invariants():
    spec = MultipartiteSpec((3, 2, 2))
    assert spec.N == 7 and spec.s == 3
    assert [spec.part_of(v) for v in range(7)] == [0, 0, 0, 1, 1, 2, 2]
    with pytest.raises(GraphError):
        MultipartiteSpec(())
    with pytest.raises(GraphError):
        MultipartiteSpec((1, 2))
    with pytest.raises(GraphError):
        MultipartiteSpec((2, 0))


def test_edge_order_is_lexicographic_cross_pairs():
    spec = MultipartiteSpec((2, 1, 1))
    assert spec.edge_pairs == ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def test_smallest_graph():
    g = build_complete(MultipartiteSpec((1, 1)), lambda u, v: {1})
    assert g.edges(1) == [(0, 1)]
    assert g.edges(2) == []


def test_singleton_coloring_of_k211():
    spec = MultipartiteSpec((2, 1, 1))
    g = build_complete(spec, lambda u, v: {1 if u == 0 else 2})
    assert g.edge_count(1) + g.edge_count(2) == 5


def test_same_part_pair_rejected():
    spec = MultipartiteSpec((2, 2))
    colors = {pair: [1] for pair in spec.edge_pairs}
    colors[(0, 1)] = [1]
    with pytest.raises(GraphError, match="inside one part"):
        build_complete(spec, colors)


def test_empty_color_set_rejected():
    with pytest.raises(GraphError, match="empty color set"):
        build_complete(MultipartiteSpec((1, 1, 1)), lambda u, v: set() if u == 0 else {1})


def test_overlap_requires_flag():
    spec = MultipartiteSpec((1, 1))
    with pytest.raises(GraphError):
        build_complete(spec, lambda u, v: {1, 2})
    g = build_complete(spec, lambda u, v: {1, 2}, overlap_allowed=True)
    assert g.colors_of(0, 1) == {1, 2}


def test_components_of_figure1_blue():
    g = figure1_coloring(2)
    sub = components(g, 2)
    assert sorted(sub.component_sizes) == [1, 3]
    # independent BFS on the same edge list
    assert sorted(map(len, bfs_components(g.N, g.edges(2)))) == [1, 3]


def test_components_one_color_connected():
    g = build_complete(MultipartiteSpec((2, 1, 1)), lambda u, v: {1}, num_colors=2)
    assert components(g, 1).component_sizes == (4,)
    assert components(g, 2).component_sizes == (1, 1, 1, 1)


def test_components_stable_and_color_checked():
    g = figure1_coloring(3)
    assert components(g, 1) == components(g, 1)
    with pytest.raises(GraphError):
        components(g, 3)


@pytest.mark.parametrize("parts,k,count", [((1, 1), 2, 2), ((2, 1, 1), 2, 32), ((1, 1, 1, 1), 3, 729)])
def test_enumeration_counts(parts, k, count):
    spec = MultipartiteSpec(parts)
    words = [g.coloring_word() for g in enumerate_colorings(spec, k)]
    assert len(words) == count
    assert len(set(words)) == count
    assert words == sorted(words)


def test_enumeration_counts_up_to_16_edges():
    for parts in [(2, 2), (2, 2, 1), (3, 3), (2, 2, 2), (4, 4), (2, 1, 1, 1)]:
        spec = MultipartiteSpec(parts)
        assert spec.num_edges <= 16
        assert sum(1 for _ in enumerate_colorings(spec, 2)) == 2 ** spec.num_edges


def test_enumeration_budget_and_symmetry_flag():
    spec = MultipartiteSpec((1, 1, 1, 1))
    with pytest.raises(BudgetExceeded):
        next(enumerate_colorings(spec, 3, budget=100))
    pinned = list(enumerate_colorings(spec, 3, fix_first_edge=True))
    assert len(pinned) == 243
    assert all(g.coloring_word()[0] == 1 for g in pinned)


def test_json_round_trip():
    g = figure1_coloring(3)
    again = load_graph(g.to_json())
    assert again == g


def test_json_missing_edge_rejected():
    data = figure1_coloring(2).to_dict()
    data["edges"].pop()
    with pytest.raises(GraphError, match="missing"):
        load_graph(json.dumps(data))


def test_json_same_part_edge_rejected():
    spec = MultipartiteSpec((2, 1))
    data = from_word(spec, (1, 2), 2).to_dict()
    data["edges"].append({"u": 0, "v": 1, "colors": [1]})
    with pytest.raises(GraphError):
        load_graph(data)


part_lists = st.lists(st.integers(1, 3), min_size=2, max_size=4).map(lambda xs: tuple(sorted(xs, reverse=True)))


@settings(max_examples=60, deadline=None)
@given(part_lists, st.integers(0, 2**32 - 1))
def test_each_pair_in_exactly_one_class(parts, seed):
    spec = MultipartiteSpec(parts)
    rng = random.Random(seed)
    g = from_word(spec, [rng.randint(1, 2) for _ in range(spec.num_edges)], 2)
    for u, v in spec.edge_pairs:
        assert len(g.colors_of(u, v)) == 1
    for j in range(spec.s):
        for u in spec.part(j):
            for v in spec.part(j):
                assert g.colors_of(u, v) == frozenset()


@settings(max_examples=60, deadline=None)
@given(part_lists, st.integers(0, 2**32 - 1))
def test_relabeling_inside_part_preserves_component_sizes(parts, seed):
    spec = MultipartiteSpec(parts)
    rng = random.Random(seed)
    word = [rng.randint(1, 2) for _ in range(spec.num_edges)]
    g = from_word(spec, word, 2)
    # permute vertices within each part
    perm = list(range(spec.N))
    for j in range(spec.s):
        block = list(spec.part(j))
        shuffled = block[:]
        rng.shuffle(shuffled)
        for a, b in zip(block, shuffled):
            perm[a] = b
    h = build_complete(spec, lambda u, v: g.colors_of(perm[u], perm[v]))
    for c in (1, 2):
        assert sorted(components(g, c).component_sizes) == sorted(components(h, c).component_sizes)
