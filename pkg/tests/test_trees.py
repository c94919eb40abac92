import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from makerbreaker.trees import (
    TreeSpec,
    NotATreeError,
    degree_census,
    classify_case,
    select_independent_leaves,
    bare_decomposition,
    path_tree,
    star_tree,
    spider_tree,
    caterpillar_tree,
    h_tree,
)


def test_path_census():
    census = degree_census(path_tree(10))
    assert len(census.d1) == 2
    assert len(census.d2) == 8
    assert len(census.d_gt2) == 0


def test_star_census():
    census = degree_census(star_tree(10))
    assert len(census.d1) == 9
    assert len(census.d_gt2) == 1
    assert len(census.d_gt2) <= len(census.d1) - 2


def test_leaves_lemma_on_random_trees():
    # |D_>2| <= |D_1| - 2, spot run here; the full 10^4-tree sweep is
    # in the acceptance suite
    rng = random.Random(0)
    for _ in range(500):
        n = rng.randint(2, 200)
        t = TreeSpec.random(n, rng)
        census = degree_census(t)  # asserts the lemma internally
        assert len(census.d_gt2) <= len(census.d1) - 2


@given(st.lists(st.integers(0, 19), min_size=6, max_size=18))
@settings(max_examples=200, deadline=None)
def test_leaves_lemma_hypothesis_prufer(seq):
    n = len(seq) + 2
    seq = [v % n for v in seq]
    t = TreeSpec.from_prufer(seq)
    census = degree_census(t)
    assert len(census.d_gt2) <= len(census.d1) - 2


def test_prufer_roundtrip_structure():
    t = TreeSpec.from_prufer([3, 3, 3, 4])
    assert t.n == 6
    assert t.degree(3) == 4  # appears 3 times -> degree 4
    t.validate()


def test_classification_examples():
    assert classify_case(path_tree(1000)) == "II"
    spider = spider_tree(200, 5)  # n = 1001, 200 leaf-neighbors
    assert spider.n == 1001
    assert classify_case(spider) == "I"


def test_classification_boundary_is_inclusive():
    # engineered |N_T(L)| exactly at ceil(n^(2/3)): a spider with legs
    # of length 2 where the leaf-neighbor count meets the threshold
    for legs in range(3, 40):
        spider = spider_tree(legs, 2)
        n = spider.n
        census = degree_census(spider)
        if len(census.leaf_neighbors) == math.ceil(n ** (2 / 3)):
            assert classify_case(spider) == "I"
            break
    else:
        pytest.skip("no exact-boundary spider in range")


def test_select_independent_leaves_spider():
    spider = spider_tree(200, 5)
    chosen = select_independent_leaves(spider)
    assert len(chosen) == math.ceil(1001 ** (2 / 3)) == 101
    census = degree_census(spider)
    supports = set()
    for leaf in chosen:
        assert leaf in census.d1
        supports.update(spider.adj[leaf])
    assert len(supports) == len(chosen)  # pairwise distinct neighbors


def test_select_independent_leaves_rejects_case2():
    with pytest.raises(ValueError):
        select_independent_leaves(path_tree(50))


def test_bare_decomposition_path():
    fv, fe, paths = bare_decomposition(path_tree(10), 3)
    assert len(paths) == 1
    assert paths[0].length == 9
    assert {paths[0].a, paths[0].b} == {0, 9}
    assert fv == {0, 9}
    assert fe == []


def test_bare_decomposition_star_is_trivial():
    fv, fe, paths = bare_decomposition(star_tree(10), 2)
    assert paths == []
    assert fv == set(range(10))
    assert len(fe) == 9


def test_bare_decomposition_caterpillar_keeps_everything():
    cat = caterpillar_tree(50)
    fv, fe, paths = bare_decomposition(cat, 3)
    assert paths == []
    assert fv == set(range(cat.n))


def test_bare_decomposition_reassembles_tree():
    for tree in (path_tree(30), h_tree(10, 6), spider_tree(4, 7)):
        fv, fe, paths = bare_decomposition(tree, 4)
        edges = set(fe)
        verts = set(fv)
        for p in paths:
            walk = [p.a] + p.interior + [p.b]
            verts.update(walk)
            for u, v in zip(walk, walk[1:]):
                edges.add((min(u, v), max(u, v)))
        assert verts == set(range(tree.n))
        assert edges == set(tree.edges())


def test_h_tree_has_three_long_paths():
    t = h_tree(20, 10)
    fv, fe, paths = bare_decomposition(t, t.n ** 0.2)
    assert len(paths) == 5  # four half-bars plus the bridge
    assert sum(p.length for p in paths) + len(fe) == t.n - 1


def test_tree_validation_rejects_bad_input():
    with pytest.raises(NotATreeError):
        TreeSpec.from_edges(3, [(0, 1)])  # disconnected / too few edges
    with pytest.raises(NotATreeError):
        TreeSpec.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(NotATreeError):
        TreeSpec.from_edges(4, [(0, 1), (1, 2), (0, 2)])  # cycle + isolated
    with pytest.raises(NotATreeError):
        TreeSpec.from_edges(2, [(0, 0)])


def test_edge_list_roundtrip(tmp_path):
    t = spider_tree(5, 3)
    path = tmp_path / "tree.txt"
    t.dump(path)
    back = TreeSpec.load(path)
    assert back.n == t.n
    assert back.edges() == t.edges()


def test_random_tree_respects_degree_cap():
    rng = random.Random(1)
    for _ in range(50):
        t = TreeSpec.random(30, rng, max_degree=4)
        assert t.max_degree() <= 4
