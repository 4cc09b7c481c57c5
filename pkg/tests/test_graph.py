import pytest
from hypothesis import given, settings, strategies as st

from deltacolor import (
    ComponentTag,
    Graph,
    GraphFormatError,
    bfs_layers,
    block_decomposition,
    classify_block,
    find_dcc_within_radius,
    is_gallai_tree,
    is_nice,
)
from deltacolor.graph import ball_distances, induced_subgraph
from deltacolor.workbench import complete_graph, cycle_graph, path_graph

from conftest import (
    bf_all_distances,
    bf_dcc_exists_within,
    bf_is_clique,
    bf_is_dcc,
    bf_is_odd_cycle,
    bf_two_connected,
)


def edge_set_graph(n, edges):
    return Graph(n, edges)


class TestGraphType:
    def test_adjacency_sorted_and_symmetric(self):
        g = Graph(4, [(2, 1), (0, 3), (3, 1)])
        assert g.adjacency[1] == (2, 3)
        for u in range(4):
            for w in g.adjacency[u]:
                assert u in g.adjacency[w]

    def test_rejects_self_loop_and_duplicates(self):
        with pytest.raises(GraphFormatError):
            Graph(3, [(1, 1)])
        with pytest.raises(GraphFormatError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(GraphFormatError):
            Graph(2, [(0, 2)])

    def test_immutable(self):
        g = Graph(2, [(0, 1)])
        with pytest.raises(AttributeError):
            g.n = 5

    def test_max_degree(self, petersen):
        assert petersen.max_degree() == 3
        assert complete_graph(5).max_degree() == 4


class TestBfsLayers:
    def test_path_levels(self):
        s = bfs_layers(path_graph(3), 0, 2)
        assert [set(l) for l in s.levels] == [{0}, {1}, {2}]
        assert s.child_count[0] == 1 and s.child_count[1] == 1

    def test_cycle_symmetry(self):
        s = bfs_layers(cycle_graph(5), 0, 2)
        assert len(s.levels[1]) == 2 and len(s.levels[2]) == 2

    def test_petersen_levels_match_brute_force(self, petersen):
        # independent distances via floyd-warshall
        dist = bf_all_distances(petersen)
        for root in range(petersen.n):
            s = bfs_layers(petersen, root, 2)
            for t in (1, 2):
                assert set(s.levels[t]) == {u for u in range(10) if dist[root][u] == t}
            assert len(s.levels[1]) == 3 and len(s.levels[2]) == 6

    def test_depth_clipped_at_eccentricity(self):
        s = bfs_layers(path_graph(3), 0, 99)
        assert s.depth() == 2

    def test_parents_point_one_level_up(self, petersen):
        s = bfs_layers(petersen, 0, 2)
        level = s.level_of()
        for u, p in s.parent.items():
            if p is not None:
                assert level[p] == level[u] - 1
                assert petersen.has_edge(u, p)


class TestBlocks:
    def test_triangle_single_block(self):
        d = block_decomposition(complete_graph(3))
        assert d.blocks == (frozenset({0, 1, 2}),)
        assert not d.cut_vertices

    def test_two_triangles_share_cut_vertex(self):
        g = Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
        d = block_decomposition(g)
        assert len(d.blocks) == 2
        assert d.cut_vertices == frozenset({0})

    def test_path_gives_bridge_blocks(self):
        d = block_decomposition(path_graph(4))
        assert [set(b) for b in d.blocks] == [{0, 1}, {1, 2}, {2, 3}]
        assert d.cut_vertices == frozenset({1, 2})

    def test_every_edge_in_exactly_one_block(self, petersen):
        d = block_decomposition(petersen)
        for u, w in petersen.edges():
            owners = [b for b in d.blocks if u in b and w in b]
            assert len(owners) == 1

    @settings(max_examples=60, deadline=None)
    @given(st.integers(4, 8), st.data())
    def test_blocks_match_brute_force_two_connectivity(self, n, data):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        mask = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        g = Graph(n, [e for e, keep in zip(pairs, mask) if keep])
        d = block_decomposition(g)
        for b in d.blocks:
            if len(b) > 2:
                assert bf_two_connected(g, set(b))
                # maximal: no strict superset block is 2-connected
                for extra in range(n):
                    if extra not in b:
                        grown = set(b) | {extra}
                        if bf_two_connected(g, grown):
                            # then extra's block must cover b entirely
                            assert any(grown <= set(b2) for b2 in d.blocks)


class TestClassify:
    def test_k4_is_clique(self, k4):
        assert classify_block(k4, range(4)).tag is ComponentTag.CLIQUE

    def test_c5_is_odd_cycle(self, c5):
        assert classify_block(c5, range(5)).tag is ComponentTag.ODD_CYCLE

    def test_c4_is_dcc(self, c4):
        assert classify_block(c4, range(4)).tag is ComponentTag.DCC

    def test_bridge_edge(self):
        g = path_graph(2)
        assert classify_block(g, [0, 1]).tag is ComponentTag.BRIDGE_EDGE

    def test_rejects_non_blocks(self, petersen):
        with pytest.raises(GraphFormatError):
            classify_block(petersen, [0, 7, 9])  # not 2-connected

    @settings(max_examples=40, deadline=None)
    @given(st.integers(4, 7), st.data())
    def test_classification_matches_brute_force(self, n, data):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        mask = data.draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        g = Graph(n, [e for e, keep in zip(pairs, mask) if keep])
        for b in block_decomposition(g).blocks:
            tag = classify_block(g, b).tag
            s = set(b)
            if tag is ComponentTag.BRIDGE_EDGE:
                assert len(s) == 2
            elif tag is ComponentTag.CLIQUE:
                assert bf_is_clique(g, s)
            elif tag is ComponentTag.ODD_CYCLE:
                assert bf_is_odd_cycle(g, s)
            else:
                assert bf_is_dcc(g, s)


class TestFindDcc:
    def test_clique_has_none(self, k4):
        for v in range(4):
            assert find_dcc_within_radius(k4, v, 1) is None

    def test_c4_returns_whole_cycle(self, c4):
        for v in range(4):
            assert find_dcc_within_radius(c4, v, 2) == frozenset({0, 1, 2, 3})

    def test_odd_cycle_has_none(self, c5):
        for v in range(5):
            assert find_dcc_within_radius(c5, v, 2) is None

    def test_petersen_radius3_finds_even_component(self, petersen):
        for v in range(10):
            s = find_dcc_within_radius(petersen, v, 3)
            assert s is not None and v in s
            assert bf_is_dcc(petersen, set(s))
            assert len(s) % 2 == 0  # an even cycle

    def test_agrees_with_subset_enumeration_on_petersen(self, petersen):
        # exhaustive subset oracle: existence must match exactly
        for v in range(10):
            for r in (1, 2, 3):
                found = find_dcc_within_radius(petersen, v, r) is not None
                assert found == bf_dcc_exists_within(petersen, v, r), (v, r)

    def test_agrees_with_subset_enumeration_on_small_mixes(self):
        graphs = [
            Graph(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]),
            Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 5)]),
            Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 2)]),
            Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]),
        ]
        for g in graphs:
            for v in range(g.n):
                for r in (1, 2, 3):
                    found = find_dcc_within_radius(g, v, r)
                    assert (found is not None) == bf_dcc_exists_within(g, v, r), (g, v, r)
                    if found is not None:
                        from conftest import bf_induced_radius

                        assert v in found
                        assert bf_is_dcc(g, set(found))
                        assert bf_induced_radius(g, set(found)) <= r

    def test_chorded_even_cycle_found_via_long_cycle(self):
        # C6 plus a chord that splits it into two odd cycles: the only even
        # cycle is the full hexagon, whose node set still qualifies
        g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)])
        s = find_dcc_within_radius(g, 4, 3)
        assert s is not None and bf_is_dcc(g, set(s))


class TestNice:
    def test_spec_examples(self, petersen):
        assert not is_nice(complete_graph(5))
        assert not is_nice(cycle_graph(7))
        assert is_nice(petersen)

    def test_paths_and_small(self):
        assert not is_nice(path_graph(1))
        assert not is_nice(path_graph(5))
        assert not is_nice(complete_graph(2))
        assert is_nice(Graph(4, [(0, 1), (0, 2), (0, 3)]))  # star

    def test_disconnected_not_nice(self):
        assert not is_nice(Graph(4, [(0, 1), (2, 3)]))


class TestStructuralProperties:
    def test_unique_parents_on_certified_balls(self, heawood):
        # girth 6: radius-2 balls hold no recolorable component, so every node
        # at level t has exactly one neighbor one level up
        for v in range(heawood.n):
            assert all(
                find_dcc_within_radius(heawood, u, 2) is None
                for u in ball_distances(heawood, v, 2)
            )
            s = bfs_layers(heawood, v, 2)
            level = s.level_of()
            for u in level:
                if level[u] == 0:
                    continue
                ups = [w for w in heawood.adjacency[u] if level.get(w) == level[u] - 1]
                assert len(ups) == 1

    def test_neighborhood_cliques_when_no_radius1_component(self):
        # graphs mixing triangles and trees: radius-1 clean nodes must have
        # clique neighborhood components
        graphs = [
            Graph(7, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]),
            complete_graph(5),
            Graph(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5)]),
        ]
        for g in graphs:
            for v in range(g.n):
                if find_dcc_within_radius(g, v, 1) is not None:
                    continue
                nbrs = set(g.adjacency[v])
                sub, _, orig = induced_subgraph(g, nbrs)
                from deltacolor.graph import connected_components

                for comp in connected_components(sub):
                    assert bf_is_clique(sub, set(comp)) or len(comp) == 1

    def test_gallai_classifier_examples(self, petersen, c4, c5, k4):
        assert is_gallai_tree(c5) and is_gallai_tree(k4)
        assert not is_gallai_tree(c4)
        assert not is_gallai_tree(petersen)
        assert is_gallai_tree(path_graph(6))
