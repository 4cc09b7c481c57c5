import json

import pytest

from deltacolor import (
    NotNice,
    color_det_netcomp,
    color_det_rulingforest,
    det_params,
    verify,
)
from deltacolor.graph import ball_distances
from deltacolor.workbench import (
    complete_graph,
    cycle_graph,
    gallai_tree_graph,
    regular_graph,
    torus_graph,
)


class TestRulingForest:
    def test_petersen(self, petersen):
        out = color_det_rulingforest(petersen)
        assert out.report.valid and verify(petersen, out.colors, 3)

    def test_torus_4x4(self):
        g = torus_graph(4, 4)
        out = color_det_rulingforest(g)
        assert verify(g, out.colors, 4)

    def test_k4_not_nice(self, k4):
        with pytest.raises(NotNice):
            color_det_rulingforest(k4)

    def test_base_separation_and_disjoint_changes(self):
        g = regular_graph(400, 3, seed=31)
        out = color_det_rulingforest(g)
        assert verify(g, out.colors, 3)
        params = det_params(g)
        for i, b in enumerate(out.base_nodes):
            ball = ball_distances(g, b, params.alpha - 1)
            for other in out.base_nodes[i + 1:]:
                assert other not in ball
        for i in range(len(out.completion_changes)):
            for j in range(i + 1, len(out.completion_changes)):
                assert not (out.completion_changes[i] & out.completion_changes[j])

    def test_layer_coverage(self):
        g = regular_graph(200, 4, seed=8)
        out = color_det_rulingforest(g)
        params = det_params(g)
        assert out.layer_count <= params.z

    def test_trees_and_block_trees(self):
        for seed in (2, 3):
            g = gallai_tree_graph(seed, blocks=25, max_clique=2, cycle_lengths=())
            if g.max_degree() < 3:
                continue
            out = color_det_rulingforest(g)
            assert verify(g, out.colors, g.max_degree())

    def test_round_accounting(self, petersen):
        out = color_det_rulingforest(petersen)
        assert out.report.total_rounds == sum(r for _, r in out.report.phases)
        names = [name for name, _ in out.report.phases]
        assert names == [
            "symmetry_breaking",
            "ruling_set",
            "layering",
            "reverse_coloring",
            "base_completion",
        ]


class TestNetcomp:
    def test_petersen(self, petersen):
        out = color_det_netcomp(petersen)
        assert verify(petersen, out.colors, 3)

    def test_random_3_regular_512(self):
        g = regular_graph(512, 3, seed=77)
        out = color_det_netcomp(g, seed=1)
        assert verify(g, out.colors, 3)
        assert out.report.total_rounds > 0

    def test_c9_not_nice(self):
        with pytest.raises(NotNice):
            color_det_netcomp(cycle_graph(9))

    def test_deterministic(self):
        g = regular_graph(128, 4, seed=5)
        a = color_det_netcomp(g, seed=3)
        b = color_det_netcomp(g, seed=3)
        assert a.colors == b.colors
        assert json.dumps(a.report.to_json_dict()) == json.dumps(b.report.to_json_dict())
