import json

import pytest

from deltacolor import RoundLimitExceeded, RunReport, collect_ball, run_sync, verify
from deltacolor.engine import NodeProgram, node_stream
from deltacolor.primitives import LinialProgram
from deltacolor.workbench import cycle_graph, path_graph, petersen_graph


class OutputOwnId(NodeProgram):
    def init(self, view, rng):
        return None

    def step(self, state, view, t, inbox, rng):
        return None, {}, view.node


class FloodMax(NodeProgram):
    """Flood the largest id; decide after n-1 exchanges."""

    def init(self, view, rng):
        return view.node

    def step(self, state, view, t, inbox, rng):
        best = max([state] + list(inbox.values()))
        out = best if t >= view.n - 1 else None
        return best, {u: best for u in view.neighbors}, out


class TwoHopFingerprint(NodeProgram):
    """Output depends on own randomness and everything heard in two rounds."""

    def init(self, view, rng):
        return (view.node, rng.randrange(1 << 30))

    def step(self, state, view, t, inbox, rng):
        heard = tuple(sorted(inbox.items()))
        new_state = (state, heard, rng.randrange(1 << 30))
        out = hash(new_state) if t == 2 else None
        return new_state, {u: new_state for u in view.neighbors}, out


class NeverDecides(NodeProgram):
    def init(self, view, rng):
        return None

    def step(self, state, view, t, inbox, rng):
        return None, {}, None


class TestRunSync:
    def test_zero_round_program(self):
        g = path_graph(4)
        res = run_sync(g, OutputOwnId(), seed=1, max_rounds=5)
        assert res.rounds == 0
        assert res.outputs == {v: v for v in range(4)}

    def test_flood_max_takes_diameter_rounds(self):
        g = path_graph(5)
        res = run_sync(g, FloodMax(), seed=1, max_rounds=10)
        assert res.rounds == 4
        assert all(out == 4 for out in res.outputs.values())

    def test_linial_program_proper_and_deterministic(self):
        g = petersen_graph()
        prog = LinialProgram(id_space=g.n, delta=3)
        res1 = run_sync(g, prog, seed=7, max_rounds=64)
        res2 = run_sync(g, prog, seed=7, max_rounds=64)
        assert res1.outputs == res2.outputs and res1.rounds == res2.rounds
        colors = [res1.outputs[v] for v in range(g.n)]
        assert verify(g, colors, 5 * 9)

    def test_round_limit(self):
        with pytest.raises(RoundLimitExceeded):
            run_sync(path_graph(3), NeverDecides(), seed=1, max_rounds=3)

    def test_determinism_across_runs(self):
        g = cycle_graph(9)
        a = run_sync(g, TwoHopFingerprint(), seed=42, max_rounds=5)
        b = run_sync(g, TwoHopFingerprint(), seed=42, max_rounds=5)
        assert a.outputs == b.outputs
        c = run_sync(g, TwoHopFingerprint(), seed=43, max_rounds=5)
        assert c.outputs != a.outputs

    def test_locality_soundness(self):
        # a node's output after R rounds only depends on its R-ball: rerun on
        # the collected ball with original labels and compare
        g = petersen_graph()
        full = run_sync(g, TwoHopFingerprint(), seed=11, max_rounds=5)
        for v in (0, 3, 7):
            ball = collect_ball(g, v, 2)
            sub = run_sync(
                ball.graph,
                TwoHopFingerprint(),
                seed=11,
                max_rounds=5,
                labels=ball.to_orig,
                delta=g.max_degree(),
            )
            assert sub.outputs[v] == full.outputs[v]


class TestCollectBall:
    def test_radius_zero(self):
        b = collect_ball(path_graph(5), 2, 0)
        assert b.graph.n == 1 and b.graph.m == 0

    def test_c6_radius2_is_path5(self):
        b = collect_ball(cycle_graph(6), 0, 2)
        assert b.graph.n == 5 and b.graph.m == 4
        assert max(len(b.graph.adjacency[v]) for v in range(5)) == 2

    def test_petersen_radius1_is_star(self):
        # girth 5: the neighbors of any node are pairwise non-adjacent
        b = collect_ball(petersen_graph(), 0, 1)
        assert b.graph.n == 4 and b.graph.m == 3
        center_deg = len(b.graph.adjacency[b.center])
        assert center_deg == 3

    def test_translation_tables_invert(self):
        b = collect_ball(petersen_graph(), 4, 2)
        for orig, sub in b.to_sub.items():
            assert b.to_orig[sub] == orig


class TestRunReport:
    def test_total_is_sum_of_phases(self):
        rep = RunReport(algorithm="x", seed=1, n=5, delta=3)
        rep.add_phase("a", 3)
        rep.add_phase("b", 4)
        rep.add_phase("c", 0)
        assert rep.total_rounds == 7

    def test_json_round_trip_and_schema(self):
        rep = RunReport(algorithm="x", seed=9, n=5, delta=3)
        rep.add_phase("a", 3)
        rep.valid = True
        rep.wall_ms = 123.4
        data = json.loads(rep.to_json())
        assert data["algorithm"] == "x" and data["seed"] == 9
        assert data["phases"] == {"a": 3}
        assert data["total_rounds"] == 3 and data["valid"] is True
        assert data["wall_ms"] == 0  # zeroed for byte-stable files
        assert set(data) == {
            "algorithm", "seed", "n", "delta", "phases", "total_rounds", "valid", "wall_ms",
        }

    def test_serialization_byte_stable(self):
        def build():
            rep = RunReport(algorithm="y", seed=2, n=3, delta=2)
            rep.add_phase("p", 1)
            rep.wall_ms = 0.5
            return rep.to_json()

        assert build() == build()


class TestNodeStream:
    def test_streams_differ_by_node_and_round(self):
        a = node_stream(1, 0, 0).random()
        assert a == node_stream(1, 0, 0).random()
        assert a != node_stream(1, 1, 0).random()
        assert a != node_stream(1, 0, 1).random()
        assert a != node_stream(2, 0, 0).random()
