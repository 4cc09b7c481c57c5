"""Deterministic max-degree coloring via ruling-set layering.

Both algorithms pick a well-separated base set, peel distance layers from it,
color the layers in reverse order as (deg+1) list instances, and finally
complete each base node independently with the token-walk completion (their
change balls are disjoint by the separation of the base set).  They differ in
how the base set is built: a greedy ruling set versus one derived from a
network decomposition, which also schedules the per-layer colorings.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

from .brooks import complete_one_uncolored, completion_radius
from .engine import RunReport
from .errors import LayerListViolation, NotNice
from .graph import Graph, is_nice
from .oracle import verify
from .primitives import (
    LayerDecomposition,
    RulingSetParams,
    layered_color,
    linial_coloring,
    network_decomposition,
    ruling_set,
    ruling_set_via_decomposition,
)


@dataclass(frozen=True)
class DetParams:
    R: int  # ruling distance: ceil(4 * ln n / ln(delta-1)) + 1
    z: int  # analytic layer-count bound (4R^2 ruling-forest, R+1 decomposition variant)
    completion_radius: int
    alpha: int  # actual ruling distance used: max(R, 2*completion_radius + 1)


def det_params(g: Graph, variant: str = "rulingforest") -> DetParams:
    delta = g.max_degree()
    if delta < 3:
        raise NotNice("deterministic coloring needs max degree >= 3")
    r = max(3, math.ceil(4.0 * math.log(max(2, g.n)) / math.log(delta - 1)) + 1)
    rb = completion_radius(g.n, delta)
    z = 4 * r * r if variant == "rulingforest" else r + 1
    return DetParams(R=r, z=z, completion_radius=rb, alpha=max(r, 2 * rb + 1))


@dataclass
class DetResult:
    colors: list[int]
    report: RunReport
    base_nodes: tuple[int, ...]
    completion_changes: list[frozenset[int]]
    layer_count: int


def _require_nice(g: Graph) -> None:
    if not is_nice(g):
        raise NotNice("graph is a path, a cycle, a clique, or disconnected")


def _finish_base(g: Graph, colors, base, report) -> list[frozenset[int]]:
    """Complete every base node; change balls must be pairwise disjoint."""
    changes = []
    for b in sorted(base):
        result = complete_one_uncolored(g, colors, node=b)
        colors[:] = result.colors
        changes.append(result.changed)
    for i in range(len(changes)):
        for j in range(i + 1, len(changes)):
            if changes[i] & changes[j]:
                raise AssertionError("completion change balls overlap")
    return changes


def color_det_rulingforest(g: Graph, seed: int = 0) -> DetResult:
    """Ruling-set layering: greedy (alpha, alpha-1) ruling set as the base."""
    _require_nice(g)
    t0 = time.perf_counter()
    delta = g.max_degree()
    params = det_params(g, "rulingforest")
    report = RunReport(algorithm="det-rulingforest", seed=seed, n=g.n, delta=delta)

    lin = linial_coloring(g)
    report.add_phase("symmetry_breaking", lin.rounds)

    ruling = ruling_set(g, RulingSetParams(alpha=params.alpha, beta=4, method="det-k"))
    report.add_phase("ruling_set", ruling.rounds)

    layers = LayerDecomposition.by_distance(g, ruling.members)
    z_measured = len(layers.layers) - 1
    assert z_measured <= params.z, "layer count exceeded the analytic bound"
    report.add_phase("layering", z_measured)

    colors, color_rounds = layered_color(
        g, layers.layers, delta, [None] * g.n, lin.colors, "deterministic", seed
    )
    report.add_phase("reverse_coloring", color_rounds)

    changes = _finish_base(g, colors, ruling.members, report)
    report.add_phase("base_completion", 2 * params.completion_radius + 1)

    report.valid = bool(verify(g, colors, delta))
    report.wall_ms = (time.perf_counter() - t0) * 1000.0
    return DetResult(
        colors=[c for c in colors],  # total by now
        report=report,
        base_nodes=ruling.members,
        completion_changes=changes,
        layer_count=z_measured,
    )


def _color_layer_by_clusters(g, layer, delta, colors, nd) -> None:
    """Greedy coloring of one layer scheduled (cluster color, cluster, id)."""
    full = set(range(1, delta + 1))
    order = sorted(layer, key=lambda v: (nd.color_of[v], nd.cluster_of[v], v))
    for v in order:
        used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
        colors[v] = min(full - used)


def color_det_netcomp(g: Graph, seed: int = 0) -> DetResult:
    """Network-decomposition variant: the decomposition both builds the base
    ruling set and schedules the per-layer colorings color class by color class."""
    _require_nice(g)
    t0 = time.perf_counter()
    delta = g.max_degree()
    params = det_params(g, "netcomp")
    report = RunReport(algorithm="det-netcomp", seed=seed, n=g.n, delta=delta)

    lin = linial_coloring(g)
    report.add_phase("symmetry_breaking", lin.rounds)

    ruling = ruling_set_via_decomposition(g, params.alpha, seed)
    report.add_phase("ruling_set_via_decomposition", ruling.rounds)

    layers = LayerDecomposition.by_distance(g, ruling.members)
    z_measured = len(layers.layers) - 1
    assert z_measured <= max(params.z, params.alpha + 1), "covering radius too large"
    report.add_phase("layering", z_measured)

    nd = network_decomposition(g, seed=seed)
    report.add_phase("schedule_decomposition", nd.rounds)

    colors: list[Optional[int]] = [None] * g.n
    color_rounds = 0
    lay_list = layers.layers
    for i in range(len(lay_list) - 1, 0, -1):
        layer = sorted(lay_list[i])
        if not layer:
            continue
        # validate the deg+1 lists up front, as in the generic path
        full = set(range(1, delta + 1))
        layer_set = set(layer)
        for v in layer:
            used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
            deg_in = sum(1 for u in g.adjacency[v] if u in layer_set)
            if len(full - used) < deg_in + 1:
                raise LayerListViolation(v, i, len(full - used), deg_in + 1)
        _color_layer_by_clusters(g, layer, delta, colors, nd)
        color_rounds += nd.achieved_colors * (nd.achieved_diameter + 2)
    report.add_phase("reverse_coloring", color_rounds)

    changes = _finish_base(g, colors, ruling.members, report)
    report.add_phase("base_completion", 2 * params.completion_radius + 1)

    report.valid = bool(verify(g, colors, delta))
    report.wall_ms = (time.perf_counter() - t0) * 1000.0
    return DetResult(
        colors=[c for c in colors],
        report=report,
        base_nodes=ruling.members,
        completion_changes=changes,
        layer_count=z_measured,
    )
