"""Randomized max-degree coloring: peel easy-to-recolor components, place slack
at random, remove everything that found slack nearby, color the sparse
leftovers, then add the peeled layers back in reverse order.

Two parameterizations: large maximum degree (>= 4, backoff 6) and small
constant maximum degree (3..cap, backoff 12, detection radius growing with
log log n).
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .engine import RunReport, node_stream
from .errors import ComponentTooLarge, NotNice, ParamUnsupported
from .graph import (
    Graph,
    ball_distances,
    connected_components,
    distances_from,
    find_dcc_within_radius,
    induced_subgraph,
    is_nice,
)
from .oracle import brute_force_list_coloring, verify
from .primitives import (
    LayerDecomposition,
    RulingSetParams,
    layered_color,
    linial_coloring,
    log_star as _log_star,
    ruling_set,
)

SMALL_DELTA_CAP = 6
SMALL_DELTA_MULTIPLIER = 6


@dataclass(frozen=True)
class MarkingParams:
    p: float  # selection probability
    b: int  # backoff distance between selected nodes
    r: int  # detection / happiness radius

    def __post_init__(self):
        if not (0.0 < self.p < 1.0):
            raise ParamUnsupported(f"selection probability {self.p} outside (0,1)")
        if self.b < 1 or self.r < 1:
            raise ParamUnsupported("backoff and radius must be positive")


@dataclass(frozen=True)
class RandParams:
    marking: MarkingParams
    beta: int  # ruling cover parameter on the virtual component graph (6r)
    s: int  # peel-layer bound: beta * (r + 1)
    component_cap: int  # leftover component size bound
    r_small: int  # detection radius inside leftover components

    @property
    def r(self) -> int:
        return self.marking.r

    @property
    def b(self) -> int:
        return self.marking.b


def large_delta_radius(delta: int) -> int:
    """Smallest even r with (delta-2)^(r/2) * delta^-12 / 12 >= (4r+32) ln delta."""
    if delta < 4:
        raise ParamUnsupported("large-delta radius needs max degree >= 4")
    r = 2
    lhs_base = math.log(delta - 2)
    while True:
        lhs = (r / 2.0) * lhs_base - 12.0 * math.log(delta) - math.log(12.0)
        rhs = math.log((4 * r + 32) * math.log(delta))
        if lhs >= rhs:
            return r
        r += 2
        if r > 2000:
            raise AssertionError("radius search diverged")


def small_delta_radius(n: int, multiplier: int = SMALL_DELTA_MULTIPLIER) -> int:
    """ceil(c * log2 log2 n), rounded up to a positive multiple of 6."""
    if n < 4:
        return 6
    raw = multiplier * math.log2(max(1.0, math.log2(n)))
    return max(6, 6 * math.ceil(raw / 6.0))


def make_params(
    delta: int,
    n: int,
    variant: str,
    overrides: Optional[dict] = None,
) -> RandParams:
    overrides = dict(overrides or {})
    if variant == "largeDelta":
        if delta < 4:
            raise ParamUnsupported("largeDelta variant needs max degree >= 4")
        b = int(overrides.pop("b", 6))
        r = int(overrides.pop("r", large_delta_radius(delta)))
    elif variant == "smallDelta":
        cap = int(overrides.pop("delta_cap", SMALL_DELTA_CAP))
        if not (3 <= delta <= cap):
            raise ParamUnsupported(
                f"smallDelta variant needs 3 <= max degree <= {cap}, got {delta}"
            )
        b = int(overrides.pop("b", 12))
        mult = int(overrides.pop("smalldelta_c", SMALL_DELTA_MULTIPLIER))
        r = int(overrides.pop("r", small_delta_radius(n, mult)))
    else:
        raise ParamUnsupported(f"unknown variant {variant!r}")
    p = float(overrides.pop("p", float(delta) ** (-b)))
    cap_n = int(overrides.pop("N", delta ** (2 * b) * max(1, math.ceil(math.log2(max(2, n))))))
    marking = MarkingParams(p=p, b=b, r=r)
    beta = 6 * r
    r_small = int(
        overrides.pop(
            "r_small",
            2 * math.ceil(math.log(max(2, cap_n)) / math.log(max(2, delta - 2))) + 1,
        )
    )
    if overrides:
        raise ParamUnsupported(f"unknown parameter overrides: {sorted(overrides)}")
    return RandParams(
        marking=marking,
        beta=beta,
        s=beta * (r + 1),
        component_cap=cap_n,
        r_small=r_small,
    )


# ---------------------------------------------------------------------------
# Phase: remove components that can be recolored regardless of the outside


def _two_core(g: Graph) -> set[int]:
    deg = [g.degree(v) for v in range(g.n)]
    dead = deque(v for v in range(g.n) if deg[v] <= 1)
    alive = [True] * g.n
    while dead:
        v = dead.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for u in g.adjacency[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] <= 1:
                    dead.append(u)
    return {v for v in range(g.n) if alive[v]}


def _harvest_candidates(g: Graph, r: int) -> dict[int, frozenset[int]]:
    """Cheap global sweep: fundamental cycles of one BFS forest, qualified as
    recolorable components; each covered node keeps its smallest candidate."""
    from .graph import _cycle_set_qualifies  # shared qualification rule

    parent = [-1] * g.n
    depth = [-1] * g.n
    for root in range(g.n):
        if depth[root] != -1:
            continue
        depth[root] = 0
        frontier = deque([root])
        while frontier:
            u = frontier.popleft()
            for w in g.adjacency[u]:
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    frontier.append(w)
    size_cap = 6 * r + 6
    best: dict[int, tuple[int, tuple, frozenset[int]]] = {}
    for u in range(g.n):
        for w in g.adjacency[u]:
            if u >= w or parent[u] == w or parent[w] == u:
                continue
            # climb to the common ancestor
            nodes = set()
            x, y = u, w
            while x != y:
                if depth[x] >= depth[y]:
                    nodes.add(x)
                    x = parent[x]
                else:
                    nodes.add(y)
                    y = parent[y]
                if len(nodes) > size_cap:
                    break
            else:
                nodes.add(x)
                fs = frozenset(nodes)
                if _cycle_set_qualifies(g, fs, r):
                    key = (len(fs), tuple(sorted(fs)))
                    for m in fs:
                        if m not in best or key < best[m][:2]:
                            best[m] = (key[0], key[1], fs)
    return {v: entry[2] for v, entry in best.items()}


@dataclass
class PhaseOne:
    layers: tuple[frozenset[int], ...]  # layers[0] is the base set (may be absent)
    remainder: frozenset[int]
    base_components: tuple[frozenset[int], ...]  # pairwise non-adjacent recolorable sets
    selected: dict[int, frozenset[int]]
    rounds: int


def remove_small_dccs(g: Graph, params: RandParams, seed: int = 0) -> PhaseOne:
    """Select one recolorable component per covered node, pick a well-separated
    subfamily, and peel distance layers around it.

    Postcondition: the remainder contains no node lying in a recolorable
    component of radius <= r (verified directly on the remainder, which is
    where the detection budget is spent)."""
    r = params.r
    core = _two_core(g)
    selected = _harvest_candidates(g, r) if core else {}
    rounds = r  # detection of the candidates is a radius-r gather
    delta = max(2, g.max_degree())
    while True:
        distinct = sorted(set(selected.values()), key=lambda s: (len(s), tuple(sorted(s))))
        # greedy maximal non-adjacent subfamily in canonical order: a (2, 1)
        # ruling set of the virtual component graph, built without
        # materializing it (components are adjacent iff they share a node or
        # an edge, i.e. iff one touches the closed neighborhood of the other)
        base_components = []
        blocked: set[int] = set()
        for s in distinct:
            if any(v in blocked for v in s):
                continue
            base_components.append(s)
            for v in s:
                blocked.add(v)
                blocked.update(g.adjacency[v])
        if base_components:
            # cost model: class-by-class joins on the virtual graph, whose
            # degree is at most delta^(2r+1); one virtual round costs r+1
            virtual_degree_term = math.ceil(delta ** ((4 * r + 2) / (6.0 * r)))
            vr_rounds = 4 * params.beta * virtual_degree_term + 2 * _log_star(g.n)
            rounds += vr_rounds * (r + 1)
        base = set()
        for s in base_components:
            base |= s
        if base:
            decomposition = LayerDecomposition.by_distance(g, base, limit=params.s)
            layers = decomposition.layers
        else:
            layers = ()
        covered = set()
        for lay in layers:
            covered |= lay
        remainder = frozenset(v for v in range(g.n) if v not in covered)
        grew = False
        for u in sorted(remainder & core):
            if u in selected:
                continue
            s = find_dcc_within_radius(g, u, r)
            if s is not None:
                selected[u] = s
                grew = True
        if not grew:
            rounds += max(0, len(layers) - 1)
            return PhaseOne(
                layers=layers,
                remainder=remainder,
                base_components=tuple(base_components),
                selected=selected,
                rounds=rounds,
            )


# ---------------------------------------------------------------------------
# Phase: random slack placement


@dataclass
class MarkingOutcome:
    tnodes: frozenset[int]
    marked: frozenset[int]
    picks: dict[int, tuple[int, int]]
    status: dict[int, str]  # tnode | marked | plain
    raw_selected: frozenset[int] = frozenset()  # before backoff, telemetry only


def marking_process(
    h: Graph,
    params: MarkingParams,
    seed: int = 0,
    labels: Optional[Sequence[int]] = None,
) -> MarkingOutcome:
    """Select nodes with probability p, drop any two selected within distance b
    of each other, and let each survivor color two non-adjacent neighbors with
    color one (survivors without such a pair drop out too)."""
    if labels is None:
        labels = list(range(h.n))
    selected = [
        v
        for v in range(h.n)
        if node_stream(seed, labels[v], 0, b"select").random() < params.p
    ]
    crowded = set()
    sel_set = set(selected)
    for v in selected:
        dist = ball_distances(h, v, params.b)
        if any(u in sel_set and u != v for u in dist):
            crowded.add(v)
    picks: dict[int, tuple[int, int]] = {}
    for v in selected:
        if v in crowded:
            continue
        nbrs = h.adjacency[v]
        pairs = [
            (a, b)
            for i, a in enumerate(nbrs)
            for b in nbrs[i + 1:]
            if not h.has_edge(a, b)
        ]
        if not pairs:
            continue  # a single-clique neighborhood cannot host slack
        rng = node_stream(seed, labels[v], 1, b"pick")
        picks[v] = pairs[rng.randrange(len(pairs))]
    marked = set()
    for a, b in picks.values():
        marked.add(a)
        marked.add(b)
    tnodes = frozenset(picks)
    for t in tnodes:
        a, b = picks[t]
        assert not h.has_edge(a, b)
    for m in sorted(marked):
        assert not any(u in marked for u in h.adjacency[m]), "adjacent marked nodes"
    assert not (marked & tnodes)
    status = {}
    for v in range(h.n):
        status[v] = "tnode" if v in tnodes else ("marked" if v in marked else "plain")
    return MarkingOutcome(
        tnodes=tnodes,
        marked=frozenset(marked),
        picks=picks,
        status=status,
        raw_selected=frozenset(selected),
    )


# ---------------------------------------------------------------------------
# Phase: assign nodes that found slack, peel them into layers


@dataclass
class HappyLayers:
    layers: tuple[frozenset[int], ...]  # index = assigned distance, 0..2r
    leftover: frozenset[int]
    assignment: dict[int, tuple[int, int]]  # node -> (distance, anchor)
    unmarked: frozenset[int]  # marks wiped by the boundary rule
    demoted: frozenset[int]  # slack holders that lost their marks
    still_marked: frozenset[int]


def build_happy_layers(
    h: Graph,
    outcome: MarkingOutcome,
    params: MarkingParams,
    delta: Optional[int] = None,
) -> HappyLayers:
    """Anchor every node that has an uncolored path (length <= r) to a slack
    holder or to the low-degree boundary; chase a second stage (length <= 2r)
    through slack holders the boundary rule demoted.  Unreached nodes are the
    leftover."""
    if delta is None:
        delta = h.max_degree()
    r = params.r
    boundary = {v for v in range(h.n) if h.degree(v) < delta}
    dist_bd = distances_from(h, boundary, limit=r)
    unmarked = frozenset(m for m in outcome.marked if m in dist_bd)
    still_marked = frozenset(outcome.marked - unmarked)
    t_current = {
        t
        for t, (a, b) in outcome.picks.items()
        if a not in unmarked and b not in unmarked
    }
    demoted = frozenset(outcome.tnodes - t_current)
    uncolored = set(range(h.n)) - still_marked

    anchors = sorted(t_current | boundary)
    dist_a: dict[int, int] = {}
    anchor: dict[int, int] = {}
    frontier = deque()
    for a in anchors:
        dist_a[a] = 0
        anchor[a] = a
        frontier.append(a)
    while frontier:
        u = frontier.popleft()
        if dist_a[u] == r:
            continue
        for w in sorted(h.adjacency[u]):
            if w in uncolored and w not in dist_a:
                dist_a[w] = dist_a[u] + 1
                frontier.append(w)
    for u in sorted(dist_a, key=lambda x: (dist_a[x], x)):
        if dist_a[u] > 0:
            anchor[u] = min(
                anchor[w]
                for w in h.adjacency[u]
                if w in dist_a and dist_a[w] == dist_a[u] - 1
            )

    assignment = {u: (dist_a[u], anchor[u]) for u in dist_a}

    # second stage: ride through demoted slack holders that found the boundary
    sources = sorted(d for d in demoted if d in assignment)
    reach: dict[int, tuple[int, int, int]] = {}  # node -> (total, anchor, hops)
    buckets: dict[int, list[int]] = {}
    for w in sources:
        base, anc = assignment[w]
        reach[w] = (base, anc, 0)
        buckets.setdefault(base, []).append(w)
    d = 0
    max_total = 2 * r
    stage_b_assigned: dict[int, tuple[int, int]] = {}
    while buckets:
        d = min(buckets)
        for u in sorted(buckets.pop(d)):
            total, anc, hops = reach[u]
            if total != d or hops >= r:
                continue
            for w in sorted(h.adjacency[u]):
                if w not in uncolored:
                    continue
                cand = (total + 1, anc, hops + 1)
                if cand[0] > max_total:
                    continue
                if w not in reach or (cand[0], cand[1]) < (reach[w][0], reach[w][1]):
                    reach[w] = cand
                    buckets.setdefault(cand[0], []).append(w)
                    if w not in assignment:
                        stage_b_assigned[w] = (cand[0], cand[1])
    for w, (total, anc) in sorted(stage_b_assigned.items()):
        assignment[w] = (total, anc)

    # a third stage must never be needed: demoted holders first reached in
    # stage two do not strand further unassigned nodes within radius r
    third_sources = sorted(d for d in demoted if d in stage_b_assigned)
    if third_sources:
        spread = distances_from(h, third_sources, limit=r, within=uncolored)
        stranded = [v for v in spread if v not in assignment]
        assert not stranded, f"nodes {stranded[:5]} would need a third assignment stage"

    depth = max((dist for dist, _ in assignment.values()), default=0)
    layers = [set() for _ in range(depth + 1)]
    for v, (dist, _) in assignment.items():
        layers[dist].add(v)
    leftover = frozenset(v for v in uncolored if v not in assignment)
    return HappyLayers(
        layers=tuple(frozenset(l) for l in layers),
        leftover=leftover,
        assignment=assignment,
        unmarked=unmarked,
        demoted=demoted,
        still_marked=still_marked,
    )


# ---------------------------------------------------------------------------
# Phase: color the leftover components


@dataclass
class ComponentInfo:
    sizes: list[int]
    max_virtual_degree: int
    layer_rounds: int


def color_small_components(
    g: Graph,
    leftover: set[int],
    colors: list[Optional[int]],
    delta: int,
    params: RandParams,
    base_colors: Sequence[int],
    seed: int = 0,
) -> ComponentInfo:
    """Color each leftover component, respecting color-one neighbors outside it.

    Free nodes (low degree, or an outside neighbor not colored one) and small
    recolorable subgraphs feed a per-component ruling set; layers around it
    are colored in reverse and the base is finished by brute force."""
    comps = connected_components(g, within=set(leftover))
    info = ComponentInfo(sizes=[], max_virtual_degree=0, layer_rounds=0)
    for comp in comps:
        if len(comp) > params.component_cap:
            raise ComponentTooLarge(len(comp), params.component_cap, comp[0])
        info.sizes.append(len(comp))
        comp_set = set(comp)
        free = [
            v
            for v in comp
            if g.degree(v) < delta
            or any(u not in comp_set and colors[u] != 1 for u in g.adjacency[v])
        ]
        sub, to_sub, to_orig = induced_subgraph(g, comp)
        r_small = params.r_small
        units: list[frozenset[int]] = [frozenset([v]) for v in sorted(free)]
        seen_sets = set(units)
        for v in comp:
            s = find_dcc_within_radius(sub, to_sub[v], r_small)
            if s is not None:
                fs = frozenset(to_orig[i] for i in s)
                if fs not in seen_sets:
                    seen_sets.add(fs)
                    units.append(fs)
        if not units:
            raise AssertionError(
                f"leftover component at node {comp[0]} has no free node and no "
                "recolorable subgraph; it cannot be colored independently"
            )
        units.sort(key=lambda s: tuple(sorted(s)))
        membership: dict[int, list[int]] = {}
        for i, s in enumerate(units):
            for v in s:
                membership.setdefault(v, []).append(i)
        vedges = set()
        for v, owners in membership.items():
            for i in owners:
                for j in owners:
                    if i < j:
                        vedges.add((i, j))
        for v in comp:
            for u in g.adjacency[v]:
                if u in comp_set:
                    for i in membership.get(v, ()):
                        for j in membership.get(u, ()):
                            if i != j:
                                vedges.add((min(i, j), max(i, j)))
        virtual = Graph(len(units), sorted(vedges))
        info.max_virtual_degree = max(info.max_virtual_degree, virtual.max_degree())
        gamma = max(
            2,
            math.ceil(
                4.0
                * math.log(max(2, virtual.max_degree()))
                / math.log(max(2, delta))
            ),
        )
        vr = ruling_set(virtual, RulingSetParams(2, gamma, "det-2beta"), seed)
        base = set()
        for i in vr.members:
            base |= units[i]
        decomposition = LayerDecomposition.by_distance(g, base, within=comp_set)
        bound = gamma * (r_small + 1) + r_small
        depth = len(decomposition.layers) - 1
        assert depth <= bound, (
            f"component layers reach {depth}, beyond the bound {bound}"
        )
        assert decomposition.covered == frozenset(comp_set), "component not fully layered"
        layered, rounds = layered_color(
            g, decomposition.layers, delta, colors, base_colors, "deterministic", seed
        )
        for v in comp:
            if layered[v] is not None:
                colors[v] = layered[v]
        info.layer_rounds = max(info.layer_rounds, rounds)
        full = set(range(1, delta + 1))
        for i in sorted(vr.members):
            unit = units[i]
            if len(unit) == 1:
                (v,) = unit
                used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
                avail = full - used
                assert avail, f"free node {v} had no free color"
                colors[v] = min(avail)
            else:
                lists = {}
                for w in unit:
                    used = {
                        colors[u]
                        for u in g.adjacency[w]
                        if u not in unit and colors[u] is not None
                    }
                    lists[w] = full - used
                for w, c in brute_force_list_coloring(g, sorted(unit), lists).items():
                    colors[w] = c
    return info


# ---------------------------------------------------------------------------
# The full pipeline


@dataclass
class RandResult:
    colors: list[int]
    report: RunReport
    stats: dict


def run_randomized(
    g: Graph,
    variant: str,
    seed: int,
    overrides: Optional[dict] = None,
    max_rounds: Optional[int] = None,
) -> RandResult:
    """Full randomized pipeline; returns a proper coloring with palette
    {1..max degree}, the per-phase round report, and shattering statistics."""
    if not is_nice(g):
        raise NotNice("graph is a path, a cycle, a clique, or disconnected")
    t0 = time.perf_counter()
    delta = g.max_degree()
    params = make_params(delta, g.n, variant, overrides)
    algo = "rand-large" if variant == "largeDelta" else "rand-small"
    report = RunReport(algorithm=algo, seed=seed, n=g.n, delta=delta)

    lin = linial_coloring(g)
    report.add_phase("symmetry_breaking", lin.rounds)

    ph1 = remove_small_dccs(g, params, seed)
    report.add_phase("peel_recolorable", ph1.rounds)

    h_nodes = sorted(ph1.remainder)
    h, to_sub, to_orig = induced_subgraph(g, h_nodes)
    outcome = marking_process(h, params.marking, seed, labels=to_orig)
    report.add_phase("slack_placement", params.b + 2)

    happy = build_happy_layers(h, outcome, params.marking, delta)
    report.add_phase("slack_assignment", 3 * params.r + 2)

    colors: list[Optional[int]] = [None] * g.n
    for m in happy.still_marked:
        colors[to_orig[m]] = 1

    leftover = {to_orig[v] for v in happy.leftover}
    comp_info = color_small_components(
        g, leftover, colors, delta, params, lin.colors, seed
    )
    report.add_phase(
        "leftover_components",
        params.r_small + comp_info.layer_rounds + params.r_small,
    )

    c_layers = [set()] + [
        {to_orig[v] for v in layer} for layer in happy.layers
    ]
    colors, c_rounds = layered_color(
        g, c_layers, delta, colors, lin.colors, "deterministic", seed
    )
    report.add_phase("color_slack_layers", c_rounds)

    if ph1.layers:
        colors, b_rounds = layered_color(
            g, ph1.layers, delta, colors, lin.colors, "deterministic", seed
        )
    else:
        b_rounds = 0
    report.add_phase("color_peel_layers", b_rounds)

    full = set(range(1, delta + 1))
    for unit in ph1.base_components:
        lists = {}
        for w in unit:
            used = {
                colors[u]
                for u in g.adjacency[w]
                if u not in unit and colors[u] is not None
            }
            lists[w] = full - used
        for w, c in brute_force_list_coloring(g, sorted(unit), lists).items():
            colors[w] = c
    report.add_phase("color_base_components", params.r)

    verdict = verify(g, colors, delta)
    report.valid = bool(verdict)
    if not verdict:
        raise AssertionError(f"pipeline produced an invalid coloring: {verdict.message}")
    report.wall_ms = (time.perf_counter() - t0) * 1000.0

    comp_hist: dict[int, int] = {}
    for size in comp_info.sizes:
        comp_hist[size] = comp_hist.get(size, 0) + 1
    stats = {
        "seed": seed,
        "n": g.n,
        "delta": delta,
        "variant": variant,
        "r": params.r,
        "b": params.b,
        "h_size": h.n,
        "leftover_size": len(leftover),
        "unhappy_fraction": (len(leftover) / h.n) if h.n else 0.0,
        "max_component": max(comp_info.sizes, default=0),
        "component_histogram": {str(k): v for k, v in sorted(comp_hist.items())},
    }
    return RandResult(colors=[c for c in colors], report=report, stats=stats)


def shattering_stats(
    h: Graph,
    params: MarkingParams,
    seeds: Sequence[int],
    delta: Optional[int] = None,
    variant: str = "largeDelta",
) -> list[dict]:
    """Monte-Carlo measurement of the slack placement on a graph certified free
    of small recolorable components: per-seed unhappy fraction and leftover
    component histogram."""
    if delta is None:
        delta = h.max_degree()
    out = []
    for seed in seeds:
        outcome = marking_process(h, params, seed)
        happy = build_happy_layers(h, outcome, params, delta)
        comps = connected_components(h, within=set(happy.leftover))
        hist: dict[str, int] = {}
        for comp in comps:
            key = str(len(comp))
            hist[key] = hist.get(key, 0) + 1
        out.append(
            {
                "seed": seed,
                "n": h.n,
                "delta": delta,
                "variant": variant,
                "r": params.r,
                "b": params.b,
                "unhappy_fraction": (len(happy.leftover) / h.n) if h.n else 0.0,
                "max_component": max((len(c) for c in comps), default=0),
                "component_histogram": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
            }
        )
    return out
