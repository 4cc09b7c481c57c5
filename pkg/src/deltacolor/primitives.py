"""Shared distributed subroutines: symmetry-breaking coloring, ruling sets,
(deg+1) list coloring, layer peeling, and a simple network decomposition.

All subroutines are deterministic sequential simulations of synchronous
node programs; each returns the number of rounds the synchronous schedule
would take (the documented cost model), which feeds run reports.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .engine import NodeProgram, NodeView, node_stream
from .errors import (
    LayerListViolation,
    ListTooSmall,
    ParamUnsupported,
    RoundLimitExceeded,
)
from .graph import Graph, distances_from


def log_star(n: int) -> int:
    """Iterated base-2 logarithm (number of log applications to reach <= 1)."""
    count = 0
    x = float(n)
    while x > 1.0:
        x = math.log2(x)
        count += 1
    return count


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _next_prime(p: int) -> int:
    while not _is_prime(p):
        p += 1
    return p


# ---------------------------------------------------------------------------
# Symmetry-breaking coloring (iterated polynomial reduction + class elimination)


def _reduction_params(m: int, delta: int) -> tuple[int, int]:
    """Smallest prime q with q^k >= m and q > delta*(k-1) for k = ceil(log_q m)."""
    q = max(2, delta + 1)
    while True:
        q = _next_prime(q)
        k = 1
        power = q
        while power < m:
            power *= q
            k += 1
        if q > delta * (k - 1):
            return q, k
        q += 1


def _reduction_schedule(m0: int, delta: int) -> tuple[list[tuple[int, int]], int]:
    """(q, k) steps shrinking an m0-coloring until no further progress."""
    steps = []
    cur = m0
    target = max(1, 5 * delta * delta)
    while cur > target:
        q, k = _reduction_params(cur, delta)
        if q * q >= cur:
            break
        steps.append((q, k))
        cur = q * q
    return steps, cur


def _reduce_color(color: int, neighbor_colors: Iterable[int], q: int, k: int) -> int:
    """One polynomial reduction step; colors are 0-indexed, result < q*q."""
    digits = []
    c = color
    for _ in range(k):
        digits.append(c % q)
        c //= q
    nbr_polys = []
    for nc in neighbor_colors:
        nd = []
        c = nc
        for _ in range(k):
            nd.append(c % q)
            c //= q
        nbr_polys.append(nd)

    def evaluate(coeffs, x):
        acc = 0
        for a in reversed(coeffs):
            acc = (acc * x + a) % q
        return acc

    for x in range(q):
        mine = evaluate(digits, x)
        if all(evaluate(nd, x) != mine for nd in nbr_polys):
            return x * q + mine
    raise AssertionError("no safe evaluation point; reduction parameters broken")


@dataclass(frozen=True)
class SymmetryColoring:
    """Proper coloring with a small palette, used only to schedule other steps."""

    colors: tuple[int, ...]  # 1-indexed
    palette: int  # schedule length: colors are within 1..palette
    rounds: int
    iterations: int


def linial_coloring(g: Graph, *, id_space: Optional[int] = None) -> SymmetryColoring:
    """Proper coloring with at most 5*delta^2 colors in O(log* n) exchanges.

    Iterates the polynomial set-system reduction from the id coloring, then
    retires the remaining classes above the target one exchange at a time.
    """
    delta = g.max_degree()
    target = max(1, 5 * delta * delta)
    m0 = max(g.n, id_space or 0)
    if g.n == 0:
        return SymmetryColoring(colors=(), palette=target, rounds=0, iterations=0)
    colors = list(range(g.n))
    steps, cur = _reduction_schedule(m0, delta)
    for q, k in steps:
        colors = [
            _reduce_color(colors[v], (colors[u] for u in g.adjacency[v]), q, k)
            for v in range(g.n)
        ]
    elim_rounds = max(0, cur - target)
    for c in range(cur - 1, target - 1, -1):
        for v in range(g.n):
            if colors[v] == c:
                used = {colors[u] for u in g.adjacency[v]}
                colors[v] = next(x for x in range(target) if x not in used)
    assert all(colors[v] != colors[u] for v in range(g.n) for u in g.adjacency[v])
    assert all(0 <= c < target for c in colors)
    return SymmetryColoring(
        colors=tuple(c + 1 for c in colors),
        palette=target,
        rounds=len(steps) + elim_rounds,
        iterations=len(steps),
    )


class LinialProgram(NodeProgram):
    """Engine-run twin of linial_coloring; identical colors and round count."""

    context = b"linial"

    def __init__(self, id_space: int, delta: int):
        self.delta = delta
        self.target = max(1, 5 * delta * delta)
        self.steps, self.fixed_point = _reduction_schedule(id_space, delta)
        self.elim = max(0, self.fixed_point - self.target)

    def init(self, view: NodeView, rng) -> int:
        return view.node  # initial color = own id

    def step(self, state, view, round_index, inbox, rng):
        color = state
        if 1 <= round_index <= len(self.steps):
            q, k = self.steps[round_index - 1]
            color = _reduce_color(color, inbox.values(), q, k)
        elif round_index > len(self.steps):
            j = round_index - len(self.steps)
            if j <= self.elim:
                retiring = self.fixed_point - j
                if color == retiring:
                    used = set(inbox.values())
                    color = next(x for x in range(self.target) if x not in used)
        done = round_index >= len(self.steps) + self.elim
        out = color + 1 if done else None
        outbox = {u: color for u in view.neighbors}
        return color, outbox, out


# ---------------------------------------------------------------------------
# Ruling sets


@dataclass(frozen=True)
class RulingSetParams:
    alpha: int  # minimum pairwise distance between members
    beta: int  # covering distance the caller is content with
    method: str = "det-2beta"  # det-2beta | det-k | rand-loglog

    def __post_init__(self):
        if self.alpha < 2 or self.beta < 1:
            raise ParamUnsupported("need alpha >= 2 and beta >= 1")


@dataclass(frozen=True)
class RulingSet:
    members: tuple[int, ...]
    alpha: int
    measured_beta: int
    rounds: int
    method: str


def _verify_ruling(g: Graph, members: Sequence[int], alpha: int) -> int:
    """Exact integer checks: pairwise distance >= alpha; returns covering radius."""
    mset = set(members)
    for v in members:
        dist = {v: 0}
        frontier = deque([v])
        while frontier:
            u = frontier.popleft()
            if dist[u] == alpha - 1:
                continue
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    frontier.append(w)
                    if w in mset:
                        raise AssertionError(
                            f"ruling members {v} and {w} at distance {dist[w]} < {alpha}"
                        )
    if not members:
        return 0
    dist = distances_from(g, members)
    if len(dist) != g.n:
        raise AssertionError("ruling set does not cover the graph")
    return max(dist.values())


def _greedy_ruling_by_id(g: Graph, alpha: int) -> list[int]:
    """Ascending-id greedy with an incremental distance-to-members array.

    Sequential equivalent of running the class-by-class join schedule on the
    (alpha-1)-th power graph; guarantees pairwise >= alpha and covering <= alpha-1.
    """
    inf = g.n + alpha
    dist_m = [inf] * g.n
    members = []
    for v in range(g.n):
        if dist_m[v] < alpha:
            continue
        members.append(v)
        dist_m[v] = 0
        frontier = deque([v])
        while frontier:
            u = frontier.popleft()
            d = dist_m[u]
            if d == alpha - 1:
                continue
            for w in g.adjacency[u]:
                if dist_m[w] > d + 1:
                    dist_m[w] = d + 1
                    frontier.append(w)
    return members


def ruling_set(g: Graph, params: RulingSetParams, seed: int = 0) -> RulingSet:
    """Node set with pairwise distance >= alpha covering everything within the
    measured radius (always <= alpha-1 for the deterministic methods)."""
    if g.n == 0:
        return RulingSet((), params.alpha, 0, 0, params.method)
    if params.method == "det-2beta":
        if params.alpha != 2:
            raise ParamUnsupported("det-2beta only implements alpha=2")
        lin = linial_coloring(g)
        members = []
        blocked = [False] * g.n
        for c in range(1, lin.palette + 1):
            for v in range(g.n):
                if lin.colors[v] == c and not blocked[v]:
                    members.append(v)
                    blocked[v] = True
                    for u in g.adjacency[v]:
                        blocked[u] = True
        rounds = lin.rounds + lin.palette
    elif params.method == "det-k":
        members = _greedy_ruling_by_id(g, params.alpha)
        # cost model: class-by-class joins on the power graph (alpha^2 * beta *
        # delta^(2/beta) + alpha * log* n), not the sequential shortcut above
        delta = max(2, g.max_degree())
        rounds = (
            params.alpha ** 2 * params.beta * math.ceil(delta ** (2.0 / params.beta))
            + params.alpha * log_star(g.n)
        )
    elif params.method == "rand-loglog":
        if params.alpha != 2:
            raise ParamUnsupported("rand-loglog only implements alpha=2")
        members, iters = _luby_mis(g, seed)
        rounds = 2 * iters
    else:
        raise ParamUnsupported(f"unknown ruling set method {params.method!r}")
    members = sorted(members)
    measured = _verify_ruling(g, members, params.alpha)
    return RulingSet(tuple(members), params.alpha, measured, rounds, params.method)


def _luby_mis(g: Graph, seed: int) -> tuple[list[int], int]:
    active = set(range(g.n))
    members = []
    iteration = 0
    while active:
        iteration += 1
        prio = {
            v: (node_stream(seed, v, iteration, b"luby").random(), v) for v in active
        }
        joined = [
            v
            for v in sorted(active)
            if all(prio[v] < prio[u] for u in g.adjacency[v] if u in active)
        ]
        for v in joined:
            members.append(v)
            active.discard(v)
            for u in g.adjacency[v]:
                active.discard(u)
        if iteration > 64 * (g.n + 2):
            raise RoundLimitExceeded("Luby selection failed to converge")
    return members, iteration


# ---------------------------------------------------------------------------
# (deg+1) list coloring


def list_color(
    g: Graph,
    lists: Sequence[set[int]],
    base_colors: Sequence[int],
    mode: str = "deterministic",
    seed: int = 0,
    *,
    labels: Optional[Sequence[int]] = None,
    max_rounds: Optional[int] = None,
) -> tuple[list[int], int]:
    """Proper coloring with c(v) in lists[v]; lists must satisfy |L(v)| >= deg(v)+1."""
    if labels is None:
        labels = list(range(g.n))
    for v in range(g.n):
        if len(lists[v]) < g.degree(v) + 1:
            raise ListTooSmall(labels[v], len(lists[v]), g.degree(v) + 1)
    colors: list[Optional[int]] = [None] * g.n
    if mode == "deterministic":
        palette = max(base_colors, default=0)
        by_class: dict[int, list[int]] = {}
        for v in range(g.n):
            by_class.setdefault(base_colors[v], []).append(v)
        for c in sorted(by_class):
            for v in by_class[c]:
                used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
                colors[v] = min(lists[v] - used)
        rounds = palette
    elif mode == "randomized":
        if max_rounds is None:
            max_rounds = 40 + 20 * math.ceil(math.log2(g.n + 2))
        uncolored = set(range(g.n))
        rounds = 0
        for t in range(1, max_rounds + 1):
            if not uncolored:
                break
            rounds += 2  # proposal exchange + decision broadcast
            proposals = {}
            for v in sorted(uncolored):
                used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
                avail = sorted(lists[v] - used)
                proposals[v] = node_stream(seed, labels[v], t, b"trialcolor").choice(avail)
            for v, p in proposals.items():
                if all(proposals.get(u) != p for u in g.adjacency[v]):
                    colors[v] = p
            uncolored = {v for v in uncolored if colors[v] is None}
        if uncolored:
            raise RoundLimitExceeded(
                f"randomized list coloring undecided after {max_rounds} iterations"
            )
    else:
        raise ParamUnsupported(f"unknown list coloring mode {mode!r}")
    assert all(c is not None for c in colors)
    return colors, rounds  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Layer decompositions and reverse-order layer coloring


@dataclass(frozen=True)
class LayerDecomposition:
    """Base set plus distance layers; layers[i] are the nodes at layer index i."""

    layers: tuple[frozenset[int], ...]

    @property
    def covered(self) -> frozenset[int]:
        out = set()
        for lay in self.layers:
            out |= lay
        return frozenset(out)

    @staticmethod
    def by_distance(
        g: Graph,
        base: Iterable[int],
        limit: Optional[int] = None,
        within: Optional[set[int]] = None,
    ) -> "LayerDecomposition":
        base = set(base)
        dist = distances_from(g, base, limit=limit, within=within)
        depth = max(dist.values(), default=0)
        layers = [set() for _ in range(depth + 1)]
        for v, d in dist.items():
            layers[d].add(v)
        return LayerDecomposition(tuple(frozenset(l) for l in layers))

    def validate_distance_layers(self, g: Graph) -> None:
        """Strict invariant for true distance layers: each layer-i node has a
        neighbor in layer i-1 and none in layers < i-1."""
        index = {v: i for i, lay in enumerate(self.layers) for v in lay}
        for i, lay in enumerate(self.layers):
            if i == 0:
                continue
            for v in lay:
                js = [index[u] for u in g.adjacency[v] if u in index]
                if not any(j == i - 1 for j in js):
                    raise AssertionError(f"layer {i} node {v} has no layer-{i-1} neighbor")
                if any(j < i - 1 for j in js):
                    raise AssertionError(f"layer {i} node {v} touches a layer below {i-1}")


def layered_color(
    g: Graph,
    layers: Sequence[Iterable[int]],
    delta: int,
    fixed: Sequence[Optional[int]],
    base_colors: Sequence[int],
    mode: str = "deterministic",
    seed: int = 0,
) -> tuple[list[Optional[int]], int]:
    """Color layers s..1 in reverse order as (deg+1) list instances; layer 0 is
    left for the caller.  Never recolors a node of `fixed`.

    Raises LayerListViolation if any node's available list falls below its
    induced degree + 1 (a decomposition bug, not a coloring failure).
    """
    colors: list[Optional[int]] = list(fixed)
    rounds = 0
    full = set(range(1, delta + 1))
    for i in range(len(layers) - 1, 0, -1):
        layer = sorted(set(layers[i]))
        if not layer:
            continue
        layer_set = set(layer)
        lists = []
        for v in layer:
            if colors[v] is not None:
                raise AssertionError(f"layer {i} node {v} already colored")
            used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
            avail = full - used
            deg_in = sum(1 for u in g.adjacency[v] if u in layer_set)
            if len(avail) < deg_in + 1:
                raise LayerListViolation(v, i, len(avail), deg_in + 1)
            lists.append(avail)
        # deterministic: schedule by base classes; same-class nodes are
        # non-adjacent so simultaneous greedy picks stay proper
        if mode == "deterministic":
            order = sorted(range(len(layer)), key=lambda j: (base_colors[layer[j]], layer[j]))
            for j in order:
                v = layer[j]
                used = {colors[u] for u in g.adjacency[v] if colors[u] is not None}
                colors[v] = min(lists[j] - used)
            rounds += max(base_colors[v] for v in layer)
        else:
            from .graph import induced_subgraph

            sub, to_sub, to_orig = induced_subgraph(g, layer)
            sub_lists = [set() for _ in range(sub.n)]
            for j, v in enumerate(layer):
                sub_lists[to_sub[v]] = lists[j]
            sub_colors, r = list_color(
                sub, sub_lists, [base_colors[v] for v in to_orig], mode, seed,
                labels=to_orig,
            )
            for si, v in enumerate(to_orig):
                colors[v] = sub_colors[si]
            rounds += r
    for v in range(g.n):
        if fixed[v] is not None and colors[v] != fixed[v]:
            raise AssertionError(f"fixed color of node {v} was changed")
    return colors, rounds


# ---------------------------------------------------------------------------
# Network decomposition (ball carving)


@dataclass(frozen=True)
class Cluster:
    cluster_id: int
    color: int
    center: int
    members: frozenset[int]


@dataclass(frozen=True)
class NetworkDecomposition:
    clusters: tuple[Cluster, ...]
    cluster_of: tuple[int, ...]
    color_of: tuple[int, ...]
    achieved_diameter: int
    achieved_colors: int
    rounds: int


def network_decomposition(
    g: Graph,
    target_diameter: Optional[int] = None,
    target_colors: Optional[int] = None,
    seed: int = 0,
    *,
    separation: int = 1,
) -> NetworkDecomposition:
    """Ball carving into clusters of weak diameter <= target_diameter such that
    same-color clusters are more than `separation` apart in g.

    Deterministic (smallest-id carving); targets (O(log n), O(log n)).  The
    achieved diameter and color count are reported, not promised equal to the
    targets; target_colors only caps expectations of the caller.
    """
    n = g.n
    if target_diameter is None:
        target_diameter = 2 * max(1, math.ceil(math.log2(max(2, n))))
    rho_cap = max(1, target_diameter // 2)
    remaining = set(range(n))
    clusters: list[Cluster] = []
    cluster_of = [-1] * n
    color_of = [-1] * n
    color = 0
    max_radius = 0
    while remaining:
        color += 1
        avail = set(remaining)
        while avail:
            v = min(avail)
            # grow within g[avail] until the next shell stops doubling
            rho = 0
            ball = {v}
            while rho + separation <= rho_cap:
                grown = set(ball)
                frontier = set(ball)
                for _ in range(separation):
                    nxt = set()
                    for u in frontier:
                        for w in g.adjacency[u]:
                            if w in avail and w not in grown:
                                nxt.add(w)
                                grown.add(w)
                    frontier = nxt
                if len(grown) <= 2 * len(ball):
                    break
                ball = grown
                rho += separation
            members = frozenset(ball)
            cid = len(clusters)
            clusters.append(Cluster(cid, color, v, members))
            for u in members:
                cluster_of[u] = cid
                color_of[u] = color
            max_radius = max(max_radius, rho)
            remaining -= members
            # block everything within g-distance `separation` of the cluster,
            # measured in the full graph so removed territory cannot hide paths
            blocked = set(members)
            frontier = set(members)
            for _ in range(separation):
                nxt = set()
                for u in frontier:
                    for w in g.adjacency[u]:
                        if w not in blocked:
                            nxt.add(w)
                            blocked.add(w)
                frontier = nxt
            avail -= blocked
    rounds = color * (target_diameter + 2 * separation + 2)
    nd = NetworkDecomposition(
        clusters=tuple(clusters),
        cluster_of=tuple(cluster_of),
        color_of=tuple(color_of),
        achieved_diameter=2 * max_radius,
        achieved_colors=color,
        rounds=rounds,
    )
    _verify_decomposition(g, nd, separation)
    return nd


def _verify_decomposition(g: Graph, nd: NetworkDecomposition, separation: int) -> None:
    for u in range(g.n):
        if nd.cluster_of[u] < 0:
            raise AssertionError(f"node {u} is unclustered")
    if separation == 1:
        for u in range(g.n):
            for w in g.adjacency[u]:
                if (
                    nd.cluster_of[u] != nd.cluster_of[w]
                    and nd.color_of[u] == nd.color_of[w]
                ):
                    raise AssertionError(
                        f"adjacent clusters of {u} and {w} share color {nd.color_of[u]}"
                    )
    else:
        for cl in nd.clusters:
            dist = distances_from(g, cl.members, limit=separation)
            for other in nd.clusters:
                if other.cluster_id != cl.cluster_id and other.color == cl.color:
                    if any(u in dist for u in other.members):
                        raise AssertionError(
                            f"same-color clusters {cl.cluster_id},{other.cluster_id} too close"
                        )


def ruling_set_via_decomposition(g: Graph, alpha: int, seed: int = 0) -> RulingSet:
    """(alpha, alpha-1) ruling set built cluster-color by cluster-color from a
    network decomposition carved with same-color separation alpha."""
    nd = network_decomposition(g, separation=alpha, seed=seed)
    inf = g.n + alpha
    dist_m = [inf] * g.n
    members = []
    for cl in sorted(nd.clusters, key=lambda c: (c.color, c.cluster_id)):
        for u in sorted(cl.members):
            if dist_m[u] < alpha:
                continue
            members.append(u)
            dist_m[u] = 0
            frontier = deque([u])
            while frontier:
                x = frontier.popleft()
                d = dist_m[x]
                if d == alpha - 1:
                    continue
                for w in g.adjacency[x]:
                    if dist_m[w] > d + 1:
                        dist_m[w] = d + 1
                        frontier.append(w)
    members = sorted(members)
    measured = _verify_ruling(g, members, alpha)
    rounds = nd.rounds + nd.achieved_colors * (nd.achieved_diameter + alpha + 2)
    return RulingSet(tuple(members), alpha, measured, rounds, "netcomp")
