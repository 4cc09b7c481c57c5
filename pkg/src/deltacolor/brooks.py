"""Complete a max-degree coloring that is missing exactly one node.

The uncolored node carries a token.  While the token's node has no free
color, the token moves toward the nearest node that can absorb it: a node of
degree below the palette size, or a degree-choosable component, which is
wiped and recolored from degree lists.  All changes stay within a
ceil(2*ln n / ln(delta-1)) ball of the starting node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BadPartial, NotNice
from .graph import (
    Graph,
    ball_distances,
    find_dcc_within_radius,
    induced_subgraph,
    is_nice,
)
from .oracle import brute_force_list_coloring


def completion_radius(n: int, delta: int) -> int:
    """Locality bound for one completion: ceil(2*ln n / ln(delta-1))."""
    if delta < 3:
        raise NotNice("completion needs max degree >= 3")
    return max(1, math.ceil(2.0 * math.log(max(2, n)) / math.log(delta - 1)))


@dataclass(frozen=True)
class CompletionResult:
    colors: list[Optional[int]]
    changed: frozenset[int]
    walk: tuple[int, ...]
    radius_bound: int
    recolored_component: Optional[frozenset[int]]


def complete_one_uncolored(
    g: Graph,
    partial: Sequence[Optional[int]],
    node: Optional[int] = None,
) -> CompletionResult:
    """Extend a proper partial coloring with palette {1..delta} to all of g.

    With node=None the partial must have exactly one uncolored node; callers
    completing several far-apart nodes pass `node` explicitly, and any other
    uncolored node must sit outside twice the change radius.
    """
    if not is_nice(g):
        raise NotNice("graph is a path, a cycle, a clique, or disconnected")
    delta = g.max_degree()
    n = g.n
    uncolored = [v for v in range(n) if partial[v] is None]
    if node is None:
        if len(uncolored) != 1:
            raise BadPartial(f"expected exactly one uncolored node, got {len(uncolored)}")
        node = uncolored[0]
    elif partial[node] is not None:
        raise BadPartial(f"node {node} is already colored")
    for v in range(n):
        c = partial[v]
        if c is None:
            continue
        if not (1 <= c <= delta):
            raise BadPartial(f"node {v} has color {c} outside 1..{delta}")
        for u in g.adjacency[v]:
            if u < v and partial[u] == c:
                raise BadPartial(f"monochromatic edge ({u},{v})")
    radius = completion_radius(n, delta)
    near = ball_distances(g, node, 2 * radius + 1)
    for v in uncolored:
        if v != node and v in near:
            raise BadPartial(
                f"uncolored node {v} within distance {near[v]} of {node}; "
                f"completions need separation > {2 * radius}"
            )

    dist = ball_distances(g, node, radius)
    order = sorted(dist, key=lambda u: (dist[u], u))
    palette = set(range(1, delta + 1))
    colors: list[Optional[int]] = list(partial)

    def free_colors(x: int) -> set[int]:
        used = {colors[u] for u in g.adjacency[x] if colors[u] is not None}
        return palette - used

    # pick the token's destination: nearest low-degree node, else the nearest
    # node lying in a degree-choosable component of the ball
    target = None
    component: Optional[frozenset[int]] = None
    for u in order:
        if g.degree(u) < delta:
            target = u
            break
    if target is None:
        sub, to_sub, to_orig = induced_subgraph(g, dist.keys())
        for u in order:
            s = find_dcc_within_radius(sub, to_sub[u], radius)
            if s is not None:
                target = u
                component = frozenset(to_orig[i] for i in s)
                break
        if target is None:
            raise AssertionError(
                "no free color, no low-degree node, and no degree-choosable "
                f"component within radius {radius} of node {node}"
            )

    # canonical shortest path node -> target (min-id BFS parents from node)
    parent: dict[int, int] = {}
    for u in order:
        if u != node:
            parent[u] = min(w for w in g.adjacency[u] if dist.get(w) == dist[u] - 1)
    path = [target]
    while path[-1] != node:
        path.append(parent[path[-1]])
    path.reverse()

    walk = [node]
    for x, nxt in zip(path, path[1:]):
        free = free_colors(x)
        if free:
            colors[x] = min(free)
            break
        colors[x] = colors[nxt]
        colors[nxt] = None
        walk.append(nxt)
    else:
        x = path[-1]
        free = free_colors(x)
        if free:
            colors[x] = min(free)
        else:
            if component is None or x not in component:
                raise AssertionError("token walk ended without an absorbing target")
            for w in component:
                colors[w] = None
            lists = {}
            for w in component:
                used = {
                    colors[u]
                    for u in g.adjacency[w]
                    if u not in component and colors[u] is not None
                }
                lists[w] = palette - used
            for w, c in brute_force_list_coloring(g, sorted(component), lists).items():
                colors[w] = c

    changed = frozenset(
        v for v in range(n) if colors[v] != partial[v]
    )
    assert len(walk) - 1 <= radius, "token walk exceeded the locality bound"
    for v in changed:
        assert dist.get(v, radius + 1) <= radius, (
            f"changed node {v} outside the radius-{radius} ball of {node}"
        )
    for v in range(n):
        if v != node and partial[v] is None:
            continue
        if colors[v] is None:
            raise AssertionError(f"node {v} left uncolored by completion")
    for u, w in g.edges():
        if colors[u] is not None and colors[u] == colors[w]:
            raise AssertionError(f"completion produced monochromatic edge ({u},{w})")
    return CompletionResult(
        colors=colors,
        changed=changed,
        walk=tuple(walk),
        radius_bound=radius,
        recolored_component=component,
    )
