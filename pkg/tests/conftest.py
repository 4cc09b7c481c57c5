"""Shared fixtures and small independent brute-force helpers for tests.

The helpers here deliberately avoid the package's own structural machinery so
they can serve as independent oracles (plain floyd-warshall distances,
remove-a-node connectivity checks, subset enumeration).
"""

from __future__ import annotations

from itertools import combinations

import pytest

from deltacolor import Graph
from deltacolor.workbench import (
    complete_graph,
    cycle_graph,
    heawood_graph,
    path_graph,
    petersen_graph,
    prism_graph,
)


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return petersen_graph()


@pytest.fixture(scope="session")
def prism() -> Graph:
    return prism_graph()


@pytest.fixture(scope="session")
def heawood() -> Graph:
    return heawood_graph()


@pytest.fixture(scope="session")
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture(scope="session")
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture(scope="session")
def c5() -> Graph:
    return cycle_graph(5)


# ---------------------------------------------------------------------------
# Independent brute-force helpers


def bf_all_distances(g: Graph) -> list[list[float]]:
    """Floyd-Warshall, independent of the package's BFS code."""
    inf = float("inf")
    dist = [[inf] * g.n for _ in range(g.n)]
    for v in range(g.n):
        dist[v][v] = 0
    for u, w in g.edges():
        dist[u][w] = dist[w][u] = 1
    for k in range(g.n):
        dk = dist[k]
        for i in range(g.n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(g.n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def bf_connected_on(g: Graph, nodes: set[int]) -> bool:
    nodes = set(nodes)
    if not nodes:
        return True
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if w in nodes and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


def bf_two_connected(g: Graph, nodes: set[int]) -> bool:
    """2-connected by definition: connected and no single-node removal splits it."""
    nodes = set(nodes)
    if len(nodes) < 3:
        return False
    if not bf_connected_on(g, nodes):
        return False
    return all(bf_connected_on(g, nodes - {v}) for v in nodes)


def bf_is_clique(g: Graph, nodes: set[int]) -> bool:
    return all(g.has_edge(u, w) for u, w in combinations(sorted(nodes), 2))


def bf_is_odd_cycle(g: Graph, nodes: set[int]) -> bool:
    if len(nodes) % 2 == 0 or len(nodes) < 3:
        return False
    degs = [sum(1 for w in g.adjacency[v] if w in nodes) for v in nodes]
    edge_count = sum(degs) // 2
    return all(d == 2 for d in degs) and edge_count == len(nodes) and bf_connected_on(g, nodes)


def bf_induced_radius(g: Graph, nodes: set[int]) -> int:
    sub_nodes = sorted(nodes)
    idx = {v: i for i, v in enumerate(sub_nodes)}
    sub = Graph(
        len(sub_nodes),
        [
            (idx[u], idx[w])
            for u in sub_nodes
            for w in g.adjacency[u]
            if w in nodes and idx[u] < idx[w]
        ],
    )
    dist = bf_all_distances(sub)
    return int(min(max(row) for row in dist))


def bf_is_dcc(g: Graph, nodes: set[int]) -> bool:
    return (
        bf_two_connected(g, nodes)
        and not bf_is_clique(g, nodes)
        and not bf_is_odd_cycle(g, nodes)
    )


def bf_dcc_exists_within(g: Graph, v: int, r: int) -> bool:
    """Subset enumeration: any DCC containing v inside ball(v, r) with induced
    radius <= r?  Only feasible for tiny graphs."""
    dist = bf_all_distances(g)
    ball = [u for u in range(g.n) if dist[v][u] <= r]
    for size in range(4, len(ball) + 1):
        for combo in combinations(ball, size):
            if v not in combo:
                continue
            s = set(combo)
            if bf_is_dcc(g, s) and bf_induced_radius(g, s) <= r:
                return True
    return False
