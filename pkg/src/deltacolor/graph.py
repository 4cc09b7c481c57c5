"""Immutable undirected graphs, BFS structure, blocks, and local colorability classifiers.

A degree-choosable component (DCC) is a node-induced subgraph that is
2-connected and neither a clique nor an odd cycle.  Graphs whose blocks are
all cliques or odd cycles (Gallai trees) are exactly the graphs that are not
degree-choosable, so DCC-free neighborhoods are the hard case for coloring
with exactly max-degree colors.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional

from .errors import GraphFormatError, SearchBudgetExceeded

# Exhaustive DCC search is skipped for balls larger than this; only the
# cheap witness scan runs (see find_dcc_within_radius).
DCC_BALL_CAP = 4096
# Upper bound on DFS path extensions in the exhaustive cycle search.
DCC_WORK_BUDGET = 500_000


class Graph:
    """Simple undirected graph on nodes 0..n-1 with sorted adjacency lists.

    Immutable after construction; self-loops and duplicate edges are rejected.
    """

    __slots__ = ("n", "adjacency", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphFormatError("node count must be non-negative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        """The symbol usually written as a capital delta."""
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def nodes(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adjacency == other.adjacency
        )

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, dict[int, int], list[int]]:
    """Induced subgraph plus both id translations (to_sub dict, to_orig list)."""
    to_orig = sorted(set(nodes))
    to_sub = {v: i for i, v in enumerate(to_orig)}
    edges = []
    for i, v in enumerate(to_orig):
        for u in g.adjacency[v]:
            j = to_sub.get(u)
            if j is not None and i < j:
                edges.append((i, j))
    return Graph(len(to_orig), edges), to_sub, to_orig


def ball_distances(g: Graph, v: int, r: int) -> dict[int, int]:
    """Distances from v, truncated at radius r (v included with distance 0)."""
    dist = {v: 0}
    frontier = deque([v])
    while frontier:
        u = frontier.popleft()
        d = dist[u]
        if d == r:
            continue
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = d + 1
                frontier.append(w)
    return dist


def distances_from(g: Graph, sources: Iterable[int], limit: Optional[int] = None,
                   within: Optional[set[int]] = None) -> dict[int, int]:
    """Multi-source BFS distances, optionally truncated and/or restricted to a node set."""
    dist = {}
    frontier = deque()
    for s in sorted(set(sources)):
        dist[s] = 0
        frontier.append(s)
    while frontier:
        u = frontier.popleft()
        d = dist[u]
        if limit is not None and d == limit:
            continue
        for w in g.adjacency[u]:
            if w not in dist and (within is None or w in within):
                dist[w] = d + 1
                frontier.append(w)
    return dist


def connected_components(g: Graph, within: Optional[set[int]] = None) -> list[list[int]]:
    nodes = sorted(within) if within is not None else range(g.n)
    seen = set()
    comps = []
    for s in nodes:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        frontier = deque([s])
        while frontier:
            u = frontier.popleft()
            for w in g.adjacency[u]:
                if w not in seen and (within is None or w in within):
                    seen.add(w)
                    comp.append(w)
                    frontier.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(ball_distances(g, 0, g.n)) == g.n


def is_path_graph(g: Graph) -> bool:
    if g.n == 1:
        return True
    return (
        is_connected(g)
        and g.m == g.n - 1
        and g.max_degree() <= 2
    )


def is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and is_connected(g) and all(g.degree(v) == 2 for v in range(g.n))


def is_clique(g: Graph) -> bool:
    return all(g.degree(v) == g.n - 1 for v in range(g.n))


def is_nice(g: Graph) -> bool:
    """Connected and neither a path, a cycle, nor a complete graph."""
    if not is_connected(g):
        return False
    return not (is_path_graph(g) or is_cycle_graph(g) or is_clique(g))


# ---------------------------------------------------------------------------
# BFS structure


@dataclass(frozen=True)
class BfsStructure:
    """Levels, canonical parents, and child counts of a truncated BFS from root.

    levels[t] is the set of nodes at distance t; parent[u] is the smallest-id
    neighbor of u one level closer to the root (None for the root and for
    unreached nodes); child_count[u] counts u's children in that tree.  When
    the explored ball contains no degree-choosable component the parent is the
    *only* neighbor one level up, so the tree is canonical regardless of
    traversal order.
    """

    root: int
    levels: tuple[frozenset[int], ...]
    parent: dict[int, Optional[int]]
    child_count: dict[int, int]

    def depth(self) -> int:
        return len(self.levels) - 1

    def level_of(self) -> dict[int, int]:
        return {u: t for t, lev in enumerate(self.levels) for u in lev}

    def path_to_root(self, u: int) -> list[int]:
        path = [u]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path


def bfs_layers(g: Graph, root: int, r: int) -> BfsStructure:
    """Breadth-first structure around root, truncated at depth r."""
    if not (0 <= root < g.n):
        raise GraphFormatError(f"root {root} out of range")
    if r < 0:
        raise GraphFormatError("depth must be non-negative")
    dist = ball_distances(g, root, r)
    depth = max(dist.values())
    levels = [set() for _ in range(depth + 1)]
    for u, d in dist.items():
        levels[d].add(u)
    parent: dict[int, Optional[int]] = {root: None}
    child_count = {u: 0 for u in dist}
    for t in range(1, depth + 1):
        for u in sorted(levels[t]):
            p = min(w for w in g.adjacency[u] if dist.get(w) == t - 1)
            parent[u] = p
            child_count[p] += 1
    return BfsStructure(
        root=root,
        levels=tuple(frozenset(lev) for lev in levels),
        parent=parent,
        child_count=child_count,
    )


# ---------------------------------------------------------------------------
# Blocks


class ComponentTag(Enum):
    CLIQUE = "Clique"
    ODD_CYCLE = "OddCycle"
    DCC = "Dcc"
    BRIDGE_EDGE = "BridgeEdge"


@dataclass(frozen=True)
class ComponentClass:
    tag: ComponentTag


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal 2-connected components (bridge edges as 2-node blocks) and cut vertices."""

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Iterative Hopcroft-Tarjan biconnected components, per connected component."""
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    edge_stack: list[tuple[int, int]] = []
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()

    for start in range(g.n):
        if disc[start] != -1:
            continue
        root_children = 0
        # stack entries: (node, parent, neighbor iterator index)
        stack = [(start, -1, 0)]
        disc[start] = low[start] = timer
        timer += 1
        while stack:
            u, pu, idx = stack[-1]
            if idx < len(g.adjacency[u]):
                stack[-1] = (u, pu, idx + 1)
                w = g.adjacency[u][idx]
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, 0))
                elif w != pu and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if p == start:
                    root_children += 1
                if low[u] >= disc[p]:
                    comp_nodes = set()
                    while edge_stack:
                        a, b = edge_stack[-1]
                        if disc[a] < disc[u] and a != u:
                            break
                        edge_stack.pop()
                        comp_nodes.add(a)
                        comp_nodes.add(b)
                    # drop the (p, u) edge too
                    if edge_stack and edge_stack[-1] == (p, u):
                        edge_stack.pop()
                    comp_nodes.add(p)
                    comp_nodes.add(u)
                    blocks.append(frozenset(comp_nodes))
                    if p != start or root_children > 1:
                        cuts.add(p)
    blocks.sort(key=lambda b: (min(b), len(b), tuple(sorted(b))))
    return BlockDecomposition(blocks=tuple(blocks), cut_vertices=frozenset(cuts))


def _induced_edge_count(g: Graph, nodes: frozenset[int] | set[int]) -> int:
    return sum(1 for u in nodes for w in g.adjacency[u] if w in nodes) // 2


def _induced_radius_at_most(g: Graph, nodes: frozenset[int] | set[int], r: int) -> bool:
    """True iff some node of the induced subgraph has eccentricity <= r inside it."""
    for c in sorted(nodes):
        dist = {c: 0}
        frontier = deque([c])
        while frontier:
            u = frontier.popleft()
            d = dist[u]
            if d == r:
                continue
            for w in g.adjacency[u]:
                if w in nodes and w not in dist:
                    dist[w] = d + 1
                    frontier.append(w)
        if len(dist) == len(nodes):
            return True
    return False


def _is_two_connected(g: Graph, nodes: frozenset[int]) -> bool:
    if len(nodes) < 3:
        return False
    sub, _, _ = induced_subgraph(g, nodes)
    if not is_connected(sub):
        return False
    dec = block_decomposition(sub)
    return len(dec.blocks) == 1 and len(dec.blocks[0]) == sub.n


def classify_block(g: Graph, block: Iterable[int]) -> ComponentClass:
    """Classify a block of g as clique, odd cycle, bridge edge, or DCC.

    Rejects node sets that are not 2-connected in g (or a single edge).
    """
    nodes = frozenset(block)
    if len(nodes) < 2:
        raise GraphFormatError("a block has at least two nodes")
    if len(nodes) == 2:
        u, v = sorted(nodes)
        if not g.has_edge(u, v):
            raise GraphFormatError(f"{{{u},{v}}} is not an edge of the graph")
        return ComponentClass(ComponentTag.BRIDGE_EDGE)
    if not _is_two_connected(g, nodes):
        raise GraphFormatError("node set is not 2-connected in the graph")
    k = len(nodes)
    m = _induced_edge_count(g, nodes)
    if m == k * (k - 1) // 2:
        return ComponentClass(ComponentTag.CLIQUE)
    if k % 2 == 1 and m == k:
        return ComponentClass(ComponentTag.ODD_CYCLE)
    return ComponentClass(ComponentTag.DCC)


def is_gallai_tree(g: Graph) -> bool:
    """True iff every block is a clique, an odd cycle, or a bridge edge."""
    dec = block_decomposition(g)
    for b in dec.blocks:
        if classify_block(g, b).tag is ComponentTag.DCC:
            return False
    return True


# ---------------------------------------------------------------------------
# Local DCC search


def _cycle_set_qualifies(g: Graph, nodes: frozenset[int], r: int) -> bool:
    """Node set of a simple cycle: 2-connected for free; reject cliques and
    induced odd cycles; require induced radius <= r."""
    k = len(nodes)
    if k < 4:
        return False  # triangles induce cliques
    m = _induced_edge_count(g, nodes)
    if m == k * (k - 1) // 2:
        return False
    if k % 2 == 1 and m == k:
        return False
    return _induced_radius_at_most(g, nodes, r)


def _witness_cycles(g: Graph, v: int, dist: dict[int, int]) -> list[frozenset[int]]:
    """Simple cycles through v built from two root-branch-disjoint BFS chains
    plus one crossing non-tree edge.  If any cycle through v lies inside the
    ball, at least one such witness exists."""
    parent: dict[int, Optional[int]] = {v: None}
    branch: dict[int, int] = {v: -1}
    order = sorted(dist, key=lambda u: (dist[u], u))
    for u in order:
        if u == v:
            continue
        p = min(w for w in g.adjacency[u] if dist.get(w) == dist[u] - 1)
        parent[u] = p
        branch[u] = u if p == v else branch[p]
    out = []
    seen = set()
    for u in order:
        for w in g.adjacency[u]:
            if u >= w or w not in dist:
                continue
            if parent.get(u) == w or parent.get(w) == u:
                continue
            if branch[u] == branch[w] or u == v or w == v:
                continue
            nodes = {v}
            x = u
            while x != v:
                nodes.add(x)
                x = parent[x]
            x = w
            while x != v:
                nodes.add(x)
                x = parent[x]
            fs = frozenset(nodes)
            if fs not in seen:
                seen.add(fs)
                out.append(fs)
    return out


def _cycles_through(g: Graph, v: int, ball: set[int], max_len: int,
                    budget: int) -> Iterator[frozenset[int]]:
    """DFS enumeration of simple cycles through v inside the ball, length <= max_len."""
    work = 0
    emitted = set()
    nbrs_v = [w for w in g.adjacency[v] if w in ball]
    path = [v]
    on_path = {v}

    def extend(u: int) -> Iterator[frozenset[int]]:
        nonlocal work
        for w in g.adjacency[u]:
            if w not in ball:
                continue
            work += 1
            if work > budget:
                raise SearchBudgetExceeded(
                    f"cycle search around node {v} exceeded {budget} extensions"
                )
            if w == v and len(path) >= 3 and path[1] < u:
                fs = frozenset(path)
                if fs not in emitted:
                    emitted.add(fs)
                    yield fs
                continue
            if w in on_path or len(path) >= max_len:
                continue
            path.append(w)
            on_path.add(w)
            yield from extend(w)
            on_path.remove(w)
            path.pop()

    for a in nbrs_v:
        path.append(a)
        on_path.add(a)
        yield from extend(a)
        on_path.remove(a)
        path.pop()


def find_dcc_within_radius(g: Graph, v: int, r: int, *,
                           ball_cap: int = DCC_BALL_CAP,
                           work_budget: int = DCC_WORK_BUDGET) -> Optional[frozenset[int]]:
    """Smallest-first DCC containing v inside its r-ball, or None.

    Returns a node set S with v in S, S inside ball(v, r), g[S] 2-connected,
    not a clique, not an odd cycle, and radius(g[S]) <= r; None when no such
    set exists in the ball.  Search order: cheap branch-witness scan first,
    then exhaustive enumeration of simple cycles through v (length <= 2r+4)
    for balls up to ball_cap nodes; among hits the (size, sorted ids)-smallest
    set is returned.
    """
    if r < 1:
        raise GraphFormatError("radius must be >= 1")
    dist = ball_distances(g, v, r)
    if len(dist) <= 3:
        return None
    hits = [s for s in _witness_cycles(g, v, dist) if _cycle_set_qualifies(g, s, r)]
    if hits:
        return min(hits, key=lambda s: (len(s), tuple(sorted(s))))
    if len(dist) > ball_cap:
        return None
    ball = set(dist)
    max_len = min(len(ball), 2 * r + 4)
    best = None
    for s in _cycles_through(g, v, ball, max_len, work_budget):
        if _cycle_set_qualifies(g, s, r):
            key = (len(s), tuple(sorted(s)))
            if best is None or key < best[0]:
                best = (key, s)
    return best[1] if best else None


def ball_is_dcc_free(g: Graph, v: int, r: int) -> bool:
    """Certify that no node of ball(v, r) lies in a DCC of radius <= r."""
    return all(
        find_dcc_within_radius(g, u, r) is None
        for u in sorted(ball_distances(g, v, r))
    )
