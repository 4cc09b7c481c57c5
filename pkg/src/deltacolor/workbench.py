"""Graph generators, text IO, and report files.

Generators audit their own output (degrees, girth, connectivity) before
returning; a graph that fails its family definition is never handed to an
algorithm or a test.
"""

from __future__ import annotations

import random
from collections import defaultdict, deque
from pathlib import Path
from typing import Iterable, Optional

from .engine import RunReport
from .errors import GraphFormatError, InfeasibleFamily, RejectionBudgetExceeded
from .graph import Graph, is_connected

DEFAULT_ATTEMPTS = 200


# ---------------------------------------------------------------------------
# Deterministic families


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InfeasibleFamily("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InfeasibleFamily("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def clique_minus_edge(n: int) -> Graph:
    if n < 4:
        raise InfeasibleFamily("clique-minus-edge needs n >= 4")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) != (0, 1)])


def torus_graph(w: int, h: int) -> Graph:
    """4-regular wraparound grid; w, h >= 3 to keep the graph simple."""
    if w < 3 or h < 3:
        raise InfeasibleFamily("torus needs w >= 3 and h >= 3")
    edges = set()
    for x in range(w):
        for y in range(h):
            v = x * h + y
            edges.add(tuple(sorted((v, ((x + 1) % w) * h + y))))
            edges.add(tuple(sorted((v, x * h + (y + 1) % h))))
    return Graph(w * h, sorted(edges))


def petersen_graph() -> Graph:
    """Kneser-style construction: 2-subsets of {0..4}, disjointness edges."""
    from itertools import combinations

    subsets = list(combinations(range(5), 2))
    index = {s: i for i, s in enumerate(subsets)}
    edges = [
        (index[a], index[b])
        for a in subsets
        for b in subsets
        if index[a] < index[b] and not (set(a) & set(b))
    ]
    return Graph(10, edges)


def prism_graph() -> Graph:
    """Two triangles joined by a perfect matching (3-regular, n=6)."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def generalized_petersen(n: int, k: int) -> Graph:
    if n < 3 or not (1 <= k < n) or 2 * k == n:
        raise InfeasibleFamily("generalized petersen needs n >= 3, 1 <= k < n/2")
    edges = set()
    for i in range(n):
        edges.add(tuple(sorted((i, (i + 1) % n))))  # outer cycle
        edges.add(tuple(sorted((i, n + i))))  # spokes
        edges.add(tuple(sorted((n + i, n + (i + k) % n))))  # inner star
    return Graph(2 * n, sorted(edges))


def heawood_graph() -> Graph:
    """Point-line incidence graph of the Fano plane (3-regular, girth 6)."""
    lines = [
        frozenset(((i) % 7, (i + 1) % 7, (i + 3) % 7)) for i in range(7)
    ]
    edges = [
        (p, 7 + li)
        for p in range(7)
        for li, line in enumerate(lines)
        if p in line
    ]
    return Graph(14, edges)


# ---------------------------------------------------------------------------
# Randomized families


def _pairing_regular_edges(n: int, d: int, rng: random.Random) -> Optional[set[tuple[int, int]]]:
    """One pairing-model attempt with local retries on collisions (adapted from
    the standard suitable-edges construction)."""
    edges: set[tuple[int, int]] = set()
    stubs = list(range(n)) * d

    def suitable(potential) -> bool:
        if not potential:
            return True
        nodes = sorted(potential)
        for i, s1 in enumerate(nodes):
            for s2 in nodes[i + 1:]:
                if (s1, s2) not in edges:
                    return True
        return False

    while stubs:
        potential = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] += 1
                potential[s2] += 1
        if not suitable(potential):
            return None
        stubs = [v for v, count in potential.items() for _ in range(count)]
    return edges


def regular_graph(n: int, d: int, seed: int, *, attempts: int = DEFAULT_ATTEMPTS,
                  connected: bool = True) -> Graph:
    """Uniform-ish random simple d-regular graph; audited degrees, connectivity."""
    if n <= d or d < 0:
        raise InfeasibleFamily("regular needs 0 <= d < n")
    if (n * d) % 2 != 0:
        raise InfeasibleFamily("regular needs n*d even")
    rng = random.Random(seed)
    for _ in range(attempts):
        edges = _pairing_regular_edges(n, d, rng)
        if edges is None:
            continue
        g = Graph(n, sorted(edges))
        if any(g.degree(v) != d for v in range(n)):
            continue
        if connected and not is_connected(g):
            continue
        return g
    raise RejectionBudgetExceeded(f"no simple connected {d}-regular graph in {attempts} attempts")


def gallai_tree_graph(seed: int, blocks: int = 8, max_clique: int = 4,
                      cycle_lengths: tuple[int, ...] = (3, 5)) -> Graph:
    """Tree of blocks, each a clique or an odd cycle, attached at random nodes.

    max_clique=2 with no cycle lengths yields a random tree.
    """
    if blocks < 1 or max_clique < 2:
        raise InfeasibleFamily("gallai needs blocks >= 1 and max_clique >= 2")
    rng = random.Random(seed)
    kinds = [("clique", k) for k in range(2, max_clique + 1)]
    kinds += [("cycle", l) for l in cycle_lengths if l % 2 == 1 and l >= 3]
    if not kinds:
        raise InfeasibleFamily("gallai has no block kinds to attach")
    edges: list[tuple[int, int]] = []
    n = 1
    for _ in range(blocks):
        kind, size = kinds[rng.randrange(len(kinds))]
        anchor = rng.randrange(n)
        fresh = list(range(n, n + size - 1))
        ring = [anchor] + fresh
        if kind == "clique":
            for i, a in enumerate(ring):
                for b in ring[i + 1:]:
                    edges.append((min(a, b), max(a, b)))
        else:
            for i in range(len(ring)):
                a, b = ring[i], ring[(i + 1) % len(ring)]
                edges.append((min(a, b), max(a, b)))
        n += size - 1
    return Graph(n, sorted(set(edges)))


def girth_up_to(g: Graph, cap: int) -> Optional[int]:
    """Length of the shortest cycle if it is <= cap, else None (exact)."""
    best: Optional[int] = None
    limit = cap  # BFS depth bound: a cycle of length L is seen at depth ceil(L/2)
    for root in range(g.n):
        depth = {root: 0}
        parent = {root: -1}
        frontier = deque([root])
        while frontier:
            u = frontier.popleft()
            if depth[u] * 2 > (best or cap):
                break
            for w in g.adjacency[u]:
                if w == parent[u]:
                    continue
                if w in depth:
                    length = depth[u] + depth[w] + 1
                    if length <= (best or cap) and (best is None or length < best):
                        best = length
                else:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    frontier.append(w)
    return best


def _short_cycle_edges(adj: dict[int, set[int]], g_min: int) -> list[tuple[int, int]]:
    """Closing edges of cycles shorter than g_min, one per offending root scan."""
    bad = []
    seen_roots = set()
    for root in adj:
        if root in seen_roots:
            continue
        depth = {root: 0}
        parent = {root: -1}
        frontier = deque([root])
        found = None
        while frontier and found is None:
            u = frontier.popleft()
            if 2 * depth[u] + 1 >= g_min + 1:
                break
            for w in adj[u]:
                if w == parent[u]:
                    continue
                if w in depth:
                    if depth[u] + depth[w] + 1 < g_min:
                        found = (u, w)
                        break
                else:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    frontier.append(w)
        if found:
            bad.append(found)
            seen_roots.add(root)
    return bad


def high_girth_regular(n: int, d: int, g_min: int, seed: int, *,
                       swap_budget: Optional[int] = None) -> Graph:
    """d-regular graph with girth >= g_min: pairing-model start, then seeded
    double-edge swaps that break every short cycle; full audit at the end."""
    if g_min < 3:
        return regular_graph(n, d, seed)
    base = regular_graph(n, d, seed)
    rng = random.Random(seed ^ 0x9E3779B97F4A7C15)
    adj: dict[int, set[int]] = {v: set(base.adjacency[v]) for v in range(n)}
    if swap_budget is None:
        swap_budget = 200 + 40 * g_min * max(1, n // 100)
    swaps = 0

    def cycle_through_edge_shorter_than(u: int, v: int, bound: int) -> bool:
        # shortest cycle using edge (u,v) = 1 + dist(u,v) without that edge
        depth = {u: 0}
        frontier = deque([u])
        while frontier:
            x2 = frontier.popleft()
            if depth[x2] + 2 >= bound:
                return False
            for w in adj[x2]:
                if x2 == u and w == v:
                    continue
                if w == v:
                    return True
                if w not in depth:
                    depth[w] = depth[x2] + 1
                    frontier.append(w)
        return False

    def do_swap(x: int, y: int) -> bool:
        nonlocal swaps
        for _ in range(256):
            a = rng.randrange(n)
            if not adj[a]:
                continue
            b = sorted(adj[a])[rng.randrange(len(adj[a]))]
            if len({x, y, a, b}) < 4:
                continue
            if a in adj[x] or b in adj[y]:
                continue
            adj[x].discard(y)
            adj[y].discard(x)
            adj[a].discard(b)
            adj[b].discard(a)
            adj[x].add(a)
            adj[a].add(x)
            adj[y].add(b)
            adj[b].add(y)
            # reject replacements that immediately recreate a short cycle
            if (
                cycle_through_edge_shorter_than(x, a, g_min)
                or cycle_through_edge_shorter_than(y, b, g_min)
            ):
                adj[x].discard(a)
                adj[a].discard(x)
                adj[y].discard(b)
                adj[b].discard(y)
                adj[x].add(y)
                adj[y].add(x)
                adj[a].add(b)
                adj[b].add(a)
                continue
            swaps += 1
            return True
        return False

    while True:
        bad = _short_cycle_edges(adj, g_min)
        if not bad:
            break
        progressed = False
        for x, y in bad:
            if y not in adj[x]:
                continue  # an earlier swap already removed it
            if swaps >= swap_budget:
                raise RejectionBudgetExceeded(
                    f"girth {g_min} not reached within {swap_budget} swaps"
                )
            if do_swap(x, y):
                progressed = True
        if not progressed:
            raise RejectionBudgetExceeded("no valid swap available for short cycles")
    edges = sorted(
        (u, w) for u in adj for w in adj[u] if u < w
    )
    g = Graph(n, edges)
    if any(g.degree(v) != d for v in range(n)):
        raise AssertionError("swap repair broke regularity")
    # reconnect if swapping split the graph, then re-verify girth
    guard = 0
    while not is_connected(g):
        guard += 1
        if guard > 64:
            raise RejectionBudgetExceeded("could not reconnect after swaps")
        comps = _components_from_adj(adj)
        (a, b) = _first_edge(adj, comps[0])
        (c, dd) = _first_edge(adj, comps[1])
        adj[a].discard(b)
        adj[b].discard(a)
        adj[c].discard(dd)
        adj[dd].discard(c)
        adj[a].add(c)
        adj[c].add(a)
        adj[b].add(dd)
        adj[dd].add(b)
        if _short_cycle_edges(adj, g_min):
            raise RejectionBudgetExceeded("reconnection created a short cycle")
        g = Graph(n, sorted((u, w) for u in adj for w in adj[u] if u < w))
    short = girth_up_to(g, g_min - 1)
    if short is not None:
        raise AssertionError(f"girth audit failed: cycle of length {short}")
    return g


def _components_from_adj(adj) -> list[list[int]]:
    seen = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    q.append(w)
        comps.append(comp)
    return comps


def _first_edge(adj, comp) -> tuple[int, int]:
    for u in sorted(comp):
        for w in sorted(adj[u]):
            return (u, w)
    raise AssertionError("component has no edge")


def generate(family: str, seed: int = 0, **params) -> Graph:
    """Dispatch by family name; see the individual generators for parameters."""
    if family == "path":
        return path_graph(params["n"])
    if family == "cycle":
        return cycle_graph(params["n"])
    if family == "clique_minus_edge":
        return clique_minus_edge(params["n"])
    if family == "regular":
        return regular_graph(params["n"], params["d"], seed)
    if family == "torus":
        return torus_graph(params["w"], params["h"])
    if family == "gallai":
        return gallai_tree_graph(
            seed,
            blocks=params.get("blocks", 8),
            max_clique=params.get("max_clique", 4),
            cycle_lengths=tuple(params.get("cycle_lengths", (3, 5))),
        )
    if family == "high_girth":
        return high_girth_regular(params["n"], params["d"], params["g_min"], seed)
    raise InfeasibleFamily(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Text formats


def write_graph_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < v < n):
            raise GraphFormatError(f"edge ({u},{v}) must satisfy 0 <= u < v < n")
        edges.append((u, v))
    return Graph(n, edges)


def save_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(write_graph_text(g))


def load_graph(path: str | Path) -> Graph:
    return parse_graph_text(Path(path).read_text())


def write_coloring_text(colors: Iterable[int]) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(colors))


def parse_coloring_text(text: str, n: int) -> list[int]:
    colors = [0] * n
    seen = set()
    for ln in text.split("\n"):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad coloring line: {ln!r}")
        v, c = int(parts[0]), int(parts[1])
        if not (0 <= v < n) or v in seen:
            raise GraphFormatError(f"bad or repeated node {v}")
        seen.add(v)
        colors[v] = c
    if len(seen) != n:
        raise GraphFormatError(f"coloring covers {len(seen)} of {n} nodes")
    return colors


def save_coloring(colors: Iterable[int], path: str | Path) -> None:
    Path(path).write_text(write_coloring_text(colors))


def load_coloring(path: str | Path, n: int) -> list[int]:
    return parse_coloring_text(Path(path).read_text(), n)


def write_report(report: RunReport, path: str | Path) -> None:
    """Canonical JSON, byte-stable for identical runs (wall_ms serialized as 0)."""
    Path(path).write_text(report.to_json())
