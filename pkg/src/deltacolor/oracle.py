"""Brute-force ground truth: exact colorability, degree-choosability, and output verification."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import TooLarge
from .graph import Graph

COLORING_CAP = 24
CHOOSABLE_NODE_CAP = 6
CHOOSABLE_UNIVERSE_CAP = 6


def oracle_delta_coloring(g: Graph, k: int, *, cap: int = COLORING_CAP) -> Optional[list[int]]:
    """Lexicographically first proper k-coloring (colors 1..k), or None.

    Backtracks over nodes in ascending id, colors in ascending order, with
    forward checking (which prunes subtrees without changing the first
    solution found).
    """
    if g.n > cap:
        raise TooLarge(f"n={g.n} exceeds oracle cap {cap}")
    if k < 1:
        return None
    full = (1 << k) - 1
    avail = [full] * g.n  # bitmask of colors still open per node
    colors = [0] * g.n

    def assign(v: int) -> bool:
        if v == g.n:
            return True
        mask = avail[v]
        while mask:
            bit = mask & -mask
            mask ^= bit
            colors[v] = bit.bit_length()
            touched = []
            dead = False
            for u in g.adjacency[v]:
                if u > v and avail[u] & bit:
                    avail[u] ^= bit
                    touched.append(u)
                    if avail[u] == 0:
                        dead = True
                        break
            if not dead and assign(v + 1):
                return True
            for u in touched:
                avail[u] |= bit
        colors[v] = 0
        return False

    return colors[:] if assign(0) else None


def oracle_degree_choosable(g: Graph, universe: int = CHOOSABLE_UNIVERSE_CAP) -> bool:
    """Exhaustive degree-choosability: every assignment of lists of size deg(v)
    from {1..universe} admits a proper coloring from the lists.

    Assignments are enumerated up to global color relabeling (a new color may
    only be introduced as the smallest unused one), which is sound because
    colorability is invariant under renaming colors.  The last node is never
    enumerated: for a fixed choice of the other lists, a list L for it fails
    exactly when L lies inside the intersection of the colors its neighbors
    take over all proper colorings of the rest, so one intersection decides
    the whole level.
    """
    if g.n > CHOOSABLE_NODE_CAP:
        raise TooLarge(f"n={g.n} exceeds degree-choosability cap {CHOOSABLE_NODE_CAP}")
    if universe > CHOOSABLE_UNIVERSE_CAP:
        raise TooLarge(f"universe {universe} exceeds cap {CHOOSABLE_UNIVERSE_CAP}")
    n = g.n
    degs = [g.degree(v) for v in range(n)]
    if any(d == 0 for d in degs):
        return False  # an empty list cannot be colored from
    if any(d > universe for d in degs):
        raise TooLarge("a degree exceeds the color universe")
    if n == 1:
        return False

    order = sorted(range(n), key=lambda v: (degs[v], v))
    last = order[-1]
    prefix = order[:-1]
    pos = {v: i for i, v in enumerate(prefix)}
    nbr_after = [
        [pos[u] for u in g.adjacency[v] if u in pos and pos[u] > pos[v]]
        for v in prefix
    ]
    last_nbrs = [pos[u] for u in g.adjacency[last]]
    lists = [0] * len(prefix)
    last_deg = degs[last]

    combo_memo: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def combos(d: int, used: int) -> list[tuple[int, int]]:
        key = (d, used)
        got = combo_memo.get(key)
        if got is None:
            got = []
            top = min(universe, used + d)
            for combo in combinations(range(1, top + 1), d):
                fresh = [c for c in combo if c > used]
                if fresh and fresh != list(range(used + 1, used + 1 + len(fresh))):
                    continue
                mask = 0
                for c in combo:
                    mask |= 1 << (c - 1)
                got.append((mask, max(used, combo[-1])))
            combo_memo[key] = got
        return got

    def blocked_mask() -> int:
        """AND of colors-on-N(last) over proper colorings of the prefix; -1 if
        the prefix itself has no proper coloring."""
        target = last_deg
        avail = lists[:]
        chosen = [0] * len(prefix)
        meet = [(1 << universe) - 1]
        seen_any = [False]

        def walk(i: int) -> bool:
            # returns True to stop early (meet already too small to matter)
            if i == len(prefix):
                seen_any[0] = True
                mask = 0
                for j in last_nbrs:
                    mask |= chosen[j]
                meet[0] &= mask
                return bin(meet[0]).count("1") < target
            m = avail[i]
            while m:
                bit = m & -m
                m ^= bit
                chosen[i] = bit
                touched = []
                dead = False
                for j in nbr_after[i]:
                    if avail[j] & bit:
                        avail[j] ^= bit
                        touched.append(j)
                        if avail[j] == 0:
                            dead = True
                            break
                if not dead and walk(i + 1):
                    for j in touched:
                        avail[j] |= bit
                    return True
                for j in touched:
                    avail[j] |= bit
            chosen[i] = 0
            return False

        if walk(0):
            return meet[0]
        if not seen_any[0]:
            return -1
        return meet[0]

    def every_completion_colorable(i: int, used: int) -> bool:
        if i == len(prefix):
            meet = blocked_mask()
            if meet == -1:
                return False  # even without the last node nothing colors
            return bin(meet).count("1") < last_deg
        for mask, new_used in combos(degs[prefix[i]], used):
            lists[i] = mask
            if not every_completion_colorable(i + 1, new_used):
                return False
        return True

    return every_completion_colorable(0, 0)


def brute_force_list_coloring(g: Graph, nodes: Sequence[int],
                              lists: dict[int, set[int]]) -> dict[int, int]:
    """Backtracking list coloring of g[nodes]; callers guarantee a solution exists."""
    order = sorted(nodes)
    node_set = set(order)
    avail = {v: set(lists[v]) for v in order}
    chosen: dict[int, int] = {}

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(avail[v]):
            touched = []
            dead = False
            for u in g.adjacency[v]:
                if u in node_set and u not in chosen and c in avail[u]:
                    avail[u].discard(c)
                    touched.append(u)
                    if not avail[u]:
                        dead = True
                        break
            if not dead:
                chosen[v] = c
                if assign(i + 1):
                    return True
                del chosen[v]
            for u in touched:
                avail[u].add(c)
        return False

    if not assign(0):
        raise AssertionError("expected a list coloring to exist, none found")
    return chosen


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def verify(g: Graph, coloring: Sequence[Optional[int]], palette: int,
           lists: Optional[dict[int, set[int]]] = None,
           require_total: bool = True) -> Verdict:
    """Check totality, properness, palette membership, and list membership."""
    for v in range(g.n):
        c = coloring[v]
        if c is None:
            if require_total:
                return Verdict(False, f"node {v} is uncolored")
            continue
        if not (1 <= c <= palette):
            return Verdict(False, f"node {v} has color {c} outside 1..{palette}")
        if lists is not None and v in lists and c not in lists[v]:
            return Verdict(False, f"node {v} has color {c} outside its list")
    for u in range(g.n):
        cu = coloring[u]
        if cu is None:
            continue
        for w in g.adjacency[u]:
            if u < w and coloring[w] == cu:
                return Verdict(False, f"monochromatic edge ({u},{w}) with color {cu}")
    return Verdict(True)
