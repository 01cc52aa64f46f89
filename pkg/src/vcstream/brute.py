"""Exhaustive ground-truth solvers.

These anchor every differential test, so they stay independent of the
solver-side matcher: induced occurrences are found by brute enumeration of
vertex subsets and permutations, nothing shared with properties.is_induced_subgraph.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .errors import TooLarge
from .graph import Graph
from .properties import ExplicitFamily

PI_FREE_LIMIT = 10
OCT_LIMIT = 12


def _occurs_induced(g: Graph, h: Graph) -> bool:
    if h.n > g.n:
        return False
    pattern_edges = h.edges
    for subset in combinations(range(g.n), h.n):
        for perm in permutations(subset):
            ok = True
            for u, v in combinations(range(h.n), 2):
                if ((u, v) in pattern_edges or (v, u) in pattern_edges) != g.has_edge(perm[u], perm[v]):
                    ok = False
                    break
            if ok:
                return True
    return False


def brute_is_pi_free(g: Graph, f: ExplicitFamily) -> bool:
    if g.n > PI_FREE_LIMIT:
        raise TooLarge(f"brute_is_pi_free limited to {PI_FREE_LIMIT} vertices")
    return not any(_occurs_induced(g, p.graph) for p in f.members)


def brute_min_deletion(g: Graph, f: ExplicitFamily) -> tuple[int, tuple[int, ...]]:
    """Minimum-size deletion set leaving g free of the family; lexicographic ties."""
    if g.n > PI_FREE_LIMIT:
        raise TooLarge(f"brute_min_deletion limited to {PI_FREE_LIMIT} vertices")
    for size in range(g.n + 1):
        for cand in combinations(range(g.n), size):
            removed = set(cand)
            residual, _ = g.induced([v for v in range(g.n) if v not in removed])
            if not any(_occurs_induced(residual, p.graph) for p in f.members):
                return size, cand
    return g.n, tuple(range(g.n))


def _is_bipartite(g: Graph) -> bool:
    color: dict[int, int] = {}
    for root in range(g.n):
        if root in color:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def brute_min_oct(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Minimum-size deletion set leaving g bipartite."""
    if g.n > OCT_LIMIT:
        raise TooLarge(f"brute_min_oct limited to {OCT_LIMIT} vertices")
    for size in range(g.n + 1):
        for cand in combinations(range(g.n), size):
            removed = set(cand)
            residual, _ = g.induced([v for v in range(g.n) if v not in removed])
            if _is_bipartite(residual):
                return size, cand
    return g.n, tuple(range(g.n))
