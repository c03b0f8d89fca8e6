"""Exact references for small instances."""
from __future__ import annotations

import numpy as np

from .graph import Graph
from .kernel import Coloring

MAX_BACKTRACK_N = 24
MAX_ENUMERATION = 10**7


class InstanceTooLarge(ValueError):
    pass


def brute_force_colorable(g: Graph, k: int) -> tuple[bool, Coloring | None]:
    """Decide k-colorability by backtracking with forward checking.

    Vertices are tried in descending-degree order; after each assignment the
    color is struck from every uncolored neighbor's domain and the branch is
    abandoned as soon as some domain empties.
    """
    if g.n > MAX_BACKTRACK_N:
        raise InstanceTooLarge(f"n={g.n} exceeds the oracle limit of {MAX_BACKTRACK_N}")
    if k < 1:
        return g.n == 0, (Coloring(np.zeros(0, dtype=np.int64), 1) if g.n == 0 else None)
    order = sorted(range(g.n), key=lambda v: (-len(g.adjacency[v]), v))
    domains = [set(range(k)) for _ in range(g.n)]
    color = [-1] * g.n

    def search(i):
        if i == len(order):
            return True
        v = order[i]
        for c in sorted(domains[v]):
            pruned = []
            ok = True
            for u in g.adjacency[v]:
                if color[u] < 0 and c in domains[u]:
                    domains[u].discard(c)
                    pruned.append(u)
                    if not domains[u]:
                        ok = False
                        break
            if ok:
                color[v] = c
                if search(i + 1):
                    return True
                color[v] = -1
            for u in pruned:
                domains[u].add(c)
        return False

    if search(0):
        return True, Coloring(np.array(color, dtype=np.int64), k)
    return False, None


def min_energy_exhaustive(g: Graph, k: int, chunk: int = 1 << 18) -> int:
    """Minimum number of monochromatic edges over all ``k**n`` colorings."""
    total = k ** g.n
    if total > MAX_ENUMERATION:
        raise InstanceTooLarge(f"{k}^{g.n} colorings exceeds {MAX_ENUMERATION}")
    edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    if edges.size == 0 or g.n == 0:
        return 0
    powers = k ** np.arange(g.n, dtype=np.int64)
    best = len(edges)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (codes[:, None] // powers[None, :]) % k
        bad = (digits[:, edges[:, 0]] == digits[:, edges[:, 1]]).sum(axis=1)
        best = min(best, int(bad.min()))
        if best == 0:
            break
    return best
