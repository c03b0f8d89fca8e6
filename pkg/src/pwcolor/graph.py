"""Planted k-colorable random graphs and edge-list I/O.

Two families are provided:

* ``generate_partite(n, k, p)`` -- vertices split into ``k`` near-equal
  partitions, every cross-partition pair joined independently with
  probability ``p``.
* ``generate_regular(n, k, d)`` -- every vertex gets degree exactly ``d``
  and all edges run between distinct partitions.

In both cases the partition labels are kept on the graph; they form a
proper k-coloring by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Invalid graph data or generator parameters."""


class GenerationError(RuntimeError):
    """A generator ran out of repair attempts; reseed and retry."""


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    planted: tuple[int, ...] | None = None
    k_planted: int | None = None
    m: int = field(init=False)
    indptr: np.ndarray = field(init=False, repr=False)
    indices: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency length does not match n")
        total = sum(len(a) for a in self.adjacency)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum([len(a) for a in self.adjacency], out=indptr[1:])
        indices = np.fromiter(
            (u for a in self.adjacency for u in a), dtype=np.int64, count=total
        )
        indptr.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, "m", total // 2)
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)
        if self.planted is not None:
            if len(self.planted) != self.n:
                raise GraphError("planted labels must cover every vertex")
            if self.k_planted is None:
                object.__setattr__(self, "k_planted", max(self.planted, default=-1) + 1)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        planted: Sequence[int] | None = None,
        k_planted: int | None = None,
    ) -> "Graph":
        """Build a graph, rejecting self-loops, duplicates and bad endpoints."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        if planted is not None:
            planted = tuple(int(x) for x in planted)
            if k_planted is not None and any(not 0 <= x < k_planted for x in planted):
                raise GraphError("planted label outside 0..k_planted-1")
        return cls(n, adjacency, planted, k_planted)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, a in enumerate(self.adjacency) for v in a if u < v]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def average_degree(self) -> float:
        return 2.0 * self.m / self.n if self.n else 0.0

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.adjacency == other.adjacency
            and self.planted == other.planted
            and self.k_planted == other.k_planted
        )

    def __hash__(self):
        return hash((self.n, self.adjacency, self.planted))


def partition_labels(n: int, k: int) -> np.ndarray:
    """Labels for ``k`` contiguous blocks; the first ``n % k`` blocks get one extra vertex."""
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    return np.repeat(np.arange(k), sizes)


def _check_nk(n: int, k: int) -> None:
    if k < 2 or k > n:
        raise GraphError(f"need 2 <= k <= n, got n={n}, k={k}")


def generate_partite(n: int, k: int, p: float, seed: int = 0) -> Graph:
    """Random graph G(n, k, p) with a planted k-partition."""
    _check_nk(n, k)
    if not 0.0 <= p <= 1.0 or math.isnan(p):
        raise GraphError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    labels = partition_labels(n, k)
    bounds = np.concatenate([[0], np.cumsum(np.bincount(labels, minlength=k))])
    us, vs = [], []
    for a in range(k):
        for b in range(a + 1, k):
            ra = np.arange(bounds[a], bounds[a + 1])
            rb = np.arange(bounds[b], bounds[b + 1])
            hit = rng.random((ra.size, rb.size)) < p
            ia, ib = np.nonzero(hit)
            us.append(ra[ia])
            vs.append(rb[ib])
    u = np.concatenate(us) if us else np.empty(0, dtype=np.int64)
    v = np.concatenate(vs) if vs else np.empty(0, dtype=np.int64)
    return _from_arrays(n, u, v, labels, k)


def _from_arrays(n, u, v, labels, k) -> Graph:
    # trusted input: simple, cross-partition edges only
    order = np.argsort(np.concatenate([u, v]), kind="stable")
    src = np.concatenate([u, v])[order]
    dst = np.concatenate([v, u])[order]
    counts = np.bincount(src, minlength=n)
    adjacency = []
    pos = 0
    for c in counts:
        adjacency.append(tuple(sorted(dst[pos:pos + c].tolist())))
        pos += c
    return Graph(n, tuple(adjacency), tuple(int(x) for x in labels), k)


def regular_infeasibility(n: int, k: int, d: int) -> str | None:
    """Why no d-regular graph fits the planted k-partition, or None if one may.

    Besides ``d <= n - ceil(n/k)`` and even ``n*d``, the edge count ``e``
    between the big (size s+1) and small (size s) partitions must leave each
    group a degree surplus that fits inside the group.
    """
    if k < 2 or k > n:
        return f"need 2 <= k <= n, got n={n}, k={k}"
    if d < 0:
        return "d must be non-negative"
    largest = -(-n // k)
    if d > n - largest:
        return f"d={d} infeasible: a vertex can reach at most {n - largest} others"
    if (n * d) % 2:
        return f"n*d = {n * d} is odd; no d-regular graph exists"
    if d == 0:
        return None
    s, r = n // k, n % k
    big, small = r * (s + 1), (k - r) * s
    lo = max(
        0,
        big * d - r * (r - 1) * (s + 1) ** 2,
        small * d - (k - r) * (k - r - 1) * s * s,
    )
    hi = min(big * d, small * d, big * small)
    if lo % 2 != (small * d) % 2:
        lo += 1
    if lo > hi:
        return f"no {d}-regular graph respects partition sizes {s + 1}x{r} and {s}x{k - r}"
    return None


def generate_regular(
    n: int, k: int, d: int, seed: int = 0, max_swaps: int | None = None
) -> Graph:
    """Random d-regular graph R(n, k, d) with a planted k-partition.

    Vertices are visited in random order and joined to random vertices of
    other partitions that still have free degree. Leftover deficient vertices
    are fixed by edge swaps: for deficient ``u``, ``v`` pick an edge
    ``u'v'`` with ``u'`` outside u's partition and ``v'`` outside v's, drop
    it and add ``uu'`` and ``vv'``. When no such edge turns up, ``u`` is
    joined to a random non-neighbor ``a`` and one of a's edges is dropped,
    moving the deficit elsewhere before trying again.

    Raises
    ------
    GraphError
        If no such graph can exist (``d`` too large or ``n*d`` odd).
    GenerationError
        If the swap repair exhausts its attempt budget (``50*n*d`` by default).
    """
    reason = regular_infeasibility(n, k, d)
    if reason:
        raise GraphError(reason)
    rng = np.random.default_rng(seed)
    labels = partition_labels(n, k).tolist()
    nbrs: list[set[int]] = [set() for _ in range(n)]

    # open vertices (degree < d) as a swap-remove list
    open_list = list(range(n)) if d > 0 else []
    open_pos = {v: i for i, v in enumerate(open_list)}

    def close(v):
        i = open_pos.pop(v)
        last = open_list.pop()
        if last != v:
            open_list[i] = last
            open_pos[last] = i

    def ok(u, w):
        return w != u and labels[w] != labels[u] and w not in nbrs[u]

    for u in rng.permutation(n).tolist():
        while len(nbrs[u]) < d:
            w = None
            for _ in range(8):
                cand = open_list[int(rng.integers(len(open_list)))]
                if ok(u, cand):
                    w = cand
                    break
            if w is None:
                choices = [x for x in open_list if ok(u, x)]
                if not choices:
                    break
                w = choices[int(rng.integers(len(choices)))]
            nbrs[u].add(w)
            nbrs[w].add(u)
            if len(nbrs[w]) == d:
                close(w)
        if len(nbrs[u]) == d and u in open_pos:
            close(u)

    if open_list:
        _repair(nbrs, labels, d, open_list, rng, max_swaps if max_swaps is not None else 50 * n * d)

    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    return Graph(n, adjacency, tuple(labels), k)


def _repair(nbrs, labels, d, open_list, rng, budget):
    n = len(nbrs)
    edges = [(a, b) for a, s in enumerate(nbrs) for b in s if a < b]
    index = {e: i for i, e in enumerate(edges)}

    def add(a, b):
        nbrs[a].add(b)
        nbrs[b].add(a)
        e = (min(a, b), max(a, b))
        index[e] = len(edges)
        edges.append(e)

    def remove(a, b):
        nbrs[a].discard(b)
        nbrs[b].discard(a)
        e = (min(a, b), max(a, b))
        i = index.pop(e)
        last = edges.pop()
        if last != e:
            edges[i] = last
            index[last] = i

    def settle(x, delta):
        deficit[x] = deficit.get(x, 0) + delta
        if deficit[x] == 0:
            del deficit[x]

    deficit = {v: d - len(nbrs[v]) for v in open_list}
    attempts = 0
    while deficit:
        # stub pairs: u may equal v when u is short by two or more
        stubs = [v for v, c in sorted(deficit.items()) for _ in range(c)]
        i, j = rng.choice(len(stubs), size=2, replace=False)
        u, v = stubs[i], stubs[j]
        if u != v and labels[u] != labels[v] and v not in nbrs[u]:
            add(u, v)
            settle(u, -1)
            settle(v, -1)
            continue
        swapped = False
        for _ in range(min(len(edges), 4 * n)):
            attempts += 1
            if attempts > budget:
                raise GenerationError(f"regular repair failed after {budget} candidate swaps")
            a, b = edges[int(rng.integers(len(edges)))]
            if rng.random() < 0.5:
                a, b = b, a
            # drop a-b, add u-a and v-b
            if (
                a != u and b != v
                and labels[a] != labels[u] and labels[b] != labels[v]
                and a not in nbrs[u] and b not in nbrs[v]
            ):
                remove(a, b)
                add(u, a)
                add(v, b)
                settle(u, -1)
                settle(v, -1)
                swapped = True
                break
        if swapped:
            continue
        # no swap fits: hand one unit of u's deficit to a neighbor of some non-neighbor a
        attempts += 1
        if attempts > budget:
            raise GenerationError(f"regular repair failed after {budget} candidate swaps")
        cands = [a for a in range(n) if a != u and labels[a] != labels[u] and a not in nbrs[u]]
        a = cands[int(rng.integers(len(cands)))]
        if a in deficit:
            add(u, a)
            settle(a, -1)
        else:
            nb = sorted(nbrs[a])
            x = nb[int(rng.integers(len(nb)))]
            remove(a, x)
            add(u, a)
            settle(x, +1)
        settle(u, -1)


def expected_average_degree(n: int, k: int, p: float) -> float:
    return n * p * (k - 1) / k


def degree_to_p(n: int, k: int, dbar: float) -> float:
    """Edge probability giving expected average degree ``dbar`` in G(n, k, p)."""
    p = dbar * k / (n * (k - 1))
    if p > 1.0 or p < 0.0:
        raise GraphError(f"average degree {dbar} needs p = {p:g}, outside [0, 1]")
    return p


def write_graph(g: Graph, path) -> None:
    lines = [f"{g.n} {g.m} {g.k_planted if g.k_planted is not None else 0}"]
    if g.planted is not None:
        lines.append("labels " + " ".join(map(str, g.planted)))
    lines.extend(f"{u} {v}" for u, v in g.edges())
    Path(path).write_text("\n".join(lines) + "\n")


def read_graph(path) -> Graph:
    raw = [ln.split() for ln in Path(path).read_text().splitlines()]
    rows = [r for r in raw if r and not r[0].startswith("#")]
    if not rows:
        raise GraphError(f"{path}: empty file")
    try:
        n, m, kp = (int(x) for x in rows[0])
    except ValueError:
        raise GraphError(f"{path}: header must be 'n m k_planted'") from None
    body = rows[1:]
    planted = None
    if body and body[0][0] == "labels":
        planted = [int(x) for x in body[0][1:]]
        if len(planted) != n:
            raise GraphError(f"{path}: {len(planted)} labels for {n} vertices")
        body = body[1:]
    if len(body) != m:
        raise GraphError(f"{path}: header says {m} edges, found {len(body)}")
    edges = []
    for r in body:
        if len(r) != 2:
            raise GraphError(f"{path}: malformed edge line {' '.join(r)!r}")
        u, v = int(r[0]), int(r[1])
        edges.append((u, v))
    return Graph.from_edges(n, edges, planted, kp if planted is not None else None)
