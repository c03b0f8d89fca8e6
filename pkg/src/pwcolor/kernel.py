"""Coloring state, bad-edge accounting and the recoloring distribution.

A vertex whose neighbors use color ``i`` exactly ``S[i]`` times picks color
``i`` with probability proportional to ``b ** -S[i]``, where the basis
``b = exp(1/T)`` plays the role of an inverse temperature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass
class Coloring:
    colors: np.ndarray
    C: int

    def __post_init__(self):
        self.colors = np.asarray(self.colors, dtype=np.int64)
        if self.C < 1:
            raise ValueError("need at least one color")
        if self.colors.size and (self.colors.min() < 0 or self.colors.max() >= self.C):
            raise ValueError(f"color index outside 0..{self.C - 1}")

    def copy(self) -> "Coloring":
        return Coloring(self.colors.copy(), self.C)

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.C == other.C and np.array_equal(self.colors, other.colors)

    def to_text(self) -> str:
        return "\n".join([str(self.C), *map(str, self.colors.tolist())]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Coloring":
        rows = text.split()
        return cls(np.array([int(x) for x in rows[1:]], dtype=np.int64), int(rows[0]))


def energy(g: Graph, c) -> int:
    """Number of monochromatic edges."""
    col = np.asarray(getattr(c, "colors", c))
    if g.m == 0:
        return 0
    src = np.repeat(np.arange(g.n), np.diff(g.indptr))
    return int(np.count_nonzero(col[src] == col[g.indices])) // 2


def neighbor_color_counts(g: Graph, c, v: int, C: int) -> np.ndarray:
    col = np.asarray(getattr(c, "colors", c))
    nb = g.indices[g.indptr[v]:g.indptr[v + 1]]
    return np.bincount(col[nb], minlength=C)[:C]


def color_distribution(S, b: float) -> np.ndarray:
    """Normalized ``b ** -S`` with the smallest count shifted to zero."""
    S = np.asarray(S)
    if S.size == 0:
        raise ValueError("empty count vector")
    if not b > 1.0:
        raise ValueError(f"basis must exceed 1, got {b}")
    w = np.power(float(b), -(S - S.min()).astype(np.float64))
    return w / w.sum()


def weight_table(b: float, max_count: int) -> np.ndarray:
    """``b ** -s`` for ``s = 0..max_count``; the solvers index into this."""
    if not b > 1.0:
        raise ValueError(f"basis must exceed 1, got {b}")
    return np.array([float(b) ** -s for s in range(max_count + 1)], dtype=np.float64)


def pick_from_cumulative(cum, u: float) -> int:
    """First index whose running weight exceeds ``u * total``."""
    target = u * cum[-1]
    for i, x in enumerate(cum):
        if target < x:
            return i
    return len(cum) - 1


def sample_color(dist, rng) -> int:
    """Draw an index from ``dist``. ``rng`` is a numpy Generator or a uniform in [0, 1)."""
    u = rng if isinstance(rng, float) else float(rng.random())
    return pick_from_cumulative(np.cumsum(dist), u)


def basis_from_temperature(T: float) -> float:
    if not T > 0:
        raise ValueError(f"temperature must be positive, got {T}")
    return math.exp(1.0 / T)


def temperature_from_basis(b: float) -> float:
    if not b > 1:
        raise ValueError(f"basis must exceed 1, got {b}")
    return 1.0 / math.log(b)


class ConflictState:
    """Energy, per-vertex conflict counts and the indexable set of bad vertices.

    ``conf[v]`` is the number of neighbors sharing v's color; v is bad iff
    ``conf[v] > 0``. ``bad_list`` supports O(1) insert, delete and uniform
    sampling by index (swap-remove).
    """

    def __init__(self, g: Graph, c: Coloring):
        self.g = g
        self.c = c
        col = c.colors
        self.conf = np.zeros(g.n, dtype=np.int64)
        for v in range(g.n):
            nb = g.indices[g.indptr[v]:g.indptr[v + 1]]
            self.conf[v] = int(np.count_nonzero(col[nb] == col[v]))
        self.energy = int(self.conf.sum()) // 2
        self.bad_list: list[int] = []
        self.pos = np.full(g.n, -1, dtype=np.int64)
        for v in range(g.n):
            if self.conf[v] > 0:
                self._add(v)

    @property
    def bad_flags(self) -> np.ndarray:
        return self.conf > 0

    def _add(self, v):
        self.pos[v] = len(self.bad_list)
        self.bad_list.append(v)

    def _remove(self, v):
        i = self.pos[v]
        last = self.bad_list.pop()
        if last != v:
            self.bad_list[i] = last
            self.pos[last] = i
        self.pos[v] = -1

    def recolor(self, v: int, new: int) -> int:
        """Recolor ``v`` in place and return the energy decrease ``S[old] - S[new]``."""
        col = self.c.colors
        old = int(col[v])
        if new == old:
            return 0
        if not 0 <= new < self.c.C:
            raise ValueError(f"color {new} outside 0..{self.c.C - 1}")
        conf = self.conf
        s_old = s_new = 0
        for u in self.g.adjacency[v]:
            cu = col[u]
            if cu == old:
                s_old += 1
                conf[u] -= 1
                if conf[u] == 0:
                    self._remove(u)
            elif cu == new:
                s_new += 1
                conf[u] += 1
                if conf[u] == 1:
                    self._add(u)
        col[v] = new
        was_bad = conf[v] > 0
        conf[v] = s_new
        if was_bad and s_new == 0:
            self._remove(v)
        elif not was_bad and s_new > 0:
            self._add(v)
        self.energy += s_new - s_old
        return s_old - s_new

    def check(self) -> bool:
        """Compare against a from-scratch recount."""
        fresh = ConflictState(self.g, self.c)
        return (
            fresh.energy == self.energy
            and np.array_equal(fresh.conf, self.conf)
            and sorted(fresh.bad_list) == sorted(self.bad_list)
            and all(self.bad_list[self.pos[v]] == v for v in self.bad_list)
        )


def recolor(g: Graph, c: Coloring, state: ConflictState, v: int, new_color: int) -> int:
    if state.c is not c or state.g is not g:
        raise ValueError("state was built for a different graph or coloring")
    return state.recolor(v, new_color)
