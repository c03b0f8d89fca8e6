"""Pure Python/numpy solver loops, used when the compiled core is unavailable.

Same signatures and the same floating-point operations as ``_core.pyx``, so
both produce identical results for identical inputs.
"""
import numpy as np

from . import rng as R
from .kernel import ConflictState, Coloring, pick_from_cumulative


class _CSRView:
    # minimal graph stand-in for ConflictState
    def __init__(self, indptr, indices):
        self.indptr = np.asarray(indptr)
        self.indices = np.asarray(indices)
        self.n = self.indptr.size - 1
        self.adjacency = [
            self.indices[self.indptr[v]:self.indptr[v + 1]].tolist() for v in range(self.n)
        ]


def _pick(adj, col, v, C, weights, u):
    S = [0] * C
    for w in adj[v]:
        S[col[w]] += 1
    smin = min(S)
    cum = []
    acc = 0.0
    for s in S:
        acc = acc + weights[s - smin]
        cum.append(acc)
    return pick_from_cumulative(cum, u)


def run_sequential(indptr, indices, col, C, weights, seed, max_steps, trace):
    g = _CSRView(indptr, indices)
    coloring = Coloring.__new__(Coloring)
    coloring.colors = col
    coloring.C = C
    st = ConflictState(g, coloring)
    weights = np.asarray(weights).tolist()
    best = st.energy
    best_col = np.array(col, copy=True)
    tr = [(0, st.energy, len(st.bad_list))] if trace else None
    seed &= R.MASK
    t = 0
    while st.energy > 0 and t < max_steps:
        kt = R.key(seed, R.SEQ, t)
        v = st.bad_list[int(R.uniform_at(kt, 0, R.SLOT_PICK) * float(len(st.bad_list)))]
        new = _pick(g.adjacency, col, v, C, weights, R.uniform_at(kt, 0, R.SLOT_COLOR))
        t += 1
        st.recolor(v, new)
        if st.energy < best:
            best = st.energy
            best_col[:] = col
        if trace:
            tr.append((t, st.energy, len(st.bad_list)))
    return t, best, best_col, (np.array(tr, dtype=np.int64) if trace else None)


def _conflicts(indptr, indices, col):
    src = np.repeat(np.arange(indptr.size - 1), np.diff(indptr))
    same = col[src] == col[indices]
    return np.bincount(src[same], minlength=indptr.size - 1).astype(np.int64)


def run_rounds(indptr, indices, col, C, weights, seed, stream, max_rounds,
               gate_prob, schedule, period, trace, check_independent):
    indptr = np.asarray(indptr)
    indices = np.asarray(indices)
    weights = np.asarray(weights)
    schedule = np.asarray(schedule)
    seed &= R.MASK
    n = indptr.size - 1
    deg = np.diff(indptr)
    conf = _conflicts(indptr, indices, col)
    energy = int(conf.sum()) // 2
    best = energy
    best_col = np.array(col, copy=True)
    tr = [(0, energy, int(np.count_nonzero(conf)))] if trace else None
    violations = 0
    r = 0
    while energy > 0 and r < max_rounds:
        kr = R.key(seed, stream, r)
        F = np.flatnonzero(conf > 0)
        if schedule.size:
            F = F[schedule[F] == r % period]
        if gate_prob < 1.0 and F.size:
            F = F[R.uniform_array(kr, F, R.SLOT_GATE) < gate_prob]
        if F.size:
            lens = deg[F]
            rows = np.repeat(np.arange(F.size), lens)
            offs = np.arange(lens.sum()) - np.repeat(np.cumsum(lens) - lens, lens)
            nbrs = indices[np.repeat(indptr[F], lens) + offs]
            S = np.bincount(rows * C + col[nbrs], minlength=F.size * C).reshape(F.size, C)
            cum = np.cumsum(weights[S - S.min(axis=1, keepdims=True)], axis=1)
            target = R.uniform_array(kr, F, R.SLOT_COLOR) * cum[:, -1]
            hit = target[:, None] < cum
            new = np.where(hit.any(axis=1), hit.argmax(axis=1), C - 1)
            if check_independent and F.size > 1:
                fired = np.zeros(n, dtype=bool)
                fired[F] = True
                violations += int(np.count_nonzero(np.bincount(rows[fired[nbrs]], minlength=F.size)))
            col[F] = new
            conf = _conflicts(indptr, indices, col)
            energy = int(conf.sum()) // 2
        r += 1
        if energy < best:
            best = energy
            best_col[:] = col
        if trace:
            tr.append((r, energy, int(np.count_nonzero(conf))))
    return r, best, best_col, (np.array(tr, dtype=np.int64) if trace else None), violations
