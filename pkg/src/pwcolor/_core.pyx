# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled solver loops. Must stay arithmetic-for-arithmetic identical to _fallback.py."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0

cdef int SEQ = 2
cdef int SLOT_COLOR = 0
cdef int SLOT_GATE = 1
cdef int SLOT_PICK = 2


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * M1
    z = (z ^ (z >> 27)) * M2
    return z ^ (z >> 31)


cdef inline uint64_t step(uint64_t h, uint64_t x) nogil:
    return mix64((h ^ x) + GOLDEN)


cdef inline uint64_t key(uint64_t seed, uint64_t stream, uint64_t counter) nogil:
    cdef uint64_t h = mix64(seed + GOLDEN)
    h = step(h, stream)
    return step(h, counter)


cdef inline double uniform_at(uint64_t k, uint64_t vertex, uint64_t slot) nogil:
    return <double>(step(step(k, vertex), slot) >> 11) * INV_2_53


cdef inline int64_t pick_color(const int64_t[::1] indptr, const int64_t[::1] indices,
                               int64_t[::1] col, int64_t v, int64_t C,
                               const double[::1] weights, int64_t* S, double* cum,
                               double u) nogil:
    cdef int64_t i, j, smin
    cdef double acc, target
    for i in range(C):
        S[i] = 0
    for j in range(indptr[v], indptr[v + 1]):
        S[col[indices[j]]] += 1
    smin = S[0]
    for i in range(1, C):
        if S[i] < smin:
            smin = S[i]
    acc = 0.0
    for i in range(C):
        acc = acc + weights[S[i] - smin]
        cum[i] = acc
    target = u * cum[C - 1]
    for i in range(C):
        if target < cum[i]:
            return i
    return C - 1


def run_sequential(const int64_t[::1] indptr, const int64_t[::1] indices,
                   int64_t[::1] col, int64_t C, const double[::1] weights,
                   uint64_t seed, int64_t max_steps, bint trace):
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t v, u, j, t, old, new, cu, s_old, s_new, i, nbad, last
    cdef int64_t energy = 0, best
    cdef uint64_t kt
    cdef int64_t[::1] conf = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] pos = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] bad = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t* S = <int64_t*> malloc(C * sizeof(int64_t))
    cdef double* cum = <double*> malloc(C * sizeof(double))
    cdef int64_t[:, ::1] tr
    best_col = np.asarray(col).copy()
    if trace:
        tr = np.zeros((max_steps + 1, 3), dtype=np.int64)

    nbad = 0
    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            if col[indices[j]] == col[v]:
                conf[v] += 1
        energy += conf[v]
        if conf[v] > 0:
            pos[v] = nbad
            bad[nbad] = v
            nbad += 1
    energy //= 2
    best = energy
    if trace:
        tr[0, 0] = 0
        tr[0, 1] = energy
        tr[0, 2] = nbad

    t = 0
    try:
        with nogil:
            while energy > 0 and t < max_steps:
                kt = key(seed, SEQ, t)
                v = bad[<int64_t>(uniform_at(kt, 0, SLOT_PICK) * <double>nbad)]
                new = pick_color(indptr, indices, col, v, C, weights, S, cum,
                                 uniform_at(kt, 0, SLOT_COLOR))
                old = col[v]
                t += 1
                if new != old:
                    s_old = 0
                    s_new = 0
                    for j in range(indptr[v], indptr[v + 1]):
                        u = indices[j]
                        cu = col[u]
                        if cu == old:
                            s_old += 1
                            conf[u] -= 1
                            if conf[u] == 0:
                                # swap-remove u
                                i = pos[u]
                                nbad -= 1
                                last = bad[nbad]
                                if last != u:
                                    bad[i] = last
                                    pos[last] = i
                                pos[u] = -1
                        elif cu == new:
                            s_new += 1
                            conf[u] += 1
                            if conf[u] == 1:
                                pos[u] = nbad
                                bad[nbad] = u
                                nbad += 1
                    col[v] = new
                    if conf[v] > 0 and s_new == 0:
                        i = pos[v]
                        nbad -= 1
                        last = bad[nbad]
                        if last != v:
                            bad[i] = last
                            pos[last] = i
                        pos[v] = -1
                    elif conf[v] == 0 and s_new > 0:
                        pos[v] = nbad
                        bad[nbad] = v
                        nbad += 1
                    conf[v] = s_new
                    energy += s_new - s_old
                    if energy < best:
                        best = energy
                        with gil:
                            best_col[:] = col
                if trace:
                    tr[t, 0] = t
                    tr[t, 1] = energy
                    tr[t, 2] = nbad
    finally:
        free(S)
        free(cum)
    trace_out = np.asarray(tr)[:t + 1].copy() if trace else None
    return t, best, best_col, trace_out


def run_rounds(const int64_t[::1] indptr, const int64_t[::1] indices,
               int64_t[::1] col, int64_t C, const double[::1] weights,
               uint64_t seed, uint64_t stream, int64_t max_rounds,
               double gate_prob, const int64_t[::1] schedule, int64_t period,
               bint trace, bint check_independent):
    cdef int64_t n = indptr.shape[0] - 1
    cdef int64_t v, u, j, r, a, nf, nch, new, energy = 0, nbad = 0, best, c
    cdef int64_t violations = 0
    cdef int64_t stamp = 0
    cdef uint64_t kr
    cdef bint use_schedule = schedule.shape[0] > 0
    cdef int64_t[::1] conf = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] fired = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] newcol = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] changed = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] mark = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t* S = <int64_t*> malloc(C * sizeof(int64_t))
    cdef double* cum = <double*> malloc(C * sizeof(double))
    cdef int64_t[:, ::1] tr
    best_col = np.asarray(col).copy()
    if trace:
        tr = np.zeros((max_rounds + 1, 3), dtype=np.int64)

    for v in range(n):
        for j in range(indptr[v], indptr[v + 1]):
            if col[indices[j]] == col[v]:
                conf[v] += 1
        energy += conf[v]
        if conf[v] > 0:
            nbad += 1
    energy //= 2
    best = energy
    if trace:
        tr[0, 0] = 0
        tr[0, 1] = energy
        tr[0, 2] = nbad

    r = 0
    try:
        with nogil:
            while energy > 0 and r < max_rounds:
                kr = key(seed, stream, r)
                nf = 0
                for v in range(n):
                    if conf[v] == 0:
                        continue
                    if use_schedule and schedule[v] != r % period:
                        continue
                    if gate_prob < 1.0 and not (uniform_at(kr, v, SLOT_GATE) < gate_prob):
                        continue
                    fired[nf] = v
                    newcol[nf] = pick_color(indptr, indices, col, v, C, weights, S, cum,
                                            uniform_at(kr, v, SLOT_COLOR))
                    nf += 1
                if check_independent and nf > 1:
                    stamp += 1
                    for a in range(nf):
                        mark[fired[a]] = stamp
                    for a in range(nf):
                        v = fired[a]
                        for j in range(indptr[v], indptr[v + 1]):
                            if mark[indices[j]] == stamp:
                                violations += 1
                                break
                # apply against the round-start snapshot
                nch = 0
                for a in range(nf):
                    v = fired[a]
                    if newcol[a] != col[v]:
                        col[v] = newcol[a]
                        changed[nch] = v
                        nch += 1
                if nch > 0:
                    stamp += 1
                    for a in range(nch):
                        v = changed[a]
                        mark[v] = stamp
                        for j in range(indptr[v], indptr[v + 1]):
                            mark[indices[j]] = stamp
                    energy = 0
                    nbad = 0
                    for v in range(n):
                        if mark[v] == stamp:
                            c = 0
                            for j in range(indptr[v], indptr[v + 1]):
                                if col[indices[j]] == col[v]:
                                    c += 1
                            conf[v] = c
                        energy += conf[v]
                        if conf[v] > 0:
                            nbad += 1
                    energy //= 2
                r += 1
                if energy < best:
                    best = energy
                    with gil:
                        best_col[:] = col
                if trace:
                    tr[r, 0] = r
                    tr[r, 1] = energy
                    tr[r, 2] = nbad
    finally:
        free(S)
        free(cum)
    trace_out = np.asarray(tr)[:r + 1].copy() if trace else None
    return r, best, best_col, trace_out, violations
