"""Counter-based random numbers.

Every random draw is a pure function of ``(seed, stream, counter, vertex, slot)``
hashed through the splitmix64 finalizer. Because there is no hidden generator
state, a round of the parallel solvers gives the same result in whatever
order (or on however many threads) its vertices are processed, and the
compiled core and the Python fallback agree bit for bit.
"""
import numpy as np

MASK = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
INV_2_53 = 1.0 / 9007199254740992.0

# stream ids, one per (algorithm, purpose)
INIT_SEQ, SEQ = 1, 2
INIT_NAIVE, NAIVE = 3, 4
INIT_P1, P1 = 5, 6
INIT_P2, P2 = 7, 8

# slot ids inside one (counter, vertex) cell
SLOT_COLOR = 0
SLOT_GATE = 1
SLOT_PICK = 2


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def _step(h: int, x: int) -> int:
    return mix64(((h ^ (int(x) & MASK)) + GOLDEN) & MASK)


def key(seed: int, stream: int, counter: int) -> int:
    """Hash prefix shared by all draws of one (seed, stream, counter) cell."""
    h = mix64((seed + GOLDEN) & MASK)
    h = _step(h, stream)
    return _step(h, counter)


def uniform(seed: int, stream: int, counter: int, vertex: int, slot: int) -> float:
    """A double in [0, 1) built from the top 53 bits of the hash."""
    h = _step(_step(key(seed, stream, counter), vertex), slot)
    return (h >> 11) * INV_2_53


def uniform_at(k: int, vertex: int, slot: int) -> float:
    return (_step(_step(k, vertex), slot) >> 11) * INV_2_53


# numpy versions; uint64 arithmetic wraps modulo 2**64 like the scalar code.

def _mix64_np(z):
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def uniform_array(k: int, vertices, slot: int) -> np.ndarray:
    """Vectorised :func:`uniform_at` over an array of vertex ids."""
    v = np.asarray(vertices, dtype=np.uint64)
    with np.errstate(over="ignore"):
        h = _mix64_np((np.uint64(k) ^ v) + np.uint64(GOLDEN))
        h = _mix64_np((h ^ np.uint64(slot)) + np.uint64(GOLDEN))
    return (h >> np.uint64(11)).astype(np.float64) * INV_2_53


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed (used for per-sample seeds in sweeps)."""
    h = mix64(GOLDEN)
    for p in parts:
        h = _step(h, p)
    return h
