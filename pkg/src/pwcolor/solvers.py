"""Petford-Welsh recoloring heuristics.

``sequential_pw``
    One bad vertex per step, chosen uniformly, resamples its color.
``naive_parallel_pw``
    Every bad vertex resamples simultaneously against the round-start state.
``mppw``
    Two phases. Phase 1 runs damped synchronous rounds with ``2k`` colors;
    phase 2 then k-colors the graph, letting a bad vertex fire only in rounds
    ``r`` with ``r mod 2k`` equal to its phase-1 color, so each round's firing
    set is independent whenever phase 1 succeeded.

Parallel variants count rounds as steps. All randomness comes from the
counter-based hash in :mod:`pwcolor.rng`, so results depend only on the
inputs and seed.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from . import rng as R
from .graph import Graph
from .kernel import Coloring, basis_from_temperature, weight_table

PHASE_SINGLE = 1
PHASE_TWO = 2


@dataclass(frozen=True)
class SolverParams:
    k: int
    b: float = 4.0
    max_steps: int = 1000
    phase1_recolor_prob: float = 0.6
    seed: int = 0
    trace: bool = False
    phase1_budget: int | None = None
    backend: str | None = None

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if not self.b > 1.0:
            raise ValueError(f"basis must exceed 1, got {self.b}")
        if not 0.0 < self.phase1_recolor_prob <= 1.0:
            raise ValueError("phase1_recolor_prob must lie in (0, 1]")
        if self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")
        if self.phase1_budget is not None and not 0 <= self.phase1_budget <= self.max_steps:
            raise ValueError("phase1_budget must lie in 0..max_steps")

    @classmethod
    def from_temperature(cls, k: int, T: float, **kw) -> "SolverParams":
        return cls(k=k, b=basis_from_temperature(T), **kw)

    @property
    def budgets(self) -> tuple[int, int]:
        """(phase-1 rounds, phase-2 rounds) for mppw."""
        p1 = self.max_steps // 2 if self.phase1_budget is None else self.phase1_budget
        return p1, self.max_steps - p1


@dataclass
class RunResult:
    success: bool
    steps: int
    best_energy: int
    best_coloring: Coloring
    phase1_steps: int = 0
    phase1_energy: int = 0
    schedule_conflicts: int = 0
    trace: np.ndarray | None = field(default=None, repr=False)

    @property
    def total_steps(self) -> int:
        return self.steps + self.phase1_steps

    def trace_csv(self) -> str:
        """Trace as ``step,phase,energy,bad_count`` lines."""
        buf = io.StringIO()
        buf.write("step,phase,energy,bad_count\n")
        if self.trace is not None:
            for row in self.trace.tolist():
                buf.write(",".join(map(str, row)) + "\n")
        return buf.getvalue()


def random_coloring(n: int, C: int, seed: int, stream: int) -> Coloring:
    """Uniform i.i.d. colors drawn from the counter-based hash."""
    k0 = R.key(seed & R.MASK, stream, 0)
    u = R.uniform_array(k0, np.arange(n), R.SLOT_COLOR)
    return Coloring((u * C).astype(np.int64), C)


def _table(g: Graph, b: float) -> np.ndarray:
    return weight_table(b, max(g.max_degree(), 1))


def _with_phase(trace, phase):
    if trace is None:
        return None
    return np.column_stack([trace[:, 0], np.full(len(trace), phase), trace[:, 1:]])


def _initial(g, C, params, stream, initial):
    if initial is None:
        return random_coloring(g.n, C, params.seed, stream)
    if initial.C != C or initial.colors.size != g.n:
        raise ValueError("initial coloring does not match the graph / color count")
    return initial.copy()


def sequential_pw(g: Graph, params: SolverParams, initial: Coloring | None = None) -> RunResult:
    k = params.k
    c = _initial(g, k, params, R.INIT_SEQ, initial)
    impl = _backend.get(params.backend)
    steps, best, best_col, tr = impl.run_sequential(
        g.indptr, g.indices, c.colors, k, _table(g, params.b),
        params.seed & R.MASK, params.max_steps, params.trace,
    )
    return RunResult(
        success=best == 0, steps=int(steps), best_energy=int(best),
        best_coloring=Coloring(best_col, k), trace=_with_phase(tr, PHASE_SINGLE),
    )


def _rounds(g, c, params, stream, max_rounds, gate, schedule=None, period=1, check=False):
    impl = _backend.get(params.backend)
    sched = np.empty(0, dtype=np.int64) if schedule is None else np.ascontiguousarray(schedule, dtype=np.int64)
    return impl.run_rounds(
        g.indptr, g.indices, c.colors, c.C, _table(g, params.b),
        params.seed & R.MASK, stream, max_rounds, float(gate), sched, period,
        params.trace, check,
    )


def naive_parallel_pw(g: Graph, params: SolverParams, initial: Coloring | None = None) -> RunResult:
    k = params.k
    c = _initial(g, k, params, R.INIT_NAIVE, initial)
    rounds, best, best_col, tr, _ = _rounds(g, c, params, R.NAIVE, params.max_steps, 1.0)
    return RunResult(
        success=best == 0, steps=int(rounds), best_energy=int(best),
        best_coloring=Coloring(best_col, k), trace=_with_phase(tr, PHASE_SINGLE),
    )


def _phase1(g, params, budget):
    C = 2 * params.k
    c = random_coloring(g.n, C, params.seed, R.INIT_P1)
    rounds, best, best_col, tr, _ = _rounds(g, c, params, R.P1, budget, params.phase1_recolor_prob)
    return Coloring(best_col, C), int(rounds), int(best), tr


def mppw_phase1(g: Graph, params: SolverParams, budget: int | None = None) -> tuple[Coloring, int]:
    """Damped synchronous rounds over ``2k`` colors.

    Returns the best 2k-coloring seen (proper if the phase succeeded) and the
    number of rounds used. ``budget`` defaults to the phase-1 share of
    ``params.max_steps``.
    """
    c, rounds, _, _ = _phase1(g, params, params.budgets[0] if budget is None else budget)
    return c, rounds


def mppw(g: Graph, params: SolverParams) -> RunResult:
    b1, b2 = params.budgets
    schedule, p1_rounds, p1_energy, tr1 = _phase1(g, params, b1)
    k = params.k
    c = random_coloring(g.n, k, params.seed, R.INIT_P2)
    rounds, best, best_col, tr2, conflicts = _rounds(
        g, c, params, R.P2, b2, 1.0, schedule.colors, 2 * k, check=params.trace,
    )
    trace = None
    if params.trace:
        trace = np.vstack([_with_phase(tr1, 1), _with_phase(tr2, PHASE_TWO)])
    return RunResult(
        success=best == 0, steps=int(rounds), best_energy=int(best),
        best_coloring=Coloring(best_col, k), phase1_steps=p1_rounds,
        phase1_energy=p1_energy, schedule_conflicts=int(conflicts), trace=trace,
    )


SOLVERS = {
    "sequential": sequential_pw,
    "naive": naive_parallel_pw,
    "mppw": mppw,
}


def solve(g: Graph, params: SolverParams, algorithm: str = "mppw") -> RunResult:
    try:
        fn = SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(SOLVERS)}") from None
    return fn(g, params)
