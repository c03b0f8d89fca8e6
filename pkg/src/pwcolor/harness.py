"""Batch sweeps over random-graph families and critical-region metrics.

A sweep visits every grid point, draws ``samples`` independent planted
graphs, runs one solver per graph and basis, and folds the step counts into
one :class:`SweepRow` per (point, basis). Runs that hit the budget count as
``max_steps`` and unsuccessful.

Seeds are derived from ``(master_seed, point index, sample index)``, so the
rows do not depend on how many worker processes are used.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .graph import (
    GenerationError,
    GraphError,
    degree_to_p,
    generate_partite,
    generate_regular,
    regular_infeasibility,
)
from .rng import derive_seed
from .solvers import SOLVERS, SolverParams

CSV_HEADER = [
    "family", "n", "k", "p_or_d", "b", "solver", "avg_degree", "conj_old",
    "conj_new", "samples", "mean_steps", "median_steps", "q90_steps",
    "success_rate", "mean_final_energy",
]

REGULAR_RESEEDS = 5


@dataclass(frozen=True)
class CriticalMetrics:
    conjecture_old: float
    avg_degree: float
    conjecture_new: float


def critical_metrics(n: int, k: int, p: float, shift: float = 1.5) -> CriticalMetrics:
    """``2pn/k``, ``np(k-1)/k`` and ``np/(k - shift)`` for G(n, k, p)."""
    return CriticalMetrics(
        conjecture_old=2.0 * p * n / k,
        avg_degree=n * p * (k - 1) / k,
        conjecture_new=n * p / (k - shift),
    )


@dataclass(frozen=True)
class GridPoint:
    family: str
    n: int
    k: int
    x: float  # p for partite, d for regular
    samples: int | None = None

    @property
    def p_equiv(self) -> float:
        """Edge probability with the same expected average degree."""
        if self.family == "partite":
            return float(self.x)
        return self.x * self.k / (self.n * (self.k - 1))


@dataclass
class SweepConfig:
    grid: list[GridPoint]
    solver: str = "mppw"
    b_values: list[float] = field(default_factory=lambda: [4.0])
    samples_per_point: int = 300
    max_steps: int | None = None
    master_seed: int = 0
    workers: int = 1
    phase1_recolor_prob: float = 0.6
    name: str = "custom"

    def __post_init__(self):
        if not self.grid:
            raise ValueError("sweep grid is empty")
        if self.samples_per_point < 1:
            raise ValueError("samples_per_point must be at least 1")
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}")
        if not self.b_values:
            raise ValueError("b_values is empty")
        for pt in self.grid:
            if pt.family not in ("partite", "regular"):
                raise ValueError(f"unknown family {pt.family!r}")

    @property
    def family(self) -> str:
        return "+".join(sorted({pt.family for pt in self.grid}))

    def steps_budget(self, pt: GridPoint) -> int:
        if self.max_steps is not None:
            return self.max_steps
        return 200 * pt.n if self.solver == "sequential" else 1000

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid"] = [asdict(pt) for pt in self.grid]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        d = dict(d)
        d["grid"] = [GridPoint(**pt) for pt in d["grid"]]
        return cls(**d)


def partite_grid(n: int, k: int, degrees: Sequence[float], samples: int | None = None) -> list[GridPoint]:
    """Grid points for G(n, k, p) with p chosen to hit each average degree."""
    pts = []
    for dbar in degrees:
        try:
            p = degree_to_p(n, k, dbar)
        except GraphError:
            p = dbar * k / (n * (k - 1))  # kept so the row is flagged, not dropped
        pts.append(GridPoint("partite", n, k, float(p), samples))
    return pts


@dataclass
class SweepRow:
    family: str
    n: int
    k: int
    p_or_d: float
    b: float
    solver: str
    avg_degree: float
    conj_old: float
    conj_new: float
    samples: int
    mean_steps: float
    median_steps: float
    q90_steps: float
    success_rate: float
    mean_final_energy: float
    min_steps: float = math.nan
    max_steps: float = math.nan
    status: str = "ok"
    raw_steps: list[int] | None = None

    def metric(self, name: str) -> float:
        return float(getattr(self, name))


def _feasible(pt: GridPoint) -> str | None:
    if pt.family == "partite":
        if not 0.0 <= pt.x <= 1.0:
            return f"infeasible: p={pt.x:g} outside [0, 1]"
        if pt.k < 2 or pt.k > pt.n:
            return "infeasible: bad k"
        return None
    d = int(pt.x)
    if d != pt.x:
        return "infeasible: d must be an integer"
    reason = regular_infeasibility(pt.n, pt.k, d)
    return f"infeasible: {reason}" if reason else None


def _make_graph(pt: GridPoint, seed: int):
    if pt.family == "partite":
        return generate_partite(pt.n, pt.k, pt.x, seed=seed)
    for attempt in range(REGULAR_RESEEDS):
        try:
            return generate_regular(pt.n, pt.k, int(pt.x), seed=derive_seed(seed, attempt))
        except GenerationError:
            continue
    raise GenerationError(f"R({pt.n},{pt.k},{int(pt.x)}) failed after {REGULAR_RESEEDS} reseeds")


_CONFIG: SweepConfig | None = None


def _init_worker(config):
    global _CONFIG
    _CONFIG = config


def _run_job(args):
    """One graph, every basis. Returns [(steps, success, final_energy), ...]."""
    i, j = args
    config = _CONFIG
    pt = config.grid[i]
    g = _make_graph(pt, derive_seed(config.master_seed, i, j, 0))
    solver = SOLVERS[config.solver]
    budget = config.steps_budget(pt)
    out = []
    for b in config.b_values:
        params = SolverParams(
            k=pt.k, b=b, max_steps=budget, seed=derive_seed(config.master_seed, i, j, 1),
            phase1_recolor_prob=config.phase1_recolor_prob,
        )
        r = solver(g, params)
        steps = r.total_steps if r.success else budget
        out.append((steps, r.success, r.best_energy))
    return out


def _aggregate(pt, b, solver, results, raw):
    m = critical_metrics(pt.n, pt.k, pt.p_equiv)
    steps = np.array([s for s, _, _ in results], dtype=np.float64)
    return SweepRow(
        family=pt.family, n=pt.n, k=pt.k, p_or_d=pt.x, b=b, solver=solver,
        avg_degree=m.avg_degree if pt.family == "partite" else float(pt.x),
        conj_old=m.conjecture_old, conj_new=m.conjecture_new,
        samples=len(results),
        mean_steps=float(steps.mean()),
        median_steps=float(np.median(steps)),
        q90_steps=float(np.quantile(steps, 0.9)),
        success_rate=sum(ok for _, ok, _ in results) / len(results),
        mean_final_energy=float(np.mean([e for _, _, e in results])),
        min_steps=float(steps.min()), max_steps=float(steps.max()),
        raw_steps=[int(s) for s in steps] if raw else None,
    )


def _flagged(pt, b, solver, status):
    m = critical_metrics(pt.n, pt.k, pt.p_equiv)
    nan = math.nan
    return SweepRow(
        pt.family, pt.n, pt.k, pt.x, b, solver,
        m.avg_degree if pt.family == "partite" else float(pt.x),
        m.conjecture_old, m.conjecture_new, 0, nan, nan, nan, nan, nan, status=status,
    )


def run_sweep(config: SweepConfig, raw: bool = False, progress: Callable | None = None) -> list[SweepRow]:
    jobs, status = [], {}
    for i, pt in enumerate(config.grid):
        bad = _feasible(pt)
        if bad:
            status[i] = bad
            continue
        for j in range(pt.samples or config.samples_per_point):
            jobs.append((i, j))

    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(
            max_workers=config.workers, initializer=_init_worker, initargs=(config,)
        ) as pool:
            chunk = max(1, len(jobs) // (config.workers * 8))
            results = list(pool.map(_run_job, jobs, chunksize=chunk))
    else:
        _init_worker(config)
        results = []
        for job in jobs:
            results.append(_run_job(job))
            if progress:
                progress(len(results), len(jobs))

    by_point: dict[int, list] = {}
    for (i, _), res in zip(jobs, results):
        by_point.setdefault(i, []).append(res)

    rows = []
    for i, pt in enumerate(config.grid):
        for bi, b in enumerate(config.b_values):
            if i in status:
                rows.append(_flagged(pt, b, config.solver, status[i]))
            else:
                rows.append(_aggregate(pt, b, config.solver, [r[bi] for r in by_point[i]], raw))
    return rows


@dataclass(frozen=True)
class Peak:
    x: float
    mean_steps: float
    boundary: bool


def find_peak(rows: Sequence[SweepRow], x_axis: str | Callable[[SweepRow], float] = "avg_degree") -> Peak:
    """Location of the largest ``mean_steps``, refined by a parabola through its neighbors.

    A maximum at either end of the axis is returned as-is with
    ``boundary=True``. Ties (e.g. a plateau at the step budget) resolve to
    the middle of the tied run.
    """
    pick = x_axis if callable(x_axis) else (lambda r: r.metric(x_axis))
    pts = sorted(
        ((pick(r), r.mean_steps) for r in rows if r.samples > 0 and not math.isnan(r.mean_steps)),
        key=lambda t: t[0],
    )
    if len(pts) < 3:
        raise ValueError("find_peak needs at least 3 rows")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    top = np.flatnonzero(ys == ys.max())
    if top.size > 1:
        lo, hi = top[0], top[-1]
        return Peak(float((xs[lo] + xs[hi]) / 2), float(ys.max()), bool(lo == 0 or hi == len(xs) - 1))
    i = int(top[0])
    if i == 0 or i == len(xs) - 1:
        return Peak(float(xs[i]), float(ys[i]), True)
    x0, x1, x2 = xs[i - 1:i + 2]
    y0, y1, y2 = ys[i - 1:i + 2]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    bq = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom
    if a >= 0:
        return Peak(float(x1), float(y1), False)
    c = y1 - a * x1 * x1 - bq * x1
    # concave and the middle point is highest, so the vertex lies in [x0, x2]
    xv = -bq / (2 * a)
    return Peak(float(xv), float(a * xv * xv + bq * xv + c), False)


# presets ---------------------------------------------------------------------

def _arange(lo, hi, step):
    return [round(float(x), 10) for x in np.arange(lo, hi + step / 2, step)]


def _scaled(samples, scale):
    return max(1, int(round(samples * scale)))


def preset(name: str, scale: float = 1.0) -> SweepConfig:
    """Sweep grids reproducing the published experiments.

    ``scale`` multiplies every sample count (``scale=0.03`` gives a desk-sized run).
    """
    if name == "fig1":
        # parallel steps vs n at the hard point and on both sides of it
        grid = [
            pt
            for dbar in (3.2, 4.6, 8.0)
            for n in (100, 300, 1000, 3000, 10000)
            for pt in partite_grid(n, 3, [dbar])
        ]
        return SweepConfig(grid, samples_per_point=_scaled(1000, scale), name=name)
    if name == "fig2":
        degrees = _arange(2.0, 9.0, 0.1)
        grid = []
        for n in (90, 120, 300, 3000):
            grid += partite_grid(n, 3, degrees, _scaled(2000 if n == 3000 else 10000, scale))
        return SweepConfig(grid, samples_per_point=_scaled(10000, scale), name=name)
    if name == "fig34":
        grid = partite_grid(120, 3, [3.2, 4.4, 8.0])
        grid += [GridPoint("regular", 120, 3, float(d)) for d in range(2, 9)]
        return SweepConfig(
            grid, b_values=[float(b) for b in range(2, 11)],
            samples_per_point=_scaled(1000, scale), name=name,
        )
    if name == "fig5-8":
        grid = []
        for n in (60, 120, 240):
            for k in range(3, 9):
                for x in _arange(2.0, 8.0, 0.25):
                    grid.append(GridPoint("partite", n, k, x * (k - 1.5) / n))
        return SweepConfig(grid, samples_per_point=_scaled(5000, scale), name=name)
    raise ValueError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")


PRESETS = {
    "fig1": "parallel steps vs n, G(n,3,p) at average degree 3.2 / 4.6 / 8.0",
    "fig2": "steps vs average degree 2..9, G(n,3,p), n in 90/120/300/3000",
    "fig34": "basis b=2..10 on G(120,3,p) at degree 3.2/4.4/8.0 and R(120,3,d), d=2..8",
    "fig5-8": "k=3..8, n in 60/120/240, p spanning np/(k-1.5) in [2, 8]",
}


# output ----------------------------------------------------------------------

def _fmt(x):
    if isinstance(x, float):
        return "nan" if math.isnan(x) else repr(float(x))
    return str(x)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(getattr(r, h)) for h in CSV_HEADER])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow], config: SweepConfig) -> str:
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    out = []
    for r in rows:
        d = {key: clean(v) for key, v in asdict(r).items()}
        if d["raw_steps"] is None:
            del d["raw_steps"]
        out.append(d)
    return json.dumps({"config": config.to_dict(), "rows": out}, indent=1)
