"""Command-line interface.

Exit codes: 0 solved / ok, 1 not solved within budget (or not colorable),
2 bad arguments or infeasible parameters, 3 runtime failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import harness
from .graph import (
    GenerationError,
    GraphError,
    degree_to_p,
    generate_partite,
    generate_regular,
    read_graph,
    write_graph,
)
from .harness import GridPoint, SweepConfig
from .kernel import basis_from_temperature
from .oracle import InstanceTooLarge, brute_force_colorable, min_energy_exhaustive
from .solvers import SOLVERS, SolverParams

EXIT_OK, EXIT_UNSOLVED, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PWCOLOR_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"PWCOLOR_SEED={env!r} is not an integer") from None


def _floats(spec: str) -> list[float]:
    """``"2:9:0.5"`` (inclusive range) or ``"3.2,4.4,8"``."""
    if ":" in spec:
        lo, hi, step = (float(x) for x in spec.split(":"))
        return harness._arange(lo, hi, step)
    return [float(x) for x in spec.split(",") if x]


def cmd_generate(args) -> int:
    seed = _seed(args)
    if args.family == "partite":
        if (args.p is None) == (args.dbar is None):
            raise UsageError("partite needs exactly one of --p / --dbar")
        p = args.p if args.p is not None else degree_to_p(args.n, args.k, args.dbar)
        g = generate_partite(args.n, args.k, p, seed=seed)
        peq = p
    else:
        if args.d is None:
            raise UsageError("regular needs --d")
        g = generate_regular(args.n, args.k, args.d, seed=seed)
        peq = args.d * args.k / (args.n * (args.k - 1))
    if args.out:
        write_graph(g, args.out)
    m = harness.critical_metrics(g.n, args.k, peq)
    print(
        f"n={g.n} m={g.m} avg_degree={g.average_degree():.6g} "
        f"conj_old={m.conjecture_old:.6g} conj_new={m.conjecture_new:.6g}"
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    k = args.k or g.k_planted
    if not k:
        raise UsageError("--k is required for graphs without planted labels")
    b = basis_from_temperature(args.T) if args.T is not None else args.b
    params = SolverParams(
        k=k, b=b, max_steps=args.max_steps, phase1_recolor_prob=args.phase1_prob,
        seed=_seed(args), trace=args.trace is not None, backend=args.backend,
    )
    r = SOLVERS[args.algo](g, params)
    if args.trace:
        Path(args.trace).write_text(r.trace_csv())
    if args.dump:
        Path(args.dump).write_text(r.best_coloring.to_text())
    print(f"{'true' if r.success else 'false'} {r.total_steps} {r.best_energy}")
    if args.algo == "mppw":
        print(f"phase1_steps={r.phase1_steps} phase2_steps={r.steps}", file=sys.stderr)
    return EXIT_OK if r.success else EXIT_UNSOLVED


def _sweep_config(args) -> SweepConfig:
    if args.config:
        cfg = SweepConfig.from_dict(json.loads(Path(args.config).read_text()))
    elif args.preset:
        cfg = harness.preset(args.preset, args.scale)
    else:
        if args.n is None or args.k is None:
            raise UsageError("give --preset, --config, or --n/--k with a grid")
        if args.family == "partite":
            if args.dbar_grid:
                grid = harness.partite_grid(args.n, args.k, _floats(args.dbar_grid))
            elif args.p_grid:
                grid = [GridPoint("partite", args.n, args.k, p) for p in _floats(args.p_grid)]
            else:
                raise UsageError("partite sweep needs --dbar-grid or --p-grid")
        else:
            if not args.d_grid:
                raise UsageError("regular sweep needs --d-grid")
            grid = [GridPoint("regular", args.n, args.k, d) for d in _floats(args.d_grid)]
        cfg = SweepConfig(grid, samples_per_point=max(1, round(300 * args.scale)))
    overrides = {
        "solver": args.solver, "max_steps": args.max_steps, "workers": args.workers,
        "samples_per_point": args.samples,
        "b_values": _floats(args.b) if args.b else None,
    }
    for key, val in overrides.items():
        if val is not None:
            setattr(cfg, key, val)
    if args.seed is not None or os.environ.get("PWCOLOR_SEED") is not None:
        cfg.master_seed = _seed(args)
    cfg.__post_init__()
    return cfg


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    rows = harness.run_sweep(cfg, raw=args.raw)
    text = harness.rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(harness.rows_to_json(rows, cfg))
    if args.raw and args.csv:
        raw_path = Path(args.csv).with_suffix(".raw.csv")
        with raw_path.open("w") as fh:
            fh.write("row,steps\n")
            for i, r in enumerate(rows):
                for s in r.raw_steps or []:
                    fh.write(f"{i},{s}\n")
    return EXIT_OK


def cmd_preset_list(args) -> int:
    for name, desc in harness.PRESETS.items():
        print(f"{name}\t{desc}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    k = args.k or g.k_planted
    if not k:
        raise UsageError("--k is required for graphs without planted labels")
    if args.min_energy:
        e = min_energy_exhaustive(g, k)
        print(f"min_energy {e}")
        return EXIT_OK if e == 0 else EXIT_UNSOLVED
    ok, witness = brute_force_colorable(g, k)
    print(f"colorable {'true' if ok else 'false'}")
    if ok and args.dump:
        Path(args.dump).write_text(witness.to_text())
    return EXIT_OK if ok else EXIT_UNSOLVED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwcolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a planted random graph")
    p.add_argument("--family", choices=["partite", "regular"], default="partite")
    p.add_argument("--n", type=int, required=True, help="number of vertices")
    p.add_argument("--k", type=int, required=True, help="number of planted partitions")
    p.add_argument("--p", type=float, help="cross-partition edge probability (partite)")
    p.add_argument("--dbar", type=float, help="target average degree instead of --p (partite)")
    p.add_argument("--d", type=int, help="vertex degree (regular)")
    p.add_argument("--seed", type=int, help="rng seed (default: $PWCOLOR_SEED or 0)")
    p.add_argument("--out", help="edge-list file to write")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="run one solver on a graph file")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--k", type=int, help="number of colors (default: planted k)")
    p.add_argument("--algo", choices=sorted(SOLVERS), default="mppw")
    p.add_argument("--b", type=float, default=4.0, help="basis of b**-S weights (default 4)")
    p.add_argument("--T", type=float, help="temperature; overrides --b with b = exp(1/T)")
    p.add_argument("--max-steps", type=int, default=1000, help="step / round budget")
    p.add_argument("--phase1-prob", type=float, default=0.6, help="mppw phase-1 recolor probability")
    p.add_argument("--seed", type=int, help="rng seed (default: $PWCOLOR_SEED or 0)")
    p.add_argument("--trace", help="write step,phase,energy,bad_count CSV here")
    p.add_argument("--dump", help="write the best coloring here")
    p.add_argument("--backend", choices=["cython", "python"], help="force a kernel backend")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="run a parameter sweep and emit CSV")
    p.add_argument("--preset", choices=sorted(harness.PRESETS))
    p.add_argument("--config", help="JSON SweepConfig file")
    p.add_argument("--scale", type=float, default=1.0, help="multiply preset sample counts")
    p.add_argument("--family", choices=["partite", "regular"], default="partite")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--dbar-grid", help="average degrees, lo:hi:step or comma list")
    p.add_argument("--p-grid", help="edge probabilities, lo:hi:step or comma list")
    p.add_argument("--d-grid", help="regular degrees, lo:hi:step or comma list")
    p.add_argument("--solver", choices=sorted(SOLVERS))
    p.add_argument("--b", help="basis values, lo:hi:step or comma list")
    p.add_argument("--samples", type=int, help="samples per grid point")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--seed", type=int, help="master seed (default: $PWCOLOR_SEED or 0)")
    p.add_argument("--workers", type=int, help="worker processes")
    p.add_argument("--csv", help="CSV output path (default stdout)")
    p.add_argument("--json", help="also write rows + config as JSON")
    p.add_argument("--raw", action="store_true", help="keep per-sample step counts")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset-list", help="list sweep presets")
    p.set_defaults(func=cmd_preset_list)

    p = sub.add_parser("oracle", help="exact colorability check for small graphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--min-energy", action="store_true", help="exhaustive minimum bad-edge count")
    p.add_argument("--dump", help="write a witness coloring here")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, InstanceTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GenerationError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
