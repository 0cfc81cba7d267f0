"""Command-line front end: single runs, parameter sweeps, canned configs.

Subcommands:

* ``run``            -- one seeded run; writes its trajectory CSV and a
                        metadata sidecar, prints the endpoint metrics.
* ``sweep``          -- seeded parameter sweep from a JSON config and/or
                        flags; writes aggregate CSV (+ optional
                        trajectory CSV) and metadata.
* ``figures-config`` -- emit the canned sweep configs that reproduce the
                        five standard result figures.

Exit status: 0 on success, 2 on configuration errors, 1 on runtime
errors.  The default output directory is $KLEENESIM_OUTPUT_DIR or
./results; the --output-dir flag takes precedence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import backend
from ._version import __version__
from .consensus import BOOLEAN_STOCHASTIC, OPERATORS, THREE_VALUED
from .engine import (
    INIT_BOOLEAN,
    INIT_THREE_VALUED,
    INITS,
    PAYOFF_PROPORTIONATE,
    SELECTIONS,
    UNIFORM_RANDOM,
    RunConfig,
    run,
)
from .errors import ConfigError
from .payoff import PayoffProfile
from .sweep import (
    DEFAULT_GAMMA_GRID,
    PROFILE_FIXED,
    PROFILE_MODES,
    SweepConfig,
    run_sweep,
    variant_label,
    write_trajectory_csv,
)

ENV_OUTPUT_DIR = "KLEENESIM_OUTPUT_DIR"

ALL_VARIANTS = (
    (THREE_VALUED, PAYOFF_PROPORTIONATE),
    (THREE_VALUED, UNIFORM_RANDOM),
    (BOOLEAN_STOCHASTIC, PAYOFF_PROPORTIONATE),
    (BOOLEAN_STOCHASTIC, UNIFORM_RANDOM),
)


def _output_dir(args) -> Path:
    if args.output_dir is not None:
        return Path(args.output_dir)
    env = os.environ.get(ENV_OUTPUT_DIR)
    return Path(env) if env else Path("results")


def _parse_variants(text: str) -> tuple[tuple[str, str], ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if part == "all":
            out.extend(ALL_VARIANTS)
            continue
        op, sep, sel = part.partition(":")
        if not sep:
            raise ConfigError(
                f"variant {part!r} must be operator:selection (e.g. three-valued:uniform-random)"
            )
        out.append((op.strip(), sel.strip()))
    return tuple(out)


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(","))


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kleenesim",
        description="Seeded multi-agent consensus simulator over Kleene three-valued logic.",
    )
    parser.add_argument("--version", action="version", version=f"kleenesim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one run and write its trajectory")
    p_run.add_argument("--n", type=int, required=True, help="number of propositional variables")
    p_run.add_argument("--gamma", type=float, required=True, help="inconsistency threshold in [0,1]")
    p_run.add_argument("--population-size", type=int, default=100)
    p_run.add_argument("--operator", choices=OPERATORS, default=THREE_VALUED)
    p_run.add_argument("--selection", choices=SELECTIONS, default=UNIFORM_RANDOM)
    p_run.add_argument("--init", choices=INITS, default=INIT_THREE_VALUED)
    p_run.add_argument("--iterations", type=int, default=50_000)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--record-every", type=int, default=100)
    p_run.add_argument("--profile-file", type=Path, help="fixed payoff profile, one value per line")
    p_run.add_argument("--early-stop", action="store_true",
                       help="stop once the population holds a single belief")
    p_run.add_argument("--label", default="run", help="output file stem")
    p_run.add_argument("--output-dir", type=Path)
    p_run.add_argument("--kernel", choices=("auto", "pure", "compiled"))
    p_run.add_argument("--quiet", action="store_true")

    p_sweep = sub.add_parser("sweep", help="execute a parameter sweep")
    p_sweep.add_argument("--config", type=Path, help="JSON sweep config; flags override its fields")
    p_sweep.add_argument("--label")
    p_sweep.add_argument("--population-size", type=int)
    p_sweep.add_argument("--n-values", type=_parse_ints, metavar="N1,N2,...")
    p_sweep.add_argument("--gamma-values", type=_parse_floats, metavar="G1,G2,...")
    p_sweep.add_argument(
        "--variants", type=_parse_variants, metavar="OP:SEL[,OP:SEL...]",
        help="operator:selection pairs, or 'all' for the four standard variants",
    )
    p_sweep.add_argument("--init", choices=INITS)
    p_sweep.add_argument("--iterations", type=int)
    p_sweep.add_argument("--runs-per-cell", type=int)
    p_sweep.add_argument("--master-seed", type=int)
    p_sweep.add_argument("--record-every", type=int)
    p_sweep.add_argument("--emit-trajectories", action=argparse.BooleanOptionalAction)
    p_sweep.add_argument("--profile-mode", choices=PROFILE_MODES)
    p_sweep.add_argument("--profile-file", type=Path)
    p_sweep.add_argument("--output-dir", type=Path)
    p_sweep.add_argument("--workers", type=int, default=0,
                         help="worker processes; 0 = one per CPU")
    p_sweep.add_argument("--kernel", choices=("auto", "pure", "compiled"))
    p_sweep.add_argument("--quiet", action="store_true")

    p_figs = sub.add_parser(
        "figures-config",
        help="write the canned sweep configs behind the five standard figures",
    )
    p_figs.add_argument("--output-dir", type=Path)
    p_figs.add_argument("--runs-per-cell", type=int,
                        help="override the canned 100 runs per cell (desk-scale demos)")
    p_figs.add_argument("--iterations", type=int,
                        help="override the canned 50000 iterations")
    return parser


def _cmd_run(args) -> int:
    profile = PayoffProfile.from_file(args.profile_file) if args.profile_file else None
    config = RunConfig(
        population_size=args.population_size,
        n=args.n,
        gamma=args.gamma,
        operator=args.operator,
        selection=args.selection,
        init=args.init,
        iterations=args.iterations,
        seed=args.seed,
        payoff_profile=profile,
        record_every=args.record_every,
        early_stop=args.early_stop,
    )
    config.validate()
    kernel = None if args.kernel in (None, "auto") else args.kernel
    started = time.perf_counter()
    metrics = run(config, kernel=kernel)
    elapsed = time.perf_counter() - started

    out = _output_dir(args)
    out.mkdir(parents=True, exist_ok=True)
    label = variant_label(config.operator, config.selection)
    rows = [
        (label, config.gamma, 0, p.iteration, p.distinct, p.vagueness, p.payoff_pct)
        for p in metrics.trajectory
    ]
    traj_path = out / f"{args.label}_trajectories.csv"
    write_trajectory_csv(rows, traj_path)
    meta = {
        "run_config": {
            "population_size": config.population_size,
            "n": config.n,
            "gamma": config.gamma,
            "operator": config.operator,
            "selection": config.selection,
            "init": config.init,
            "iterations": config.iterations,
            "seed": config.seed,
            "record_every": config.record_every,
            "early_stop": config.early_stop,
            "payoff_profile": list(profile.values) if profile else None,
        },
        "version": __version__,
        "kernel": kernel or backend.DEFAULT_KERNEL,
        "warnings": list(metrics.warnings),
    }
    (out / f"{args.label}_metadata.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True) + "\n")

    end = metrics.endpoint
    if not args.quiet:
        print(f"wrote {traj_path}")
        print(
            f"endpoint @ iteration {end.iteration}: distinct={end.distinct} "
            f"vagueness={end.vagueness:.4f} payoff_pct={end.payoff_pct:.2f} "
            f"({elapsed:.2f}s)"
        )
    return 0


_SWEEP_OVERRIDES = (
    "label", "population_size", "n_values", "gamma_values", "variants", "init",
    "iterations", "runs_per_cell", "master_seed", "record_every",
    "emit_trajectories", "profile_mode",
)


def _cmd_sweep(args) -> int:
    data: dict = {}
    if args.config is not None:
        try:
            data = json.loads(args.config.read_text())
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {args.config}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON: {exc}") from None
    for name in _SWEEP_OVERRIDES:
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.profile_file is not None:
        data["payoff_profile"] = list(PayoffProfile.from_file(args.profile_file).values)
        data.setdefault("profile_mode", PROFILE_FIXED)
    config = SweepConfig.from_json_dict(data)
    config.validate()

    workers = args.workers if args.workers > 0 else (os.cpu_count() or 1)
    kernel = None if args.kernel in (None, "auto") else args.kernel
    cells = config.cells()
    if not args.quiet:
        print(
            f"sweep {config.label!r}: {len(cells)} cells x {config.runs_per_cell} runs "
            f"x {config.iterations} iterations ({backend.DEFAULT_KERNEL} kernel, "
            f"{workers} worker{'s' if workers != 1 else ''})",
            file=sys.stderr,
        )
    started = time.perf_counter()
    result = run_sweep(config, output_dir=_output_dir(args), workers=workers, kernel=kernel)
    elapsed = time.perf_counter() - started
    if not args.quiet:
        for key, path in sorted(result.paths.items()):
            print(f"wrote {path}", file=sys.stderr)
        print(f"done in {elapsed:.1f}s", file=sys.stderr)
    return 0


def figure_configs(runs_per_cell: int = 100, iterations: int = 50_000) -> dict[str, dict]:
    """The canned sweep configs behind the five standard figures.

    fig1-2: three-valued operator, uniform selection, three-valued init,
    language sizes 5/10/50/100 over the gamma grid (endpoint vagueness
    and distinct-valuation counts).  fig3-4: all four operator/selection
    variants from Boolean init at n=5 (endpoint payoff percentage and
    distinct counts).  fig5: the same four variants at gamma=0.7 with
    trajectories enabled.
    """
    grid = list(DEFAULT_GAMMA_GRID)
    fig12 = SweepConfig(
        label="fig1-2",
        n_values=(5, 10, 50, 100),
        gamma_values=grid,
        variants=((THREE_VALUED, UNIFORM_RANDOM),),
        init=INIT_THREE_VALUED,
        iterations=iterations,
        runs_per_cell=runs_per_cell,
        master_seed=101,
    )
    fig34 = SweepConfig(
        label="fig3-4",
        n_values=(5,),
        gamma_values=grid,
        variants=ALL_VARIANTS,
        init=INIT_BOOLEAN,
        iterations=iterations,
        runs_per_cell=runs_per_cell,
        master_seed=303,
    )
    fig5 = SweepConfig(
        label="fig5",
        n_values=(5,),
        gamma_values=(0.7,),
        variants=ALL_VARIANTS,
        init=INIT_BOOLEAN,
        iterations=iterations,
        runs_per_cell=runs_per_cell,
        master_seed=505,
        emit_trajectories=True,
    )
    comments = {
        "fig1-2": "endpoint vagueness (figure 1) and distinct valuations (figure 2) vs gamma",
        "fig3-4": "endpoint payoff percentage (figure 3) and distinct valuations (figure 4) vs gamma",
        "fig5": "distinct-valuation trajectories at gamma=0.7 (figure 5)",
    }
    out = {}
    for cfg in (fig12, fig34, fig5):
        data = cfg.to_json_dict()
        data["comment"] = comments[cfg.label]
        out[cfg.label] = data
    return out


def _cmd_figures_config(args) -> int:
    out = _output_dir(args)
    out.mkdir(parents=True, exist_ok=True)
    configs = figure_configs(
        runs_per_cell=args.runs_per_cell or 100,
        iterations=args.iterations or 50_000,
    )
    for label, data in configs.items():
        path = out / f"{label}.json"
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_figures_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
