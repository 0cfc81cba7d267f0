"""Seeded parameter sweeps: repeated runs per cell, aggregation, file output.

A sweep expands into cells over (variant, n, gamma) in that nesting
order (variant outermost, gamma innermost).  Every run derives its own
stream from (master_seed, cell_index, run_index), so results do not
depend on execution order or worker count, and output files are
byte-identical across repeated invocations of the same config.

Aggregate CSV schema (one row per cell, `variant` is the operator):

    variant,selection,init,n,population,gamma,runs,vagueness_mean,
    vagueness_std,distinct_mean,distinct_std,payoff_pct_mean,payoff_pct_std

Trajectory CSV schema (one row per sampled iteration per run; `variant`
is the combined "<operator>/<selection>" label):

    variant,gamma,run,iteration,distinct,vagueness,payoff_pct
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import backend
from ._version import __version__
from .consensus import THREE_VALUED
from .engine import (
    INIT_THREE_VALUED,
    UNIFORM_RANDOM,
    RunConfig,
    RunMetrics,
    TrajectoryPoint,
    run,
)
from .errors import ConfigError
from .payoff import PayoffProfile, sample_profile
from .rng import BitStream, run_seed
import numpy as np

AGGREGATE_HEADER = (
    "variant,selection,init,n,population,gamma,runs,"
    "vagueness_mean,vagueness_std,distinct_mean,distinct_std,"
    "payoff_pct_mean,payoff_pct_std"
)
TRAJECTORY_HEADER = "variant,gamma,run,iteration,distinct,vagueness,payoff_pct"

PROFILE_RESAMPLE = "resample-per-run"
PROFILE_FIXED = "fixed"
PROFILE_MODES = (PROFILE_RESAMPLE, PROFILE_FIXED)

DEFAULT_GAMMA_GRID = tuple(i / 10 for i in range(11))

# reserved cell index for deriving the shared profile in fixed mode;
# real cell indices are small, so this can never collide
_PROFILE_CELL = 0x9E3779B97F4A7C15


def variant_label(operator: str, selection: str) -> str:
    return f"{operator}/{selection}"


@dataclass(frozen=True)
class Cell:
    index: int
    operator: str
    selection: str
    n: int
    gamma: float


@dataclass(frozen=True)
class SweepConfig:
    label: str = "sweep"
    population_size: int = 100
    n_values: tuple[int, ...] = (5,)
    gamma_values: tuple[float, ...] = DEFAULT_GAMMA_GRID
    variants: tuple[tuple[str, str], ...] = ((THREE_VALUED, UNIFORM_RANDOM),)
    init: str = INIT_THREE_VALUED
    iterations: int = 50_000
    runs_per_cell: int = 100
    master_seed: int = 0
    record_every: int = 100
    emit_trajectories: bool = False
    profile_mode: str = PROFILE_RESAMPLE
    payoff_profile: PayoffProfile | None = None

    def __post_init__(self):
        # normalize JSON-ish inputs so equality is structural
        object.__setattr__(self, "n_values", tuple(int(x) for x in self.n_values))
        object.__setattr__(self, "gamma_values", tuple(float(g) for g in self.gamma_values))
        object.__setattr__(
            self, "variants", tuple((str(o), str(s)) for o, s in self.variants)
        )

    def validate(self) -> None:
        if not self.label or "/" in self.label or self.label != self.label.strip():
            raise ConfigError(f"label must be a simple file-name stem, got {self.label!r}")
        if not self.n_values:
            raise ConfigError("n_values must be nonempty")
        if not self.gamma_values:
            raise ConfigError("gamma_values must be nonempty")
        if not self.variants:
            raise ConfigError("variants must be nonempty")
        if self.runs_per_cell < 1:
            raise ConfigError(f"runs_per_cell must be >= 1, got {self.runs_per_cell}")
        if self.profile_mode not in PROFILE_MODES:
            raise ConfigError(
                f"unknown profile_mode {self.profile_mode!r} (expected one of {PROFILE_MODES})"
            )
        if self.payoff_profile is not None:
            if self.profile_mode != PROFILE_FIXED:
                raise ConfigError("an explicit payoff profile requires profile_mode=fixed")
            for n in self.n_values:
                if len(self.payoff_profile) != n:
                    raise ConfigError(
                        f"payoff profile length {len(self.payoff_profile)} != n={n}"
                    )
        # every cell must expand to a valid RunConfig
        for cell in self.cells():
            self.run_config(cell, run_index=0).validate()

    def cells(self) -> list[Cell]:
        out = []
        index = 0
        for operator, selection in self.variants:
            for n in self.n_values:
                for gamma in self.gamma_values:
                    out.append(Cell(index, operator, selection, n, gamma))
                    index += 1
        return out

    def fixed_profile(self, n: int) -> PayoffProfile | None:
        """The shared profile in fixed mode (explicit, or derived from the
        master seed); None in resample-per-run mode."""
        if self.profile_mode != PROFILE_FIXED:
            return None
        if self.payoff_profile is not None:
            return self.payoff_profile
        stream = BitStream(np.random.SeedSequence((self.master_seed, _PROFILE_CELL)))
        return sample_profile(n, stream)

    def run_config(self, cell: Cell, run_index: int) -> RunConfig:
        return RunConfig(
            population_size=self.population_size,
            n=cell.n,
            gamma=cell.gamma,
            operator=cell.operator,
            selection=cell.selection,
            init=self.init,
            iterations=self.iterations,
            seed=run_seed(self.master_seed, cell.index, run_index),
            payoff_profile=self.fixed_profile(cell.n),
            record_every=self.record_every,
        )

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "population_size": self.population_size,
            "n_values": list(self.n_values),
            "gamma_values": list(self.gamma_values),
            "variants": [list(v) for v in self.variants],
            "init": self.init,
            "iterations": self.iterations,
            "runs_per_cell": self.runs_per_cell,
            "master_seed": self.master_seed,
            "record_every": self.record_every,
            "emit_trajectories": self.emit_trajectories,
            "profile_mode": self.profile_mode,
            "payoff_profile": (
                list(self.payoff_profile.values) if self.payoff_profile is not None else None
            ),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known - {"comment"}
        if unknown:
            raise ConfigError(f"unknown sweep config keys: {sorted(unknown)}")
        kwargs = {k: v for k, v in data.items() if k in known}
        profile = kwargs.get("payoff_profile")
        if profile is not None:
            kwargs["payoff_profile"] = PayoffProfile(profile)
        return cls(**kwargs)


@dataclass(frozen=True)
class AggregateRecord:
    operator: str
    selection: str
    init: str
    n: int
    population: int
    gamma: float
    runs: int
    vagueness_mean: float
    vagueness_std: float
    distinct_mean: float
    distinct_std: float
    payoff_pct_mean: float
    payoff_pct_std: float

    def csv_row(self) -> list:
        return [
            self.operator, self.selection, self.init, self.n, self.population,
            self.gamma, self.runs,
            self.vagueness_mean, self.vagueness_std,
            self.distinct_mean, self.distinct_std,
            self.payoff_pct_mean, self.payoff_pct_std,
        ]


@dataclass
class SweepResult:
    config: SweepConfig
    records: list[AggregateRecord]
    run_endpoints: list[list[TrajectoryPoint]]  # per cell, per run
    trajectory_rows: list[tuple]  # empty unless config.emit_trajectories
    warnings: list[str]
    paths: dict[str, Path] = field(default_factory=dict)


def _mean_std(values: list[float]) -> tuple[float, float]:
    """Mean and population standard deviation, accumulated in run order."""
    k = len(values)
    total = 0.0
    for x in values:
        total += x
    mean = total / k
    sq = 0.0
    for x in values:
        sq += (x - mean) * (x - mean)
    return mean, math.sqrt(sq / k)


def _run_cell(
    config: SweepConfig, cell: Cell, kernel: str | None
) -> tuple[list[TrajectoryPoint], list[tuple], list[str]]:
    """All runs of one cell; returns endpoints, trajectory rows, warnings."""
    endpoints: list[TrajectoryPoint] = []
    rows: list[tuple] = []
    warnings: list[str] = []
    label = variant_label(cell.operator, cell.selection)
    for r in range(config.runs_per_cell):
        metrics: RunMetrics = run(config.run_config(cell, r), kernel=kernel)
        endpoints.append(metrics.endpoint)
        warnings.extend(metrics.warnings)
        if config.emit_trajectories:
            for p in metrics.trajectory:
                rows.append((label, cell.gamma, r, p.iteration, p.distinct,
                             p.vagueness, p.payoff_pct))
    return endpoints, rows, warnings


def run_sweep(
    config: SweepConfig,
    output_dir: str | Path | None = None,
    workers: int = 1,
    kernel: str | None = None,
) -> SweepResult:
    """Execute every cell of the sweep and aggregate endpoint metrics.

    With ``output_dir`` the aggregate CSV, optional trajectory CSV and
    the JSON metadata sidecar are written there.  ``workers`` > 1 fans
    cells out to a process pool; results are merged in cell order, so
    outputs never depend on scheduling.
    """
    config.validate()
    cells = config.cells()

    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, config, cell, kernel) for cell in cells]
            per_cell = [f.result() for f in futures]
    else:
        per_cell = [_run_cell(config, cell, kernel) for cell in cells]

    records: list[AggregateRecord] = []
    run_endpoints: list[list[TrajectoryPoint]] = []
    trajectory_rows: list[tuple] = []
    warnings: list[str] = []
    for cell, (endpoints, rows, cell_warnings) in zip(cells, per_cell):
        records.append(aggregate_cell(config, cell, endpoints))
        run_endpoints.append(endpoints)
        trajectory_rows.extend(rows)
        warnings.extend(cell_warnings)

    result = SweepResult(config, records, run_endpoints, trajectory_rows, warnings)
    if output_dir is not None:
        emit_results(result, output_dir)
    return result


def aggregate_cell(
    config: SweepConfig, cell: Cell, endpoints: list[TrajectoryPoint]
) -> AggregateRecord:
    """Mean / population std of the endpoint metrics across a cell's runs."""
    vag_mean, vag_std = _mean_std([p.vagueness for p in endpoints])
    dis_mean, dis_std = _mean_std([float(p.distinct) for p in endpoints])
    pay_mean, pay_std = _mean_std([p.payoff_pct for p in endpoints])
    return AggregateRecord(
        operator=cell.operator,
        selection=cell.selection,
        init=config.init,
        n=cell.n,
        population=config.population_size,
        gamma=cell.gamma,
        runs=len(endpoints),
        vagueness_mean=vag_mean,
        vagueness_std=vag_std,
        distinct_mean=dis_mean,
        distinct_std=dis_std,
        payoff_pct_mean=pay_mean,
        payoff_pct_std=pay_std,
    )


def write_aggregate_csv(records: list[AggregateRecord], path: Path) -> None:
    if not records:
        raise ValueError("no aggregate records to write")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(AGGREGATE_HEADER.split(","))
        for rec in records:
            writer.writerow(rec.csv_row())


def write_trajectory_csv(rows: list[tuple], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_HEADER.split(","))
        for row in rows:
            writer.writerow(list(row))


def emit_results(result: SweepResult, output_dir: str | Path) -> dict[str, Path]:
    """Write aggregate CSV, optional trajectory CSV and metadata JSON.

    Files are keyed by the sweep label: <label>_aggregate.csv,
    <label>_trajectories.csv, <label>_metadata.json.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc

    label = result.config.label
    paths = {"aggregate": out / f"{label}_aggregate.csv"}
    try:
        write_aggregate_csv(result.records, paths["aggregate"])
        if result.config.emit_trajectories:
            paths["trajectories"] = out / f"{label}_trajectories.csv"
            write_trajectory_csv(result.trajectory_rows, paths["trajectories"])
        paths["metadata"] = out / f"{label}_metadata.json"
        paths["metadata"].write_text(json.dumps(sweep_metadata(result), indent=2,
                                                sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write sweep outputs under {out}: {exc}") from exc
    result.paths.update(paths)
    return paths


def sweep_metadata(result: SweepResult) -> dict:
    """Sidecar describing exactly how the results were produced."""
    return {
        "config": result.config.to_json_dict(),
        "version": __version__,
        "flags": {
            "profile_mode": result.config.profile_mode,
            "pair_sampling": "sequential-without-replacement-renormalized",
            "seed_derivation": "pcg64-seedseq(master_seed,cell_index,run_index)",
            "draw_order": "profile,init,loop",
            "kernel": backend.DEFAULT_KERNEL,
            "std": "population",
        },
        "cell_order": "variants,n_values,gamma_values (innermost last)",
        "warnings": sorted(set(result.warnings)),
    }
