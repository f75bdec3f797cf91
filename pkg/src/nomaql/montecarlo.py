"""Seeded Monte Carlo sweeps over protocol and system parameter grids.

A sweep is a cartesian grid over up to five axes (protocol, loading
factor, power levels, SIC residual, learning rate) crossed with M
independent realizations per point. Every realization gets its own
generator seeded by ``derive_seed(master_seed, grid_index,
realization_index)``, so results are reproducible bit for bit and do not
depend on scheduling: workers may compute realizations in any order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .core import (
    EmptyInput,
    NonPositiveParameter,
    ParameterError,
    Protocol,
    RunResult,
    SystemParams,
    validate,
)
from .engine import run_realization

#: Sweepable axes, in the canonical nesting order of the grid product.
GRID_KEYS = ("protocol", "loading_factor", "n_power_levels",
             "sic_error_factor", "learning_rate")

WORKERS_ENV = "NOMAQL_WORKERS"

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    """splitmix64 finalizer: bijective avalanche on 64-bit ints."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(master_seed: int, grid_index: int,
                realization_index: int) -> int:
    """Stable 64-bit seed for one realization of one grid point.

    Chains the splitmix64 finalizer over the three coordinates, so nearby
    (master, point, realization) triples land on unrelated seeds.
    """
    z = _mix(master_seed & _MASK)
    z = _mix(z ^ ((grid_index * _GOLDEN + 1) & _MASK))
    z = _mix(z ^ ((realization_index * _GOLDEN + 0x5851F42D4C957F2D) & _MASK))
    return z


@dataclass(frozen=True)
class SweepConfig:
    """One Monte Carlo experiment: base system plus grid and realization count.

    ``grid`` maps axis names (a subset of :data:`GRID_KEYS`) to value
    sequences. ``loading_factor`` values set ``n_devices = round(value *
    n_slots)``. An empty grid means a single point at the base parameters.
    ``parallelism`` is a worker count or ``"auto"`` (the CPU count, unless
    the ``NOMAQL_WORKERS`` environment variable overrides it).
    """

    base_params: SystemParams = field(default_factory=SystemParams)
    grid: Mapping[str, Sequence] = field(default_factory=dict)
    n_realizations: int = 100
    master_seed: int = 1
    parallelism: Union[int, str] = "auto"

    def points(self) -> list[dict]:
        """Grid points as override dicts, in canonical nesting order."""
        unknown = set(self.grid) - set(GRID_KEYS)
        if unknown:
            raise ParameterError(
                f"unknown grid axes {sorted(unknown)}; "
                f"sweepable axes are {list(GRID_KEYS)}")
        axes = [k for k in GRID_KEYS if k in self.grid]
        if not axes:
            return [{}]
        return [dict(zip(axes, combo))
                for combo in product(*(tuple(self.grid[k]) for k in axes))]


def point_params(base: SystemParams, overrides: Mapping) -> SystemParams:
    """Apply one grid point's overrides to the base system and validate."""
    fields = {}
    for key, value in overrides.items():
        if key == "loading_factor":
            fields["n_devices"] = int(round(float(value) * base.n_slots))
        elif key == "protocol":
            fields["protocol"] = (value if isinstance(value, Protocol)
                                  else Protocol(value))
        else:
            fields[key] = value
    return validate(replace(base, **fields) if fields else base)


@dataclass
class PointStats:
    """Aggregated metrics of one grid point over its realizations.

    Means carry 95% confidence half-widths (1.96 * std / sqrt(n), sample
    std). ``warn_not_converged`` is set when more than half the
    realizations hit the frame cap, flagging the point's averages as
    cap-censored. ``low_sample`` marks n == 1, where no spread can be
    estimated and the half-widths are reported as 0. Mean traces are
    padded to the longest realization (interference with 0, convergence
    factor with 1) before averaging.
    """

    n_realizations: int
    throughput_mean: float
    throughput_std: float
    throughput_ci95: float
    latency_mean: float
    latency_std: float
    latency_ci95: float
    not_converged_rate: float
    warn_not_converged: bool
    low_sample: bool
    interference_trace_mean: np.ndarray
    convergence_trace_mean: np.ndarray


@dataclass
class GridPointResult:
    """One grid point: its overrides, resolved parameters, and statistics."""

    index: int
    overrides: dict
    params: SystemParams
    stats: PointStats


@dataclass
class SweepResult:
    """All grid points of one sweep, in grid order, plus the config run."""

    config: SweepConfig
    points: list[GridPointResult]

    @property
    def any_warning(self) -> bool:
        return any(p.stats.warn_not_converged for p in self.points)


def _mean_ci(values: np.ndarray) -> tuple[float, float, float]:
    mean = float(np.mean(values))
    if values.size < 2:
        return mean, 0.0, 0.0
    std = float(np.std(values, ddof=1))
    return mean, std, 1.96 * std / np.sqrt(values.size)


def _padded_mean(traces: list[np.ndarray], fill: float) -> np.ndarray:
    width = max(t.size for t in traces)
    stacked = np.full((len(traces), width), fill, dtype=float)
    for i, t in enumerate(traces):
        stacked[i, :t.size] = t
    return stacked.mean(axis=0)


def aggregate(results: Sequence[RunResult]) -> PointStats:
    """Summarize one grid point's realizations."""
    if not results:
        raise EmptyInput("aggregate needs at least one RunResult")
    thr = np.array([r.throughput for r in results])
    lat = np.array([r.latency_frames for r in results], dtype=float)
    nc_rate = float(np.mean([not r.converged for r in results]))
    t_mean, t_std, t_ci = _mean_ci(thr)
    l_mean, l_std, l_ci = _mean_ci(lat)
    interf = [r.interference_trace[t] for r in results for t in r.tracked_ids]
    conv = [r.convergence_trace[t] for r in results for t in r.tracked_ids]
    return PointStats(
        n_realizations=len(results),
        throughput_mean=t_mean, throughput_std=t_std, throughput_ci95=t_ci,
        latency_mean=l_mean, latency_std=l_std, latency_ci95=l_ci,
        not_converged_rate=nc_rate,
        warn_not_converged=nc_rate > 0.5,
        low_sample=len(results) == 1,
        interference_trace_mean=_padded_mean(interf, 0.0),
        convergence_trace_mean=_padded_mean(conv, 1.0),
    )


def resolve_workers(parallelism: Union[int, str]) -> int:
    """Worker count from a config value, honoring the environment override."""
    env = os.environ.get(WORKERS_ENV)
    if env:
        parallelism = env
    if parallelism == "auto":
        return os.cpu_count() or 1
    workers = int(parallelism)
    if workers < 1:
        raise NonPositiveParameter(f"worker count must be >= 1, got {workers}")
    return workers


def _run_task(task: tuple[SystemParams, int]) -> RunResult:
    params, seed = task
    return run_realization(params, np.random.default_rng(seed))


def run_sweep(config: SweepConfig) -> SweepResult:
    """Run every realization of every grid point and aggregate per point.

    The (grid point, realization) seed table is fixed up front, so the
    result is identical whether tasks run inline or across any number of
    worker processes.
    """
    if not config.n_realizations >= 1:
        raise NonPositiveParameter(
            f"n_realizations must be >= 1, got {config.n_realizations}")
    overrides = config.points()
    resolved = [point_params(config.base_params, o) for o in overrides]
    tasks = [(params, derive_seed(config.master_seed, gi, ri))
             for gi, params in enumerate(resolved)
             for ri in range(config.n_realizations)]

    workers = resolve_workers(config.parallelism)
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=chunk))
    else:
        results = [_run_task(t) for t in tasks]

    m = config.n_realizations
    points = []
    for gi, (over, params) in enumerate(zip(overrides, resolved)):
        stats = aggregate(results[gi * m:(gi + 1) * m])
        points.append(GridPointResult(index=gi, overrides=over,
                                      params=params, stats=stats))
    return SweepResult(config=config, points=points)
