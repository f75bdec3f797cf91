"""Seed derivation, grid expansion, aggregation, and sweep reproducibility."""

import numpy as np
import pytest

from conftest import small_params

from nomaql.core import (
    EmptyInput,
    NonPositiveParameter,
    ParameterError,
    Protocol,
    RunResult,
    SystemParams,
)
from nomaql.engine import run_realization
from nomaql.montecarlo import (
    GRID_KEYS,
    SweepConfig,
    WORKERS_ENV,
    aggregate,
    derive_seed,
    point_params,
    resolve_workers,
    run_sweep,
)


def test_derive_seed_deterministic_and_64bit():
    assert derive_seed(1, 0, 0) == derive_seed(1, 0, 0)
    for s in (derive_seed(1, 0, 0), derive_seed(2 ** 63, 17, 9999)):
        assert 0 <= s < 2 ** 64


def test_derive_seed_unique_across_coordinates():
    seeds = {derive_seed(m, g, r)
             for m in range(20) for g in range(50) for r in range(100)}
    assert len(seeds) == 20 * 50 * 100


def test_derive_seed_sensitive_to_each_coordinate():
    base = derive_seed(1, 2, 3)
    assert base != derive_seed(2, 2, 3)
    assert base != derive_seed(1, 3, 3)
    assert base != derive_seed(1, 2, 4)


def test_points_canonical_order():
    cfg = SweepConfig(
        base_params=small_params(),
        grid={"learning_rate": (0.1, 0.2),
              "protocol": (Protocol.MPL_QL, Protocol.INDEPENDENT_QL)})
    pts = cfg.points()
    # Protocol is the outer axis regardless of dict insertion order.
    assert pts == [
        {"protocol": Protocol.MPL_QL, "learning_rate": 0.1},
        {"protocol": Protocol.MPL_QL, "learning_rate": 0.2},
        {"protocol": Protocol.INDEPENDENT_QL, "learning_rate": 0.1},
        {"protocol": Protocol.INDEPENDENT_QL, "learning_rate": 0.2},
    ]


def test_points_empty_grid_and_unknown_axis():
    assert SweepConfig(base_params=small_params()).points() == [{}]
    bad = SweepConfig(base_params=small_params(), grid={"bogus": (1,)})
    with pytest.raises(ParameterError):
        bad.points()
    assert set(GRID_KEYS) == {"protocol", "loading_factor", "n_power_levels",
                              "sic_error_factor", "learning_rate"}


def test_point_params_loading_factor_and_protocol():
    base = small_params(n_slots=8)
    p = point_params(base, {"loading_factor": 2.5})
    assert p.n_devices == 20
    p = point_params(base, {"protocol": "independent-ql"})
    assert p.protocol is Protocol.INDEPENDENT_QL
    assert p.n_power_levels == 1  # non-multi-level protocols collapse
    p = point_params(base, {"protocol": Protocol.MPL_QL,
                            "n_power_levels": 6})
    assert p.n_power_levels == 6
    with pytest.raises(ParameterError):
        point_params(base, {"learning_rate": 2.0})


def _fake_result(throughput, latency, converged, interf, conv):
    frames = np.zeros(latency, dtype=np.int64)
    return RunResult(
        total_successes=0, latency_frames=latency, converged=converged,
        throughput=throughput, frame_successes=frames, tracked_ids=(0,),
        interference_trace={0: np.asarray(interf, dtype=float)},
        convergence_trace={0: np.asarray(conv, dtype=float)},
        slot_trace={0: np.zeros(latency, dtype=np.int64)},
        level_trace={0: np.zeros(latency, dtype=np.int64)},
        success_trace={0: np.zeros(latency, dtype=bool)})


def test_aggregate_hand_worked():
    a = _fake_result(0.5, 2, True, [1.0, 1.0], [0.5, 1.0])
    b = _fake_result(0.25, 4, False, [2.0, 2.0, 2.0, 2.0],
                     [0.25, 0.5, 0.75, 1.0])
    stats = aggregate([a, b])
    assert stats.n_realizations == 2
    assert stats.throughput_mean == pytest.approx(0.375)
    assert stats.throughput_std == pytest.approx(np.sqrt(0.03125), rel=1e-12)
    assert stats.throughput_ci95 == pytest.approx(
        1.96 * np.sqrt(0.03125) / np.sqrt(2), rel=1e-12)
    assert stats.latency_mean == pytest.approx(3.0)
    assert stats.latency_ci95 == pytest.approx(1.96, rel=1e-12)
    assert stats.not_converged_rate == 0.5
    assert not stats.warn_not_converged  # strictly more than half trips it
    assert not stats.low_sample
    # Short traces are padded: interference with 0, convergence with 1.
    assert np.allclose(stats.interference_trace_mean, [1.5, 1.5, 1.0, 1.0])
    assert np.allclose(stats.convergence_trace_mean,
                       [0.375, 0.75, 0.875, 1.0])


def test_aggregate_warning_and_low_sample():
    runs = [_fake_result(0.1, 3, False, [0.0] * 3, [0.0] * 3)] * 2
    runs += [_fake_result(0.1, 3, True, [0.0] * 3, [1.0] * 3)]
    assert aggregate(runs).warn_not_converged
    single = aggregate([_fake_result(0.3, 2, True, [0.0] * 2, [1.0] * 2)])
    assert single.low_sample
    assert single.throughput_ci95 == 0.0 and single.latency_std == 0.0
    with pytest.raises(EmptyInput):
        aggregate([])


def test_resolve_workers(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert resolve_workers(3) == 3
    assert resolve_workers("auto") >= 1
    with pytest.raises(NonPositiveParameter):
        resolve_workers(0)
    monkeypatch.setenv(WORKERS_ENV, "2")
    assert resolve_workers(1) == 2
    assert resolve_workers("auto") == 2


def _stats_equal(one, two) -> bool:
    for f in ("n_realizations", "throughput_mean", "throughput_std",
              "throughput_ci95", "latency_mean", "latency_std",
              "latency_ci95", "not_converged_rate", "warn_not_converged",
              "low_sample"):
        if getattr(one, f) != getattr(two, f):
            return False
    return (np.array_equal(one.interference_trace_mean,
                           two.interference_trace_mean)
            and np.array_equal(one.convergence_trace_mean,
                               two.convergence_trace_mean))


def _tiny_sweep(parallelism):
    return SweepConfig(
        base_params=small_params(packets_per_device=4),
        grid={"protocol": (Protocol.MPL_QL, Protocol.SLOTTED_ALOHA),
              "loading_factor": (1.0, 2.0)},
        n_realizations=3, master_seed=9, parallelism=parallelism)


def test_run_sweep_matches_manual_loop():
    cfg = _tiny_sweep(1)
    result = run_sweep(cfg)
    assert len(result.points) == 4
    for gi, over in enumerate(cfg.points()):
        params = point_params(cfg.base_params, over)
        runs = [run_realization(params, np.random.default_rng(
            derive_seed(cfg.master_seed, gi, ri)))
            for ri in range(cfg.n_realizations)]
        want = aggregate(runs)
        assert _stats_equal(result.points[gi].stats, want)
        assert result.points[gi].overrides == over
        assert result.points[gi].index == gi


def test_run_sweep_identical_across_worker_counts(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    serial = run_sweep(_tiny_sweep(1))
    parallel = run_sweep(_tiny_sweep(2))
    for a, b in zip(serial.points, parallel.points):
        assert _stats_equal(a.stats, b.stats)
    monkeypatch.setenv(WORKERS_ENV, "2")
    via_env = run_sweep(_tiny_sweep(1))
    for a, b in zip(serial.points, via_env.points):
        assert _stats_equal(a.stats, b.stats)


def test_run_sweep_rejects_bad_realization_count():
    cfg = SweepConfig(base_params=small_params(), n_realizations=0)
    with pytest.raises(NonPositiveParameter):
        run_sweep(cfg)


def test_any_warning_property():
    cfg = SweepConfig(
        base_params=SystemParams(n_devices=2, n_slots=1,
                                 packets_per_device=3, max_frames=10,
                                 protocol=Protocol.SLOTTED_ALOHA),
        n_realizations=2, master_seed=1, parallelism=1)
    result = run_sweep(cfg)
    assert result.any_warning
    assert result.points[0].stats.not_converged_rate == 1.0
