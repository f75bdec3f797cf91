"""Shared test helpers: small systems, an object-path driver, and the
acceptance-criteria scoreboard printed at the end of the run."""

from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from nomaql import SystemParams, validate
from nomaql.channel import level_table
from nomaql.engine import build_devices, run_frame


def small_params(**over) -> SystemParams:
    """A system small enough for exhaustive per-frame checks."""
    base = SystemParams(n_devices=24, n_slots=8, packets_per_device=6,
                        n_power_levels=4, noise_psd_dbm_hz=-174.0)
    return replace(base, **over) if over else base


def object_run(params: SystemParams, seed: int):
    """Drive the per-object frame loop to completion (or the frame cap).

    Returns (frame_successes array, total, latency_frames, converged,
    devices). Mirrors the vectorized realization loop so the two paths can
    be compared draw for draw.
    """
    params = validate(params)
    rng = np.random.default_rng(seed)
    devices = build_devices(params, rng)
    levels_w = level_table(params.n_power_levels, params.max_power_w,
                           params.level_mode)
    per_frame = []
    frames = 0
    while frames < params.max_frames and any(
            d.remaining_packets > 0 for d in devices):
        _, s = run_frame(devices, params, levels_w, rng)
        per_frame.append(s)
        frames += 1
    converged = all(d.remaining_packets == 0 for d in devices)
    return (np.asarray(per_frame, dtype=np.int64), int(sum(per_frame)),
            frames, converged, devices)


# --------------------------------------------------------------------------
# acceptance scoreboard

_CRITERIA: list[tuple[str, str, bool, str]] = []


def record_criterion(criterion: str, label: str, ok: bool, detail: str) -> None:
    """Log one acceptance sub-check; the summary hook prints the rollup."""
    _CRITERIA.append((criterion, label, bool(ok), detail))
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {criterion} {label}: {status} ({detail})")


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    seen: dict[str, list[tuple[str, bool, str]]] = {}
    for criterion, label, ok, detail in _CRITERIA:
        seen.setdefault(criterion, []).append((label, ok, detail))
    for criterion in sorted(seen):
        subs = seen[criterion]
        ok_all = all(ok for _, ok, _ in subs)
        tr.write_line(f"{criterion}: {'PASS' if ok_all else 'FAIL'}")
        for label, ok, detail in subs:
            tr.write_line(
                f"  {'PASS' if ok else 'FAIL'}  {label}: {detail}")
