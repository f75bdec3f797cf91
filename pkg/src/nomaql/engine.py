"""Frame-by-frame execution of one contention realization.

Two execution paths cover different needs. :func:`run_frame` works on
Device/SlotOutcome objects and states the per-frame procedure plainly;
:func:`run_realization` drives a vectorized equivalent so Monte Carlo
sweeps stay fast. Both consume the random stream in the same order

    [tie-break draws in device order | slot draws for ALOHA] ->
    fading draws in device order (Rayleigh mode only)

per frame (after N placement draws and the per-device Q-table fills), so
an object run and an array run from the same seed realize the same
contention process; discrete outcomes match exactly and SINRs match to
float round-off.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Optional, Sequence

import numpy as np

from .agent import init_qtable, select_action, update_q
from .channel import (
    draw_fading,
    level_table,
    mean_rx_power_dbm,
    noise_power_w,
    place_devices,
)
from .core import (
    Device,
    DeviceNotInSlot,
    FadingMode,
    Protocol,
    RangeViolation,
    RunResult,
    SlotOutcome,
    SystemParams,
    TransmissionAttempt,
    dbm_to_watts,
    validate,
    watts_to_dbm,
)
from .receiver import (
    congestion,
    decide_success,
    reward_collaborative,
    reward_mplql,
    reward_packet,
    sic_order,
    sinr_noma,
)


def convergence_factor(remaining_packets: int, total_packets: int) -> float:
    """Delivered fraction of a device's backlog, (L - l) / L in [0, 1]."""
    if not total_packets > 0:
        raise RangeViolation(f"total_packets must be > 0, got {total_packets}")
    if remaining_packets < 0 or remaining_packets > total_packets:
        raise RangeViolation(
            f"remaining_packets must lie in [0, {total_packets}], "
            f"got {remaining_packets}")
    return (total_packets - remaining_packets) / total_packets


def interference_sample(outcome: SlotOutcome, device_id: int) -> float:
    """Interference power (watts) a device saw in a slot it transmitted in.

    This is the power sum of the contenders decoded after the device, i.e.
    everything SIC has not yet removed when the device is decoded. The SIC
    residual of the stronger signals is a receiver property and is not part
    of this sample.
    """
    for i, attempt in enumerate(outcome.sic_order):
        if attempt.device_id == device_id:
            return float(sum(a.rx_power_w for a in outcome.sic_order[i + 1:]))
    raise DeviceNotInSlot(
        f"device {device_id} did not transmit in slot {outcome.slot}")


def build_devices(params: SystemParams, rng: np.random.Generator,
                  distances: Optional[np.ndarray] = None) -> list[Device]:
    """Place devices and initialize their backlogs and Q-tables.

    Consumes the generator in this order: N placement draws (skipped when
    ``distances`` is given), then each device's Q-table fill, device by
    device. ALOHA devices get no table.
    """
    levels_w = level_table(params.n_power_levels, params.max_power_w,
                           params.level_mode)
    pt_dbm = watts_to_dbm(levels_w)
    if distances is None:
        distances = place_devices(params.n_devices, params.cell_radius_m,
                                  params.ref_distance_m, rng)
    devices = []
    for n in range(params.n_devices):
        q = (init_qtable(params.n_slots, params.n_power_levels, rng)
             if params.protocol.uses_qlearning else None)
        devices.append(Device(
            id=n,
            distance_m=float(distances[n]),
            mean_rx_power_dbm_per_level=np.asarray(
                mean_rx_power_dbm(pt_dbm, distances[n], params)),
            remaining_packets=params.packets_per_device,
            q_table=q,
        ))
    return devices


def run_frame(devices: list[Device], params: SystemParams,
              levels_w: np.ndarray,
              rng: np.random.Generator) -> tuple[list[SlotOutcome], int]:
    """Advance every backlogged device by one frame, mutating ``devices``.

    Each active device picks an action (greedy over its Q-table; ALOHA
    draws a slot uniformly), draws fresh fading, and transmits once. The
    receiver then resolves every occupied slot: SIC ordering, per-contender
    SINR against the threshold, rewards per the active protocol. All
    Q-updates and backlog decrements are applied only after every slot of
    the frame is resolved, so devices act on the tables they entered the
    frame with.

    Returns the slot outcomes (ascending slot order) and the number of
    packets delivered this frame. ``params`` is expected to be validated.
    """
    active = [d for d in devices if d.remaining_packets > 0]
    if not active:
        raise ValueError("run_frame needs at least one backlogged device")
    n_levels = len(levels_w)
    for d in active:
        if d.mean_rx_power_dbm_per_level.shape[-1] != n_levels:
            raise RangeViolation(
                f"device {d.id} carries {d.mean_rx_power_dbm_per_level.shape[-1]} "
                f"power levels, receiver expects {n_levels}")

    is_aloha = params.protocol is Protocol.SLOTTED_ALOHA
    choice: dict[int, tuple[int, int]] = {}
    for d in active:
        if is_aloha:
            choice[d.id] = (int(rng.integers(params.n_slots)), 0)
        else:
            choice[d.id] = select_action(d.q_table, rng)

    rayleigh = params.fading_mode is FadingMode.RAYLEIGH_PER_FRAME
    by_slot: dict[int, list[TransmissionAttempt]] = defaultdict(list)
    for d in active:
        k, p = choice[d.id]
        h2 = float(draw_fading(rng)) if rayleigh else 1.0
        rx = h2 * float(dbm_to_watts(d.mean_rx_power_dbm_per_level[p]))
        by_slot[k].append(TransmissionAttempt(
            device_id=d.id, slot=k, power_level=p, fading_gain=h2,
            rx_power_w=rx))

    noise_w = noise_power_w(params.noise_psd_dbm_hz, params.bandwidth_hz)
    outcomes = []
    for k in sorted(by_slot):
        contenders = by_slot[k]
        ordered = sic_order(contenders)
        powers = np.array([a.rx_power_w for a in ordered])
        sinrs = [sinr_noma(powers, i, params.sic_error_factor, noise_w)
                 for i in range(len(ordered))]
        if is_aloha:
            # Collision model: a packet survives iff it had the slot to
            # itself (optionally also clearing the SINR threshold).
            alone = len(ordered) == 1
            flags = [alone and (not params.sa_sinr_check
                                or decide_success(s, params.sinr_threshold))
                     for s in sinrs]
            rewards = [0.0] * len(ordered)  # ALOHA carries no learning signal
        else:
            flags = [decide_success(s, params.sinr_threshold) for s in sinrs]
            rewards = _rewards(params, ordered, flags, len(contenders), devices)
        outcomes.append(SlotOutcome(
            slot=k, contenders=contenders, sic_order=ordered,
            sinr_per_contender=sinrs, success_flags=flags, rewards=rewards,
            congestion=congestion(len(contenders), params.n_devices)))

    by_id = {d.id: d for d in devices}
    successes = 0
    for outcome in outcomes:
        for attempt, flag, reward in zip(outcome.sic_order,
                                         outcome.success_flags,
                                         outcome.rewards):
            dev = by_id[attempt.device_id]
            if flag:
                dev.remaining_packets -= 1
                successes += 1
            if not is_aloha:
                q_old = dev.q_table[attempt.slot, attempt.power_level]
                dev.q_table[attempt.slot, attempt.power_level] = update_q(
                    q_old, reward, params.learning_rate)
    return outcomes, successes


def _rewards(params: SystemParams, ordered: list[TransmissionAttempt],
             flags: list[bool], n_contenders: int,
             devices: list[Device]) -> list[float]:
    proto = params.protocol
    if proto in (Protocol.MPL_QL, Protocol.INDEPENDENT_QL):
        return [reward_mplql(f) for f in flags]
    if proto is Protocol.COLLABORATIVE_QL:
        c = congestion(n_contenders, params.n_devices)
        return [reward_collaborative(f, c) for f in flags]
    if proto is Protocol.PACKET_QL:
        by_id = {d.id: d for d in devices}
        return [reward_packet(f, by_id[a.device_id].remaining_packets,
                              params.packets_per_device)
                for a, f in zip(ordered, flags)]
    raise ValueError(f"no reward rule for {proto}")


def run_realization(params: SystemParams, rng: np.random.Generator, *,
                    tracked: Optional[Sequence[int]] = None,
                    distances: Optional[np.ndarray] = None) -> RunResult:
    """Run one realization to backlog drain (or the frame cap).

    Devices are placed uniformly over the cell, Q-tables are filled, and
    frames run until every device delivered all its packets or
    ``max_frames`` is hit (``converged=False`` then). ``tracked`` selects
    the devices whose per-frame traces are recorded; by default the device
    nearest the median distance (lowest id on ties), a representative
    mid-cell terminal.
    """
    params = validate(params)
    return _simulate(params, rng, tracked=tracked, distances=distances)


def run_slotted_aloha(params: SystemParams, rng: np.random.Generator, *,
                      tracked: Optional[Sequence[int]] = None,
                      distances: Optional[np.ndarray] = None) -> RunResult:
    """Run one slotted-ALOHA realization (forces the protocol if needed)."""
    if params.protocol is not Protocol.SLOTTED_ALOHA:
        from dataclasses import replace
        params = replace(params, protocol=Protocol.SLOTTED_ALOHA)
    params = validate(params)
    return _simulate(params, rng, tracked=tracked, distances=distances)


def _tracked_default(distances: np.ndarray) -> int:
    """Lowest-id device whose distance is nearest the median distance."""
    gaps = np.abs(distances - np.median(distances))
    return int(np.flatnonzero(gaps == gaps.min()).min())


def _simulate(params: SystemParams, rng: np.random.Generator,
              tracked: Optional[Sequence[int]],
              distances: Optional[np.ndarray]) -> RunResult:
    """Vectorized realization loop; params must be validated already."""
    n, k_slots, p_levels = params.n_devices, params.n_slots, params.n_power_levels
    total_l = params.packets_per_device
    is_aloha = params.protocol is Protocol.SLOTTED_ALOHA
    rayleigh = params.fading_mode is FadingMode.RAYLEIGH_PER_FRAME
    beta = params.sic_error_factor
    gamma = params.sinr_threshold
    alpha = params.learning_rate
    noise_w = noise_power_w(params.noise_psd_dbm_hz, params.bandwidth_hz)

    levels_w = level_table(p_levels, params.max_power_w, params.level_mode)
    pt_dbm = watts_to_dbm(levels_w)
    if distances is None:
        distances = place_devices(n, params.cell_radius_m,
                                  params.ref_distance_m, rng)
    else:
        distances = np.asarray(distances, dtype=float)
    # (N, P) mean received power per device and level, fading applied later.
    mean_rx_w = np.asarray(dbm_to_watts(
        mean_rx_power_dbm(pt_dbm[None, :], distances[:, None], params)))

    if is_aloha:
        q = None
    else:
        q = rng.uniform(-1.0, 1.0, size=(n, k_slots, p_levels))
        q = q.reshape(n, k_slots * p_levels)

    if tracked is None:
        tracked = (_tracked_default(distances),)
    tracked = tuple(int(t) for t in tracked)
    trace_interf = {t: [] for t in tracked}
    trace_conv = {t: [] for t in tracked}
    trace_slot = {t: [] for t in tracked}
    trace_level = {t: [] for t in tracked}
    trace_success = {t: [] for t in tracked}

    ell = np.full(n, total_l, dtype=np.int64)
    frame_successes = []
    frames = 0
    while frames < params.max_frames and ell.sum() > 0:
        act = np.flatnonzero(ell > 0)
        a = act.size
        if is_aloha:
            k = rng.integers(0, k_slots, size=a)
            p = np.zeros(a, dtype=np.int64)
        else:
            qa = q[act]
            flat = qa.argmax(axis=1)
            best = np.take_along_axis(qa, flat[:, None], axis=1).ravel()
            n_ties = np.count_nonzero(qa == best[:, None], axis=1)
            for j in np.flatnonzero(n_ties > 1):
                cand = np.flatnonzero(qa[j] == best[j])
                flat[j] = cand[rng.integers(cand.size)]
            k = flat // p_levels
            p = flat - k * p_levels
        if rayleigh:
            pw = mean_rx_w[act, p] * draw_fading(rng, size=a)
        else:
            pw = mean_rx_w[act, p]

        # Sort attempts by (slot, power desc, id asc): each slot becomes one
        # contiguous segment already in SIC order.
        order = np.lexsort((act, -pw, k))
        dev_s, pw_s, k_s, p_s = act[order], pw[order], k[order], p[order]
        newseg = np.empty(a, dtype=bool)
        newseg[0] = True
        np.not_equal(k_s[1:], k_s[:-1], out=newseg[1:])
        start = np.flatnonzero(newseg)
        seg = np.cumsum(newseg) - 1
        csum = np.cumsum(pw_s)
        within_incl = csum - (csum - pw_s)[start][seg]
        seg_total = np.add.reduceat(pw_s, start)
        # Cumulative-sum cancellation can leave tiny negatives where the
        # true suffix or prefix sum is zero; clamp them out.
        weaker = np.maximum(seg_total[seg] - within_incl, 0.0)
        stronger = np.maximum(within_incl - pw_s, 0.0)
        sinr = pw_s / (beta * stronger + weaker + noise_w)

        occupancy = np.diff(np.append(start, a))[seg]
        if is_aloha:
            succ = occupancy == 1
            if params.sa_sinr_check:
                succ &= sinr >= gamma
        else:
            succ = sinr >= gamma

        if not is_aloha:
            if params.protocol is Protocol.COLLABORATIVE_QL:
                reward = np.where(succ, 1.0, -(occupancy / n))
            elif params.protocol is Protocol.PACKET_QL:
                nu = (total_l - ell[dev_s]) / total_l
                reward = np.where(succ, 1.0, -nu)
            else:
                reward = np.where(succ, 1.0, -1.0)

        for t in tracked:
            pos = np.flatnonzero(dev_s == t)
            if pos.size:
                i = pos[0]
                trace_interf[t].append(float(weaker[i]))
                trace_slot[t].append(int(k_s[i]))
                trace_level[t].append(int(p_s[i]))
                trace_success[t].append(bool(succ[i]))
            else:
                trace_interf[t].append(0.0)
                trace_slot[t].append(-1)
                trace_level[t].append(-1)
                trace_success[t].append(False)

        ell[dev_s[succ]] -= 1
        if not is_aloha:
            cells = k_s * p_levels + p_s
            q_old = q[dev_s, cells]
            q[dev_s, cells] = q_old + alpha * (reward - q_old)

        frame_successes.append(int(np.count_nonzero(succ)))
        frames += 1
        for t in tracked:
            trace_conv[t].append((total_l - int(ell[t])) / total_l)

    total = int(sum(frame_successes))
    converged = bool(ell.sum() == 0)
    throughput = total / (frames * k_slots) if frames else 0.0
    return RunResult(
        total_successes=total,
        latency_frames=frames,
        converged=converged,
        throughput=throughput,
        frame_successes=np.asarray(frame_successes, dtype=np.int64),
        tracked_ids=tracked,
        interference_trace={t: np.asarray(v) for t, v in trace_interf.items()},
        convergence_trace={t: np.asarray(v) for t, v in trace_conv.items()},
        slot_trace={t: np.asarray(v, dtype=np.int64)
                    for t, v in trace_slot.items()},
        level_trace={t: np.asarray(v, dtype=np.int64)
                     for t, v in trace_level.items()},
        success_trace={t: np.asarray(v, dtype=bool)
                       for t, v in trace_success.items()},
    )
