"""SIC decoding order, per-contender SINR, and the reward rules.

The base station decodes each slot's contenders in descending received
power. Decoding is treated per contender: contender i sees the stronger
signals attenuated by the SIC residual factor ``beta`` (0 for perfect
cancellation) and the weaker signals at full power,

    SINR_i = P_i / (beta * sum_{j<i} P_j + sum_{j>i} P_j + noise).

A contender succeeds when its SINR reaches the threshold. Decode failures
do not propagate: each contender's stronger set is attenuated by beta
regardless of whether those signals actually decoded.
"""

from __future__ import annotations

import numpy as np

from .core import (
    NonPositiveParameter,
    RangeViolation,
    TransmissionAttempt,
)


def sic_order(contenders: list[TransmissionAttempt]) -> list[TransmissionAttempt]:
    """Contenders sorted for SIC: received power descending, id ascending on ties."""
    return sorted(contenders, key=lambda a: (-a.rx_power_w, a.device_id))


def sinr_noma(ordered_powers_w: np.ndarray, index: int, sic_error_factor: float,
              noise_w: float) -> float:
    """SINR of the contender at ``index`` in a power-sorted slot.

    ``ordered_powers_w`` must already be in SIC (descending) order.
    """
    if not 0.0 <= sic_error_factor <= 1.0:
        raise RangeViolation(
            f"sic_error_factor must lie in [0, 1], got {sic_error_factor}")
    if not noise_w > 0:
        raise NonPositiveParameter(f"noise_w must be > 0, got {noise_w}")
    p = np.asarray(ordered_powers_w, dtype=float)
    if not 0 <= index < p.size:
        raise IndexError(f"contender index {index} out of range for {p.size}")
    stronger = float(np.sum(p[:index]))
    weaker = float(np.sum(p[index + 1:]))
    return float(p[index] / (sic_error_factor * stronger + weaker + noise_w))


def decide_success(sinr: float, threshold: float) -> bool:
    """Threshold test, inclusive: decoding succeeds when sinr >= threshold."""
    if not threshold > 0:
        raise NonPositiveParameter(f"threshold must be > 0, got {threshold}")
    return bool(sinr >= threshold)


def congestion(n_contenders: int, n_devices: int) -> float:
    """Fraction of the population contending in a slot, |psi_k| / N."""
    if not n_devices > 0:
        raise NonPositiveParameter(f"n_devices must be > 0, got {n_devices}")
    if n_contenders < 0 or n_contenders > n_devices:
        raise RangeViolation(
            f"n_contenders must lie in [0, {n_devices}], got {n_contenders}")
    return n_contenders / n_devices


def reward_mplql(success: bool) -> float:
    """+1 on success, -1 on failure."""
    return 1.0 if success else -1.0


def reward_independent(success: bool) -> float:
    """Same binary reward as the multi-level scheme, over slot-only actions."""
    return reward_mplql(success)


def reward_collaborative(success: bool, congestion_value: float) -> float:
    """+1 on success; on failure, minus the slot's congestion.

    Crowded slots punish harder, pushing losers away from popular slots.
    """
    if not 0.0 <= congestion_value <= 1.0:
        raise RangeViolation(
            f"congestion_value must lie in [0, 1], got {congestion_value}")
    return 1.0 if success else -congestion_value


def reward_packet(success: bool, remaining_packets: int,
                  total_packets: int) -> float:
    """+1 on success; on failure, minus the device's delivery progress.

    The penalty is the convergence factor (delivered / total), so failures
    cost more as the device nears completion and holding its slot matters
    most.
    """
    if not total_packets > 0:
        raise NonPositiveParameter(
            f"total_packets must be > 0, got {total_packets}")
    if remaining_packets < 0 or remaining_packets > total_packets:
        raise RangeViolation(
            f"remaining_packets must lie in [0, {total_packets}], "
            f"got {remaining_packets}")
    return 1.0 if success else -(total_packets - remaining_packets) / total_packets
