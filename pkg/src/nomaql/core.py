"""Domain types, parameter validation, and unit helpers.

Everything downstream (channel, agent, receiver, engine) builds on the
types defined here; no simulation logic lives in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np


# --------------------------------------------------------------------------
# errors

class ParameterError(ValueError):
    """Invalid system parameters. The message lists every violation found."""


class NonPositiveParameter(ParameterError):
    """A quantity that must be strictly positive is zero or negative."""


class RangeViolation(ParameterError):
    """A bounded quantity (learning rate, SIC residual, ...) is out of range."""


class GeometryError(ParameterError):
    """Inconsistent cell geometry (e.g. reference distance >= cell radius)."""


class DeviceNotInSlot(LookupError):
    """The queried device did not transmit in the given slot."""


class EmptyInput(ValueError):
    """An aggregation was asked to summarize zero results."""


# --------------------------------------------------------------------------
# enums

class Protocol(Enum):
    """Access protocol run by every device in the cell."""

    MPL_QL = "mpl-ql"
    INDEPENDENT_QL = "independent-ql"
    COLLABORATIVE_QL = "collaborative-ql"
    PACKET_QL = "packet-ql"
    SLOTTED_ALOHA = "slotted-aloha"

    @property
    def uses_qlearning(self) -> bool:
        return self is not Protocol.SLOTTED_ALOHA

    @property
    def uses_power_levels(self) -> bool:
        """Only the multi-power-level protocol picks among several levels."""
        return self is Protocol.MPL_QL


class LevelMode(Enum):
    """How the discrete transmit power levels are spaced (see channel.level_table)."""

    POSITIVE_EQUIDISTANT = "positive-equidistant"
    SYMMETRIC_LITERAL = "symmetric-literal"


class FadingMode(Enum):
    """Small-scale fading applied to each transmission's received power.

    UNIT fixes the channel gain at its mean (h^2 = 1): received powers are
    set by path loss and the chosen level alone, so SIC margins are stable
    from frame to frame and the learned slot/level equilibria persist.
    This is the default; the headline contention experiments run here.

    RAYLEIGH_PER_FRAME redraws an Exp(1) squared magnitude per device per
    frame. Frame-to-frame channel churn then dominates the margin between
    power levels, which suppresses the benefit of level diversity; the
    mode is kept for sensitivity studies.
    """

    UNIT = "unit"
    RAYLEIGH_PER_FRAME = "rayleigh-per-frame"


# --------------------------------------------------------------------------
# unit helpers

def dbm_to_watts(p_dbm):
    """Convert dBm to watts. Works on scalars and arrays."""
    return 10.0 ** (np.asarray(p_dbm, dtype=float) / 10.0) / 1000.0


def watts_to_dbm(p_w):
    """Convert watts to dBm. Works on scalars and arrays."""
    return 10.0 * np.log10(np.asarray(p_w, dtype=float) * 1000.0)


def sinr_threshold_from_se(spectral_efficiency: float) -> float:
    """Linear SINR threshold implied by a spectral efficiency in bit/s/Hz.

    Inverts the Shannon rate: a target of ``zeta`` bit/s/Hz needs
    ``2**zeta - 1`` in linear SINR. zeta = 2 gives the default threshold 3.
    """
    if not spectral_efficiency > 0:
        raise NonPositiveParameter(
            f"spectral_efficiency must be > 0, got {spectral_efficiency}")
    return 2.0 ** float(spectral_efficiency) - 1.0


# --------------------------------------------------------------------------
# system parameters

@dataclass(frozen=True)
class SystemParams:
    """Full description of one simulated system.

    Defaults follow the reference configuration: a 200 m cell, 915 MHz
    carrier, 125 kHz bandwidth, path-loss exponent 3, 1 mW peak transmit
    power, 100 slots per frame, 100 packets per device, learning rate 0.1
    and a linear SINR threshold of 3 (2 bit/s/Hz).

    ``max_frames`` is a safety cap for runs that never drain their
    backlog; ``None`` resolves to ``10 * packets_per_device`` in
    :func:`validate`.
    """

    n_devices: int = 400
    n_slots: int = 100
    packets_per_device: int = 100
    n_power_levels: int = 8
    learning_rate: float = 0.1
    sinr_threshold: float = 3.0
    sic_error_factor: float = 0.0
    protocol: Protocol = Protocol.MPL_QL
    level_mode: LevelMode = LevelMode.POSITIVE_EQUIDISTANT
    fading_mode: FadingMode = FadingMode.UNIT
    cell_radius_m: float = 200.0
    ref_distance_m: float = 1.0
    carrier_hz: float = 915e6
    bandwidth_hz: float = 125e3
    pathloss_exponent: float = 3.0
    noise_psd_dbm_hz: float = -150.0
    max_power_w: float = 1e-3
    max_frames: Optional[int] = None
    sa_sinr_check: bool = False

    @property
    def loading_factor(self) -> float:
        """Devices per slot, N/K."""
        return self.n_devices / self.n_slots

    @property
    def total_packets(self) -> int:
        return self.n_devices * self.packets_per_device


def validate(params: SystemParams) -> SystemParams:
    """Check every invariant of ``params`` and return a normalized copy.

    All violations are collected before raising, so the error message
    enumerates everything wrong at once. The raised class is the specific
    one when all violations share it, otherwise the common base
    ``ParameterError``.

    Normalization performed on the returned copy:

    * ``max_frames=None`` resolves to ``10 * packets_per_device``;
    * protocols without power-level choice are forced to a single level.
    """
    errors: list[tuple[type, str]] = []

    def positive(name, value, integral=False):
        if integral and not isinstance(value, (int, np.integer)):
            errors.append((NonPositiveParameter,
                           f"{name} must be a positive integer, got {value!r}"))
            return
        if not value > 0:
            errors.append((NonPositiveParameter,
                           f"{name} must be > 0, got {value}"))

    positive("n_devices", params.n_devices, integral=True)
    positive("n_slots", params.n_slots, integral=True)
    positive("packets_per_device", params.packets_per_device, integral=True)
    positive("n_power_levels", params.n_power_levels, integral=True)
    positive("sinr_threshold", params.sinr_threshold)
    positive("cell_radius_m", params.cell_radius_m)
    positive("ref_distance_m", params.ref_distance_m)
    positive("carrier_hz", params.carrier_hz)
    positive("bandwidth_hz", params.bandwidth_hz)
    positive("pathloss_exponent", params.pathloss_exponent)
    positive("max_power_w", params.max_power_w)
    if params.max_frames is not None:
        positive("max_frames", params.max_frames, integral=True)

    if not 0.0 <= params.learning_rate <= 1.0:
        errors.append((RangeViolation,
                       f"learning_rate must lie in [0, 1], got {params.learning_rate}"))
    if not 0.0 <= params.sic_error_factor <= 1.0:
        errors.append((RangeViolation,
                       f"sic_error_factor must lie in [0, 1], got {params.sic_error_factor}"))

    if (params.ref_distance_m > 0 and params.cell_radius_m > 0
            and not params.ref_distance_m < params.cell_radius_m):
        errors.append((GeometryError,
                       f"ref_distance_m ({params.ref_distance_m}) must be smaller "
                       f"than cell_radius_m ({params.cell_radius_m})"))

    if errors:
        classes = {cls for cls, _ in errors}
        exc = classes.pop() if len(classes) == 1 else ParameterError
        raise exc("; ".join(msg for _, msg in errors))

    out = params
    if out.max_frames is None:
        out = replace(out, max_frames=10 * out.packets_per_device)
    if not out.protocol.uses_power_levels and out.n_power_levels != 1:
        out = replace(out, n_power_levels=1)
    return out


# --------------------------------------------------------------------------
# simulation records

@dataclass
class Device:
    """One terminal: its geometry, backlog, and (for QL protocols) Q-table.

    ``mean_rx_power_dbm_per_level[p]`` is the average received power at the
    base station when the device transmits at level index ``p``, i.e. path
    loss applied to that level's transmit power, before fading.
    ``q_table`` has shape (n_slots, n_power_levels); slotted ALOHA devices
    carry ``None``.
    """

    id: int
    distance_m: float
    mean_rx_power_dbm_per_level: np.ndarray
    remaining_packets: int
    q_table: Optional[np.ndarray]


@dataclass(frozen=True)
class TransmissionAttempt:
    """One device's transmission in one frame.

    ``rx_power_w = fading_gain * dbm_to_watts(mean rx power of the chosen
    level)``; fading_gain is the squared channel magnitude.
    """

    device_id: int
    slot: int
    power_level: int
    fading_gain: float
    rx_power_w: float


@dataclass
class SlotOutcome:
    """Decoding result for one slot of one frame.

    ``sic_order`` lists the contenders sorted by received power, strongest
    first (ties broken by device id). ``sinr_per_contender``,
    ``success_flags`` and ``rewards`` are all aligned with ``sic_order``.
    ``congestion`` is the fraction of the population that chose this slot.
    """

    slot: int
    contenders: list[TransmissionAttempt]
    sic_order: list[TransmissionAttempt]
    sinr_per_contender: list[float]
    success_flags: list[bool]
    rewards: list[float]
    congestion: float


@dataclass
class RunResult:
    """Outcome of one realization.

    ``latency_frames`` counts frames until the cell drained its backlog, or
    until the ``max_frames`` cap when it did not (``converged=False``).
    Throughput is successes per slot per frame,
    ``total_successes / (latency_frames * n_slots)``.

    The per-frame traces are keyed by tracked device id. Frames where the
    tracked device had already finished record interference 0, slot and
    level -1, success False and convergence factor 1.
    """

    total_successes: int
    latency_frames: int
    converged: bool
    throughput: float
    frame_successes: np.ndarray
    tracked_ids: tuple[int, ...]
    interference_trace: dict[int, np.ndarray]
    convergence_trace: dict[int, np.ndarray]
    slot_trace: dict[int, np.ndarray]
    level_trace: dict[int, np.ndarray]
    success_trace: dict[int, np.ndarray]
