"""Monte Carlo simulator for Q-learning grant-free random access over a
power-domain NOMA uplink, with slotted-ALOHA and single-level Q-learning
baselines."""

from .core import (
    Device,
    DeviceNotInSlot,
    EmptyInput,
    FadingMode,
    GeometryError,
    LevelMode,
    NonPositiveParameter,
    ParameterError,
    Protocol,
    RangeViolation,
    RunResult,
    SlotOutcome,
    SystemParams,
    TransmissionAttempt,
    dbm_to_watts,
    sinr_threshold_from_se,
    validate,
    watts_to_dbm,
)
from .engine import (
    build_devices,
    convergence_factor,
    interference_sample,
    run_frame,
    run_realization,
    run_slotted_aloha,
)
from .montecarlo import (
    GRID_KEYS,
    GridPointResult,
    PointStats,
    SweepConfig,
    SweepResult,
    aggregate,
    derive_seed,
    point_params,
    run_sweep,
)

__version__ = "1.0.0"

__all__ = [
    "Device", "DeviceNotInSlot", "EmptyInput", "FadingMode", "GeometryError",
    "LevelMode",
    "NonPositiveParameter", "ParameterError", "Protocol", "RangeViolation",
    "RunResult", "SlotOutcome", "SystemParams", "TransmissionAttempt",
    "dbm_to_watts", "sinr_threshold_from_se", "validate", "watts_to_dbm",
    "build_devices", "convergence_factor", "interference_sample",
    "run_frame", "run_realization", "run_slotted_aloha",
    "GRID_KEYS", "GridPointResult", "PointStats", "SweepConfig",
    "SweepResult", "aggregate", "derive_seed", "point_params", "run_sweep",
    "__version__",
]
