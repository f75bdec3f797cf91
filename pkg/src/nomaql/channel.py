"""Cell geometry, path loss, small-scale fading, and transmit power levels.

Propagation model: log-distance path loss with exponent ``eta`` referenced
to the free-space gain at ``d0``, thermal noise set by a flat PSD over the
signal bandwidth, and (when the Rayleigh fading mode is selected) a squared
channel magnitude redrawn as Exp(1) for every transmission. The unit fading
mode pins the gain at its mean instead; see core.FadingMode.
"""

from __future__ import annotations

import numpy as np

from .core import (
    GeometryError,
    LevelMode,
    NonPositiveParameter,
    SystemParams,
    dbm_to_watts,
    watts_to_dbm,
)

SPEED_OF_LIGHT = 2.998e8  # m/s


def place_devices(n: int, cell_radius_m: float, ref_distance_m: float,
                  rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` device distances, uniform over the cell disc.

    Uniform area density means the radial CDF is (d/r)^2, so distances are
    ``r * sqrt(u)`` with u uniform. Draws inside the reference distance are
    clamped to ``ref_distance_m``, where the path-loss model anchors.
    """
    if not ref_distance_m < cell_radius_m:
        raise GeometryError(
            f"ref_distance_m ({ref_distance_m}) must be smaller than "
            f"cell_radius_m ({cell_radius_m})")
    u = rng.uniform(size=n)
    return np.maximum(ref_distance_m, cell_radius_m * np.sqrt(u))


def reference_power_db(carrier_hz: float, ref_distance_m: float) -> float:
    """Free-space gain at the reference distance, in dB.

    20*log10(c / (4*pi*d0*fc)): the Friis loss at d0 with unit antenna
    gains, used as the anchor of the log-distance model.
    """
    if not carrier_hz > 0:
        raise NonPositiveParameter(f"carrier_hz must be > 0, got {carrier_hz}")
    if not ref_distance_m > 0:
        raise NonPositiveParameter(
            f"ref_distance_m must be > 0, got {ref_distance_m}")
    return 20.0 * np.log10(
        SPEED_OF_LIGHT / (4.0 * np.pi * ref_distance_m * carrier_hz))


def mean_rx_power_dbm(pt_dbm, distance_m, params: SystemParams):
    """Average received power in dBm: transmit power minus path loss.

    ``pt_dbm + K_ref - 10 * eta * log10(d / d0)`` with ``K_ref`` the
    reference gain from :func:`reference_power_db`. Broadcasts over arrays,
    e.g. ``pt_dbm`` of shape (P,) against distances of shape (N, 1).
    """
    d = np.asarray(distance_m, dtype=float)
    if np.any(d < params.ref_distance_m):
        raise GeometryError(
            f"distances below ref_distance_m ({params.ref_distance_m}) are "
            "outside the path-loss model's validity")
    ref = reference_power_db(params.carrier_hz, params.ref_distance_m)
    return (np.asarray(pt_dbm, dtype=float) + ref
            - 10.0 * params.pathloss_exponent * np.log10(d / params.ref_distance_m))


def level_table(n_levels: int, max_power_w: float,
                mode: LevelMode = LevelMode.POSITIVE_EQUIDISTANT) -> np.ndarray:
    """Transmit power (watts) of each selectable level, index 0 weakest.

    POSITIVE_EQUIDISTANT spaces the *amplitudes* evenly over (0, V] where
    V is the peak amplitude, so level p of P carries power
    ``max_power_w * ((p+1)/P)**2`` and all P powers are distinct.

    SYMMETRIC_LITERAL spaces amplitudes evenly over [-V, V]; squaring
    collapses the sign, so opposite-sign pairs yield duplicate powers
    (e.g. P=4 gives powers {V^2/9, V^2/9, V^2, V^2} in table order).
    """
    if not (isinstance(n_levels, (int, np.integer)) and n_levels >= 1):
        raise NonPositiveParameter(
            f"n_levels must be a positive integer, got {n_levels!r}")
    if not max_power_w > 0:
        raise NonPositiveParameter(
            f"max_power_w must be > 0, got {max_power_w}")
    if mode is LevelMode.POSITIVE_EQUIDISTANT:
        amplitudes = np.arange(1, n_levels + 1) / n_levels
    else:
        if n_levels == 1:
            amplitudes = np.ones(1)
        else:
            amplitudes = np.linspace(-1.0, 1.0, n_levels)
    return max_power_w * amplitudes ** 2


def draw_fading(rng: np.random.Generator, size=None):
    """Squared Rayleigh channel magnitude(s): Exp(1) samples."""
    return rng.exponential(1.0, size=size)


def noise_power_w(noise_psd_dbm_hz: float, bandwidth_hz: float) -> float:
    """Thermal noise power in watts over the signal bandwidth."""
    if not bandwidth_hz > 0:
        raise NonPositiveParameter(
            f"bandwidth_hz must be > 0, got {bandwidth_hz}")
    return float(dbm_to_watts(noise_psd_dbm_hz + 10.0 * np.log10(bandwidth_hz)))
