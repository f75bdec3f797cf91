"""SIC ordering, per-contender SINR, success decisions, and rewards."""

import numpy as np
import pytest

from nomaql.core import NonPositiveParameter, RangeViolation, TransmissionAttempt
from nomaql.receiver import (
    congestion,
    decide_success,
    reward_collaborative,
    reward_independent,
    reward_mplql,
    reward_packet,
    sic_order,
    sinr_noma,
)


def attempt(device_id, rx_power_w, slot=0):
    return TransmissionAttempt(device_id=device_id, slot=slot, power_level=0,
                               fading_gain=1.0, rx_power_w=rx_power_w)


def test_sic_order_descending_power():
    a = [attempt(0, 1.0), attempt(1, 4.0), attempt(2, 2.0)]
    assert [x.device_id for x in sic_order(a)] == [1, 2, 0]


def test_sic_order_ties_by_id():
    a = [attempt(5, 2.0), attempt(1, 2.0), attempt(3, 2.0)]
    assert [x.device_id for x in sic_order(a)] == [1, 3, 5]


def test_sinr_hand_worked_values():
    powers = np.array([8.0, 4.0, 2.0, 1.0])
    # Perfect cancellation: the strongest sees all weaker plus noise.
    assert sinr_noma(powers, 0, 0.0, 1.0) == pytest.approx(8.0 / 8.0)
    assert sinr_noma(powers, 1, 0.0, 1.0) == pytest.approx(4.0 / 4.0)
    assert sinr_noma(powers, 3, 0.0, 1.0) == pytest.approx(1.0)
    # Residual factor 0.5 re-adds half of every cancelled signal.
    assert sinr_noma(powers, 1, 0.5, 1.0) == pytest.approx(4.0 / 8.0)
    assert sinr_noma(powers, 3, 0.5, 1.0) == pytest.approx(1.0 / 8.0)
    # Single contender reduces to plain SNR.
    assert sinr_noma(np.array([6.0]), 0, 0.3, 2.0) == pytest.approx(3.0)


def test_sinr_monotone_in_residual_factor():
    rng = np.random.default_rng(42)
    betas = np.linspace(0.0, 1.0, 11)
    for _ in range(300):
        m = int(rng.integers(1, 9))
        powers = np.sort(rng.uniform(1e-14, 1e-6, size=m))[::-1]
        noise = float(rng.uniform(1e-16, 1e-10))
        for i in range(m):
            vals = [sinr_noma(powers, i, float(b), noise) for b in betas]
            assert np.all(np.diff(vals) <= 1e-12 * np.abs(vals[:-1]))


def test_sinr_errors():
    powers = np.array([2.0, 1.0])
    with pytest.raises(RangeViolation):
        sinr_noma(powers, 0, -0.1, 1.0)
    with pytest.raises(RangeViolation):
        sinr_noma(powers, 0, 1.5, 1.0)
    with pytest.raises(NonPositiveParameter):
        sinr_noma(powers, 0, 0.0, 0.0)
    with pytest.raises(IndexError):
        sinr_noma(powers, 2, 0.0, 1.0)


def test_decide_success_inclusive_threshold():
    assert decide_success(3.0, 3.0)
    assert decide_success(3.0001, 3.0)
    assert not decide_success(2.9999, 3.0)
    with pytest.raises(NonPositiveParameter):
        decide_success(1.0, 0.0)


def test_congestion():
    assert congestion(4, 400) == pytest.approx(0.01)
    assert congestion(0, 400) == 0.0
    assert congestion(400, 400) == 1.0
    with pytest.raises(RangeViolation):
        congestion(5, 4)
    with pytest.raises(RangeViolation):
        congestion(-1, 4)
    with pytest.raises(NonPositiveParameter):
        congestion(0, 0)


def test_binary_rewards():
    assert reward_mplql(True) == 1.0
    assert reward_mplql(False) == -1.0
    assert reward_independent(True) == 1.0
    assert reward_independent(False) == -1.0


def test_collaborative_reward():
    assert reward_collaborative(True, 0.9) == 1.0
    assert reward_collaborative(False, 0.25) == -0.25
    assert reward_collaborative(False, 0.0) == 0.0
    with pytest.raises(RangeViolation):
        reward_collaborative(False, 1.5)


def test_packet_reward_scales_with_progress():
    # Failure penalty equals the delivered fraction.
    assert reward_packet(True, 60, 100) == 1.0
    assert reward_packet(False, 100, 100) == 0.0
    assert reward_packet(False, 25, 100) == pytest.approx(-0.75)
    assert reward_packet(False, 0, 100) == -1.0
    with pytest.raises(RangeViolation):
        reward_packet(False, 101, 100)
    with pytest.raises(NonPositiveParameter):
        reward_packet(False, 0, 0)
    # All rewards stay in [-1, 1] across the whole progress range.
    for remaining in range(0, 101):
        r = reward_packet(False, remaining, 100)
        assert -1.0 <= r <= 1.0
