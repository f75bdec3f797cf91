"""Q-table initialization, greedy selection with tie-breaking, updates."""

import numpy as np
import pytest

from nomaql.agent import init_qtable, select_action, update_q
from nomaql.core import NonPositiveParameter, RangeViolation


def test_init_qtable_shape_and_range():
    rng = np.random.default_rng(0)
    q = init_qtable(100, 8, rng)
    assert q.shape == (100, 8)
    assert np.all(q >= -1.0) and np.all(q <= 1.0)
    # Large-sample sanity on the uniform fill.
    assert abs(q.mean()) < 0.05


def test_init_qtable_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(NonPositiveParameter):
        init_qtable(0, 8, rng)
    with pytest.raises(NonPositiveParameter):
        init_qtable(100, 0, rng)


def test_select_action_unique_max():
    rng = np.random.default_rng(1)
    q = np.zeros((5, 3))
    q[3, 2] = 0.7
    state_before = rng.bit_generator.state
    assert select_action(q, rng) == (3, 2)
    # A unique maximum must not consume randomness.
    assert rng.bit_generator.state == state_before


def test_select_action_tie_break_uniform():
    q = np.full((2, 2), -0.25)
    q[0, 1] = 0.5
    q[1, 0] = 0.5
    rng = np.random.default_rng(7)
    picks = [select_action(q, rng) for _ in range(10000)]
    counts = {a: picks.count(a) for a in {(0, 1), (1, 0)}}
    assert set(counts) == {(0, 1), (1, 0)}
    # Binomial(10000, 0.5): three sigma is about 150.
    assert abs(counts[(0, 1)] - 5000) < 200


def test_select_action_all_tied_covers_table():
    q = np.zeros((2, 2))
    rng = np.random.default_rng(9)
    picks = {select_action(q, rng) for _ in range(200)}
    assert picks == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_update_q_basic_and_errors():
    assert update_q(0.0, 1.0, 0.1) == pytest.approx(0.1)
    assert update_q(0.5, -1.0, 0.5) == pytest.approx(-0.25)
    assert update_q(0.3, 0.3, 0.7) == pytest.approx(0.3)
    with pytest.raises(RangeViolation):
        update_q(0.0, 1.0, -0.1)
    with pytest.raises(RangeViolation):
        update_q(0.0, 1.0, 1.1)


def test_update_q_bounded_many_random_sequences():
    # 1e5 independent sequences, 50 steps each, rewards in [-1, 1]:
    # iterates can never escape [-1, 1].
    rng = np.random.default_rng(123)
    n = 100000
    q = rng.uniform(-1.0, 1.0, size=n)
    alpha = rng.uniform(0.0, 1.0, size=n)
    for _ in range(50):
        r = rng.uniform(-1.0, 1.0, size=n)
        q = q + alpha * (r - q)
        assert np.all(q >= -1.0) and np.all(q <= 1.0)


def test_update_q_geometric_approach_dyadic_exact():
    # Constant reward R drives Q along R + (1 - alpha)^t (Q0 - R). With
    # dyadic alpha and endpoints every float op is exact, so the identity
    # holds bitwise.
    q, q0, reward, alpha = 0.0, 0.0, 1.0, 0.5
    for t in range(1, 40):
        q = update_q(q, reward, alpha)
        assert q == reward + (1.0 - alpha) ** t * (q0 - reward)


def test_update_q_geometric_approach_general():
    q0, reward, alpha = -0.37, 0.81, 0.3
    q = q0
    for t in range(1, 200):
        q = update_q(q, reward, alpha)
        want = reward + (1.0 - alpha) ** t * (q0 - reward)
        assert q == pytest.approx(want, rel=1e-12, abs=1e-14)
    assert q == pytest.approx(reward, abs=1e-14)
