"""Stateless tabular Q-learning over (slot, power level) actions.

Each device keeps one table of shape (n_slots, n_power_levels). There is
no state transition and no discounting: the update is the bandit form
``Q <- Q + alpha * (R - Q)``. Action selection is pure greedy; exploration
comes from the random initialization in [-1, 1] and from uniform random
tie-breaking, which also randomizes the very first pick of every device.
"""

from __future__ import annotations

import numpy as np

from .core import NonPositiveParameter, RangeViolation


def init_qtable(n_slots: int, n_levels: int,
                rng: np.random.Generator) -> np.ndarray:
    """Fresh Q-table, entries i.i.d. uniform on [-1, 1]."""
    if not (isinstance(n_slots, (int, np.integer)) and n_slots >= 1):
        raise NonPositiveParameter(
            f"n_slots must be a positive integer, got {n_slots!r}")
    if not (isinstance(n_levels, (int, np.integer)) and n_levels >= 1):
        raise NonPositiveParameter(
            f"n_levels must be a positive integer, got {n_levels!r}")
    return rng.uniform(-1.0, 1.0, size=(int(n_slots), int(n_levels)))


def select_action(q_table: np.ndarray, rng: np.random.Generator) -> tuple[int, int]:
    """Greedy (slot, level) pick with uniform random tie-breaking.

    Ties are exact float equalities with the maximum; the generator is
    consulted only when at least two entries tie, so a table with a unique
    maximum consumes no randomness.
    """
    q = np.asarray(q_table)
    flat = q.ravel()
    idx = int(flat.argmax())
    ties = np.flatnonzero(flat == flat[idx])
    if ties.size > 1:
        idx = int(ties[rng.integers(ties.size)])
    k, p = np.unravel_index(idx, q.shape)
    return int(k), int(p)


def update_q(q_old: float, reward: float, learning_rate: float) -> float:
    """One bandit-style update: ``q + alpha * (reward - q)``.

    With rewards bounded in [-1, 1] and alpha in [0, 1] the iterate can
    never leave [-1, 1] once the table is initialized there.
    """
    if not 0.0 <= learning_rate <= 1.0:
        raise RangeViolation(
            f"learning_rate must lie in [0, 1], got {learning_rate}")
    return q_old + learning_rate * (reward - q_old)
