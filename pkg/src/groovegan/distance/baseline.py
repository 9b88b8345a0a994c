"""Random baseline patterns and averaged onset matrices."""

from __future__ import annotations

import numpy as np

from ..core.types import N_INSTRUMENTS, N_STEPS, InstrumentStats, OnsetMatrix
from ..errors import ContractViolationError

BASELINE_VELOCITY = 0.8


def baseline_random_patterns(stats: InstrumentStats, n: int, seed: int) -> list[OnsetMatrix]:
    """Patterns whose per-instrument onset counts follow the dataset stats.

    Counts are drawn from Normal(mean, std), rounded and clamped to [0, 32];
    steps are chosen uniformly without replacement; velocities are fixed.
    """
    if n <= 0:
        raise ContractViolationError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        grid = np.zeros((N_INSTRUMENTS, N_STEPS))
        for row in range(N_INSTRUMENTS):
            count = int(np.clip(round(rng.normal(stats.mean[row], stats.std[row])), 0, N_STEPS))
            if count:
                steps = rng.choice(N_STEPS, size=count, replace=False)
                grid[row, steps] = BASELINE_VELOCITY
        out.append(OnsetMatrix(grid))
    return out


def averaged_onset_matrix(patterns: list[OnsetMatrix] | np.ndarray) -> np.ndarray:
    """Element-wise mean of raw velocity matrices (no thresholding)."""
    if isinstance(patterns, np.ndarray):
        if len(patterns) == 0:
            raise ContractViolationError("cannot average an empty pattern set")
        return np.asarray(patterns, dtype=np.float64).mean(axis=0)
    if not patterns:
        raise ContractViolationError("cannot average an empty pattern set")
    return np.stack([m.values for m in patterns]).mean(axis=0)
