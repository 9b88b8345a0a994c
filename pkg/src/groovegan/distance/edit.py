"""Swap/edit distance between rhythm patterns.

A pattern distance is the sum over the nine instruments of a per-track edit
distance: onsets may shift position (cost = steps moved, i.e. a chain of
adjacent swaps), be deleted, or be inserted (flat cost each). Velocities are
ignored; matrices are binarized first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..core.types import N_INSTRUMENTS, N_STEPS, OnsetMatrix
from ..errors import ContractViolationError
from .config import DistanceConfig


@dataclass(frozen=True)
class OnsetPositions:
    """Per-instrument sorted onset step indices (velocities discarded)."""

    tracks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.tracks) != N_INSTRUMENTS:
            raise ContractViolationError(f"expected {N_INSTRUMENTS} tracks, got {len(self.tracks)}")
        for positions in self.tracks:
            _check_track(positions)


def _check_track(positions) -> None:
    prev = -1
    for p in positions:
        if not 0 <= p < N_STEPS:
            raise ContractViolationError(f"onset position {p} outside 0..{N_STEPS - 1}")
        if p <= prev:
            raise ContractViolationError("onset positions must be strictly increasing")
        prev = p


def binarize(matrix: OnsetMatrix, threshold: float) -> OnsetPositions:
    """Positions of cells whose velocity is >= threshold."""
    if not 0.0 < threshold < 1.0:
        raise ContractViolationError(f"threshold must lie in (0, 1), got {threshold}")
    mask = matrix.values >= threshold
    return OnsetPositions(
        tracks=tuple(tuple(int(t) for t in np.nonzero(mask[i])[0]) for i in range(N_INSTRUMENTS))
    )


def track_edit_distance(a, b, cfg: DistanceConfig | None = None) -> float:
    """Minimum edit cost between two sorted onset-position lists."""
    cfg = cfg or DistanceConfig()
    _check_track(a)
    _check_track(b)
    return float(_kernels.track_distance(list(a), list(b), cfg.indel_cost))


def pattern_distance(a: OnsetPositions, b: OnsetPositions, cfg: DistanceConfig | None = None) -> float:
    """Sum of the nine per-instrument track distances."""
    cfg = cfg or DistanceConfig()
    return float(
        sum(
            _kernels.track_distance(list(ta), list(tb), cfg.indel_cost)
            for ta, tb in zip(a.tracks, b.tracks)
        )
    )


def binarize_stack(matrices: np.ndarray, threshold: float) -> np.ndarray:
    """(N, 9, 32) velocities -> (N, 9, 32) uint8 onset indicators."""
    return (np.asarray(matrices) >= threshold).astype(np.uint8)
