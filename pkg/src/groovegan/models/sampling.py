"""Latent vector sampling."""

from __future__ import annotations

import numpy as np

from ..errors import ContractViolationError
from .nets import LATENT_DIM


def sample_z(n: int, seed: int, dim: int = LATENT_DIM) -> np.ndarray:
    """(n, dim) i.i.d. standard-normal latent vectors, deterministic per seed."""
    if n <= 0:
        raise ContractViolationError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, dim)).astype(np.float32)
