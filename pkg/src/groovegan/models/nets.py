"""Network architectures: recurrent generator, discriminators, genre classifier.

All networks read and emit onset matrices as (batch, 9, 32) tensors; the
recurrent stacks run over the 32-step time axis with the instruments as
features. Sizes are configurable so the gradient-check tests can build
miniature twins of the full models.
"""

from __future__ import annotations

import numpy as np
import torch
from torch import nn

from ..core.types import N_INSTRUMENTS, N_STEPS, GenreLabel, OnsetMatrix
from ..errors import ContractViolationError

LATENT_DIM = 100
LEAKY_SLOPE = 0.2


class RhythmGenerator(nn.Module):
    """Latent vector -> onset matrix through dense layers and an LSTM stack.

    The conditioned variant embeds the genre label into the latent space and
    multiplies it into z element-wise before the dense layers.
    """

    def __init__(
        self,
        latent_dim: int = LATENT_DIM,
        steps: int = N_STEPS,
        n_instruments: int = N_INSTRUMENTS,
        dense_size: int = 128,
        seq_features: int = 16,
        lstm_sizes: tuple[int, ...] = (128, 128),
        n_genres: int | None = None,
        input_gain: float = 8.0,
        dense_gain: float = 2.0,
    ):
        super().__init__()
        self.latent_dim = latent_dim
        self.steps = steps
        self.n_instruments = n_instruments
        self.n_genres = n_genres
        self.embedding = nn.Embedding(n_genres, latent_dim) if n_genres else None
        self.dense = nn.Sequential(
            nn.Linear(latent_dim, dense_size),
            nn.LeakyReLU(LEAKY_SLOPE),
            nn.Linear(dense_size, steps * seq_features),
            nn.LeakyReLU(LEAKY_SLOPE),
        )
        self.seq_features = seq_features
        sizes = (seq_features,) + tuple(lstm_sizes) + (n_instruments,)
        self.lstms = nn.ModuleList(
            nn.LSTM(sizes[i], sizes[i + 1], batch_first=True) for i in range(len(sizes) - 1)
        )
        # Stock LSTM initialization attenuates the latent signal so strongly
        # across the stack that the output is z-insensitive; widen the input
        # paths at init so different z land on different patterns from the start.
        with torch.no_grad():
            for lstm in self.lstms:
                for name, p in lstm.named_parameters():
                    if name.startswith("weight_ih"):
                        p.mul_(input_gain)
            for layer in self.dense:
                if isinstance(layer, nn.Linear):
                    layer.weight.mul_(dense_gain)

    @property
    def conditioned(self) -> bool:
        return self.embedding is not None

    def forward(self, z: torch.Tensor, labels: torch.Tensor | None = None) -> torch.Tensor:
        if self.conditioned:
            if labels is None:
                raise ContractViolationError("conditioned generator needs genre labels")
            z = z * self.embedding(labels)
        elif labels is not None:
            raise ContractViolationError("unconditioned generator takes no genre labels")
        h = self.dense(z).reshape(-1, self.steps, self.seq_features)
        for lstm in self.lstms:
            h, _ = lstm(h)
        return torch.sigmoid(h).transpose(1, 2)  # (B, instruments, steps)


class _BiLstmTrunk(nn.Module):
    """Two bidirectional LSTM layers; returns the full-context summary
    (forward state at the last step, backward state at the first)."""

    def __init__(self, in_features: int, units: int):
        super().__init__()
        self.lstm1 = nn.LSTM(in_features, units, batch_first=True, bidirectional=True)
        self.lstm2 = nn.LSTM(2 * units, units, batch_first=True, bidirectional=True)
        self.units = units
        self.out_features = 2 * units

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        h, _ = self.lstm1(x.transpose(1, 2))  # (B, steps, 2*units)
        h, _ = self.lstm2(h)
        return torch.cat([h[:, -1, : self.units], h[:, 0, self.units :]], dim=1)


def _head(in_features: int, hidden: int, out_features: int, dropout: float = 0.0) -> nn.Sequential:
    layers: list[nn.Module] = [nn.Linear(in_features, hidden), nn.LeakyReLU(LEAKY_SLOPE)]
    if dropout > 0:
        layers.append(nn.Dropout(dropout))
    layers.append(nn.Linear(hidden, out_features))
    return nn.Sequential(*layers)


class CreativeDiscriminator(nn.Module):
    """Shared recurrent trunk with a real/fake head and a genre head."""

    def __init__(
        self, n_genres: int, units: int = 64, n_instruments: int = N_INSTRUMENTS,
        dropout: float = 0.0,
    ):
        super().__init__()
        self.n_genres = n_genres
        self.trunk = _BiLstmTrunk(n_instruments, units)
        self.drop = nn.Dropout(dropout) if dropout > 0 else nn.Identity()
        self.real_head = _head(self.trunk.out_features, units, 1, dropout)
        self.genre_head = _head(self.trunk.out_features, units, n_genres, dropout)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        h = self.drop(self.trunk(x))
        real = torch.sigmoid(self.real_head(h)).squeeze(-1)
        posterior = torch.softmax(self.genre_head(h), dim=-1)
        return real, posterior


class ConditionedDiscriminator(nn.Module):
    """Real/fake discriminator fed the matrix concatenated with an embedded
    genre label of the same 9x32 shape (18 features per step)."""

    def __init__(
        self,
        n_genres: int,
        units: int = 64,
        n_instruments: int = N_INSTRUMENTS,
        steps: int = N_STEPS,
        dropout: float = 0.0,
    ):
        super().__init__()
        self.n_genres = n_genres
        self.n_instruments = n_instruments
        self.steps = steps
        self.embedding = nn.Embedding(n_genres, n_instruments * steps)
        self.trunk = _BiLstmTrunk(2 * n_instruments, units)
        self.drop = nn.Dropout(dropout) if dropout > 0 else nn.Identity()
        self.real_head = _head(self.trunk.out_features, units, 1, dropout)

    def forward(self, x: torch.Tensor, labels: torch.Tensor) -> torch.Tensor:
        grid = self.embedding(labels).reshape(-1, self.n_instruments, self.steps)
        joined = torch.cat([x, grid], dim=1)
        return torch.sigmoid(self.real_head(self.drop(self.trunk(joined)))).squeeze(-1)


class GenreClassifier(nn.Module):
    """Standalone genre classifier with the discriminator's trunk shape."""

    def __init__(self, n_genres: int, units: int = 64, n_instruments: int = N_INSTRUMENTS):
        super().__init__()
        self.n_genres = n_genres
        self.trunk = _BiLstmTrunk(n_instruments, units)
        self.genre_head = _head(self.trunk.out_features, units, n_genres)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return torch.softmax(self.genre_head(self.trunk(x)), dim=-1)


def _as_batch(matrix: OnsetMatrix, like: nn.Module) -> torch.Tensor:
    dtype = next(like.parameters()).dtype
    return torch.from_numpy(np.asarray(matrix.values)).to(dtype).unsqueeze(0)


@torch.no_grad()
def generator_forward(
    model: RhythmGenerator, z: np.ndarray, genre: GenreLabel | None = None
) -> OnsetMatrix:
    """Run one latent vector through a generator; genre is required iff the
    generator is the conditioned variant."""
    z = np.asarray(z, dtype=np.float64).reshape(-1)
    if z.shape[0] != model.latent_dim:
        raise ContractViolationError(f"latent vector must have {model.latent_dim} entries")
    dtype = next(model.parameters()).dtype
    zt = torch.from_numpy(z).to(dtype).unsqueeze(0)
    if model.conditioned:
        if genre is None:
            raise ContractViolationError("conditioned generator needs a genre")
        out = model(zt, torch.tensor([genre.id]))
    else:
        if genre is not None:
            raise ContractViolationError("unconditioned generator takes no genre")
        out = model(zt)
    return OnsetMatrix(out[0].double().numpy())


@torch.no_grad()
def discriminator_forward(
    model: CreativeDiscriminator | ConditionedDiscriminator,
    matrix: OnsetMatrix,
    genre: GenreLabel | None = None,
) -> tuple[float, np.ndarray | None]:
    """Real-probability (and, for the creative variant, genre posterior)."""
    x = _as_batch(matrix, model)
    if isinstance(model, ConditionedDiscriminator):
        if genre is None:
            raise ContractViolationError("conditioned discriminator needs a genre")
        real = model(x, torch.tensor([genre.id]))
        return float(real[0]), None
    if genre is not None:
        raise ContractViolationError("creative discriminator takes no genre")
    real, posterior = model(x)
    return float(real[0]), posterior[0].double().numpy()


@torch.no_grad()
def classifier_forward(model: GenreClassifier, matrix: OnsetMatrix) -> np.ndarray:
    """Genre posterior (K probabilities summing to 1)."""
    return model(_as_batch(matrix, model))[0].double().numpy()


@torch.no_grad()
def generate_batch(
    model: RhythmGenerator, z: np.ndarray, genre_ids: np.ndarray | None = None
) -> np.ndarray:
    """Batched generation: (n, latent) -> (n, 9, 32) float64 matrices."""
    dtype = next(model.parameters()).dtype
    zt = torch.from_numpy(np.asarray(z)).to(dtype)
    if model.conditioned:
        if genre_ids is None:
            raise ContractViolationError("conditioned generator needs genre ids")
        out = model(zt, torch.from_numpy(np.asarray(genre_ids, dtype=np.int64)))
    else:
        if genre_ids is not None:
            raise ContractViolationError("unconditioned generator takes no genre ids")
        out = model(zt)
    return out.double().numpy()
