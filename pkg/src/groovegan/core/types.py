"""Canonical data types: instruments, the GM drum map, onset matrices,
genre labels, patterns and datasets.

Everything downstream (distances, models, evaluation, serving) speaks in
terms of these types. All of them are immutable after construction and safe
to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from ..errors import ConfigError, ContractViolationError, InvalidFileError

N_INSTRUMENTS = 9
N_STEPS = 32


class DrumInstrument(IntEnum):
    """The nine drum voices every pattern is reduced to, in canonical row order."""

    KICK = 0
    SNARE = 1
    CLOSED_HIHAT = 2
    OPEN_HIHAT = 3
    LOW_TOM = 4
    HIGH_TOM = 5
    CYMBAL = 6
    RIM = 7
    CLAP_COWBELL = 8

    @property
    def label(self) -> str:
        return INSTRUMENT_NAMES[self.value]


INSTRUMENT_NAMES = [
    "Kick",
    "Snare",
    "ClosedHihat",
    "OpenHihat",
    "LowTom",
    "HighTom",
    "Cymbal",
    "Rim",
    "ClapCowbell",
]

# GM percussion note -> drum voice. Notes absent here are dropped on ingest.
# 35 (Acoustic Bass Drum) is included as the standard GM alias of the kick.
DEFAULT_GM_MAP: dict[int, DrumInstrument] = {
    35: DrumInstrument.KICK,
    36: DrumInstrument.KICK,
    38: DrumInstrument.SNARE,
    40: DrumInstrument.SNARE,
    42: DrumInstrument.CLOSED_HIHAT,
    44: DrumInstrument.OPEN_HIHAT,
    46: DrumInstrument.OPEN_HIHAT,
    41: DrumInstrument.LOW_TOM,
    45: DrumInstrument.LOW_TOM,
    47: DrumInstrument.LOW_TOM,
    43: DrumInstrument.HIGH_TOM,
    48: DrumInstrument.HIGH_TOM,
    49: DrumInstrument.CYMBAL,
    51: DrumInstrument.CYMBAL,
    57: DrumInstrument.CYMBAL,
    37: DrumInstrument.RIM,
    39: DrumInstrument.CLAP_COWBELL,
    53: DrumInstrument.CLAP_COWBELL,
    56: DrumInstrument.CLAP_COWBELL,
}

# Drum voice -> GM note used when writing MIDI back out.
DEFAULT_REVERSE_MAP: dict[DrumInstrument, int] = {
    DrumInstrument.KICK: 36,
    DrumInstrument.SNARE: 38,
    DrumInstrument.CLOSED_HIHAT: 42,
    DrumInstrument.OPEN_HIHAT: 46,
    DrumInstrument.LOW_TOM: 45,
    DrumInstrument.HIGH_TOM: 48,
    DrumInstrument.CYMBAL: 51,
    DrumInstrument.RIM: 37,
    DrumInstrument.CLAP_COWBELL: 39,
}


def map_gm_note(note: int, gm_map: dict[int, DrumInstrument] | None = None) -> DrumInstrument | None:
    """Map a GM note number onto a drum voice, or None when unmapped."""
    if not 0 <= note <= 127:
        raise ContractViolationError(f"GM note number out of range: {note}")
    table = DEFAULT_GM_MAP if gm_map is None else gm_map
    return table.get(note)


@dataclass(frozen=True)
class OnsetMatrix:
    """A 9x32 grid of normalized onset velocities; 0 means no onset.

    Rows follow DrumInstrument order, columns are the 16th notes of a
    two-bar 4/4 loop.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.shape != (N_INSTRUMENTS, N_STEPS):
            raise ContractViolationError(
                f"onset matrix must be {N_INSTRUMENTS}x{N_STEPS}, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0:
            raise ContractViolationError("onset velocities must lie in [0, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def zeros(cls) -> "OnsetMatrix":
        return cls(np.zeros((N_INSTRUMENTS, N_STEPS)))

    def onset_counts(self) -> np.ndarray:
        """Number of onsets (cells > 0) per instrument row."""
        return (self.values > 0.0).sum(axis=1)


@dataclass(frozen=True)
class GenreLabel:
    id: int
    name: str


@dataclass(frozen=True)
class RhythmPattern:
    """One two-bar pattern plus provenance.

    ``segment`` counts consecutive two-bar slices of the same source file;
    synthetic and generated patterns use it as a running sample index.
    """

    matrix: OnsetMatrix
    genre: GenreLabel | None
    source: str
    segment: int = 0


@dataclass(frozen=True)
class InstrumentStats:
    """Per-instrument onset-count statistics over a set of patterns."""

    mean: np.ndarray  # (9,) mean onsets per pattern
    std: np.ndarray  # (9,) population std of onsets per pattern
    total: np.ndarray  # (9,) int64 totals over the whole set

    @classmethod
    def from_patterns(cls, patterns: list[RhythmPattern]) -> "InstrumentStats":
        if not patterns:
            raise ContractViolationError("cannot compute stats of an empty pattern list")
        counts = np.stack([p.matrix.onset_counts() for p in patterns])
        return cls(
            mean=counts.mean(axis=0),
            std=counts.std(axis=0),
            total=counts.sum(axis=0).astype(np.int64),
        )


@dataclass(frozen=True)
class RhythmDataset:
    """A labeled corpus of two-bar patterns with precomputed onset stats."""

    patterns: list[RhythmPattern]
    genres: list[GenreLabel]
    stats: InstrumentStats = field(repr=False, default=None)  # type: ignore[assignment]

    def __post_init__(self):
        ids = [g.id for g in self.genres]
        if ids != list(range(len(self.genres))):
            raise ConfigError(f"genre ids must be dense 0..K-1, got {ids}")
        known = set(ids)
        for p in self.patterns:
            if p.genre is not None and p.genre.id not in known:
                raise ConfigError(f"pattern from {p.source!r} carries unknown genre {p.genre}")
        if self.stats is None:
            object.__setattr__(self, "stats", InstrumentStats.from_patterns(self.patterns))

    @property
    def n_genres(self) -> int:
        return len(self.genres)

    def by_genre(self, genre_id: int) -> list[RhythmPattern]:
        return [p for p in self.patterns if p.genre is not None and p.genre.id == genre_id]

    def matrices(self) -> np.ndarray:
        """All pattern matrices stacked into an (N, 9, 32) array."""
        return np.stack([p.matrix.values for p in self.patterns])


def normalize_velocity(velocity: int) -> float:
    """MIDI velocity 0..127 -> [0, 1]."""
    if not 0 <= velocity <= 127:
        raise InvalidFileError(f"MIDI velocity out of range: {velocity}")
    return velocity / 127.0
