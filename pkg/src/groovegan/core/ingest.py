"""MIDI ingestion: quantization, two-bar slicing, and dataset assembly.

Slicing policy: a file is cut into consecutive non-overlapping two-bar
(32-step) segments measured from tick 0; a trailing remainder of at least
one bar is zero-padded to two bars, shorter remainders are dropped. When two
events land on the same (instrument, step) cell the louder one wins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import IngestError, InvalidFileError
from .smf import read_smf
from .types import (
    N_INSTRUMENTS,
    N_STEPS,
    DrumInstrument,
    GenreLabel,
    InstrumentStats,
    OnsetMatrix,
    RhythmDataset,
    RhythmPattern,
    map_gm_note,
    normalize_velocity,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestConfig:
    """Slicing options; segments shorter than ``pad_min_steps`` are dropped."""

    segment_steps: int = N_STEPS
    pad_min_steps: int = 16  # one 4/4 bar


def quantize_tick(tick: int, ppq: int, segment_len: int = N_STEPS) -> int:
    """Quantize a tick to the nearest 16th-note step (ties round up),
    wrapped modulo ``segment_len`` so the loop's end folds back to step 0."""
    if ppq <= 0:
        raise InvalidFileError(f"pulses per quarter note must be positive, got {ppq}")
    if tick < 0:
        raise InvalidFileError(f"negative tick {tick}")
    raw = tick / (ppq / 4)
    return int(np.floor(raw + 0.5)) % segment_len


def ingest_midi_file(
    data: bytes,
    gm_map: dict[int, DrumInstrument] | None = None,
    config: IngestConfig | None = None,
    source: str = "<bytes>",
) -> list[RhythmPattern]:
    """Slice one MIDI file into two-bar patterns.

    Returns an empty list when the file maps no onsets at all, or when its
    meter is not 4/4 (skipped with a warning).
    """
    cfg = config or IngestConfig()
    parsed = read_smf(data)
    for _, num, den in parsed.time_signatures:
        if (num, den) != (4, 4):
            log.warning("skipping %s: time signature %d/%d is not 4/4", source, num, den)
            return []

    ticks_per_step = parsed.ppq / 4
    total_steps = parsed.max_tick / ticks_per_step
    n_segments = int(total_steps // cfg.segment_steps)
    if total_steps - n_segments * cfg.segment_steps >= cfg.pad_min_steps:
        n_segments += 1
    if n_segments == 0:
        return []

    grids = np.zeros((n_segments, N_INSTRUMENTS, N_STEPS))
    dropped_unmapped = 0
    mapped = 0
    for event in parsed.notes:
        instrument = map_gm_note(event.note, gm_map)
        if instrument is None:
            dropped_unmapped += 1
            continue
        raw = event.tick / ticks_per_step
        segment = int(raw // cfg.segment_steps)
        if segment >= n_segments:
            continue  # falls inside a dropped sub-bar remainder
        step = int(np.floor(raw + 0.5)) % cfg.segment_steps
        velocity = normalize_velocity(event.velocity)
        cell = grids[segment, instrument.value]
        cell[step] = max(cell[step], velocity)
        mapped += 1
    if dropped_unmapped:
        log.warning("%s: dropped %d onsets on unmapped GM notes", source, dropped_unmapped)
    if mapped == 0:
        return []
    return [
        RhythmPattern(matrix=OnsetMatrix(grids[i]), genre=None, source=source, segment=i)
        for i in range(n_segments)
    ]


def ingest_dataset(
    root: str | Path,
    gm_map: dict[int, DrumInstrument] | None = None,
    config: IngestConfig | None = None,
) -> RhythmDataset:
    """Ingest a directory laid out as root/<genre-name>/*.mid.

    Genre ids follow sorted directory names; patterns are ordered by
    (path, segment) so two runs over the same tree are identical. Files that
    fail to parse are skipped with a warning; a genre contributing no valid
    patterns is an error.
    """
    root = Path(root)
    genre_dirs = sorted(d for d in root.iterdir() if d.is_dir()) if root.is_dir() else []
    if not genre_dirs:
        raise IngestError(f"no genre directories under {root}")

    genres = [GenreLabel(i, d.name) for i, d in enumerate(genre_dirs)]
    patterns: list[RhythmPattern] = []
    for label, genre_dir in zip(genres, genre_dirs):
        files = sorted(p for p in genre_dir.iterdir() if p.suffix.lower() in (".mid", ".midi"))
        genre_patterns: list[RhythmPattern] = []
        for path in files:
            try:
                sliced = ingest_midi_file(
                    path.read_bytes(), gm_map, config, source=str(path)
                )
            except InvalidFileError as exc:
                log.warning("skipping unreadable file %s: %s", path, exc)
                continue
            for p in sliced:
                genre_patterns.append(
                    RhythmPattern(matrix=p.matrix, genre=label, source=p.source, segment=p.segment)
                )
        if not genre_patterns:
            raise IngestError(f"genre {label.name!r} contributed no valid patterns")
        patterns.extend(genre_patterns)

    return RhythmDataset(
        patterns=patterns, genres=genres, stats=InstrumentStats.from_patterns(patterns)
    )
