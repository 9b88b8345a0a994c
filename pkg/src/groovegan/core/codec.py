"""Versioned JSON codecs for onset matrices and pattern collections.

On-disk formats:
  matrix: {"version": 1, "shape": [9, 32], "instruments": [...9 names...],
           "data": [...288 row-major floats...]}
  batch:  {"version": 1, "patterns": [{"matrix": ..., "genre": id|null,
           "source": str, "segment": int}], "genres": [{"id":, "name":}]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import ContractViolationError, VersionError
from .types import (
    INSTRUMENT_NAMES,
    N_INSTRUMENTS,
    N_STEPS,
    GenreLabel,
    InstrumentStats,
    OnsetMatrix,
    RhythmDataset,
    RhythmPattern,
)

MATRIX_VERSION = 1
BATCH_VERSION = 1


def matrix_to_obj(matrix: OnsetMatrix) -> dict:
    return {
        "version": MATRIX_VERSION,
        "shape": [N_INSTRUMENTS, N_STEPS],
        "instruments": list(INSTRUMENT_NAMES),
        "data": [float(v) for v in matrix.values.reshape(-1)],
    }


def matrix_from_obj(obj: dict) -> OnsetMatrix:
    if not isinstance(obj, dict):
        raise ContractViolationError("onset matrix payload must be an object")
    version = obj.get("version")
    if version != MATRIX_VERSION:
        raise VersionError(f"unsupported onset matrix version {version!r}")
    if obj.get("shape") != [N_INSTRUMENTS, N_STEPS]:
        raise ContractViolationError(f"unexpected shape {obj.get('shape')}")
    data = obj.get("data")
    if not isinstance(data, list) or len(data) != N_INSTRUMENTS * N_STEPS:
        raise ContractViolationError("data must hold 288 floats")
    return OnsetMatrix(np.asarray(data, dtype=np.float64).reshape(N_INSTRUMENTS, N_STEPS))


def _pattern_to_obj(p: RhythmPattern) -> dict:
    return {
        "matrix": matrix_to_obj(p.matrix),
        "genre": None if p.genre is None else p.genre.id,
        "source": p.source,
        "segment": p.segment,
    }


def dataset_to_obj(dataset: RhythmDataset) -> dict:
    return {
        "version": BATCH_VERSION,
        "patterns": [_pattern_to_obj(p) for p in dataset.patterns],
        "genres": [{"id": g.id, "name": g.name} for g in dataset.genres],
    }


def dataset_from_obj(obj: dict) -> RhythmDataset:
    if obj.get("version") != BATCH_VERSION:
        raise VersionError(f"unsupported batch version {obj.get('version')!r}")
    genres = [GenreLabel(g["id"], g["name"]) for g in obj.get("genres", [])]
    by_id = {g.id: g for g in genres}
    patterns = []
    for entry in obj.get("patterns", []):
        genre = by_id.get(entry["genre"]) if entry.get("genre") is not None else None
        patterns.append(
            RhythmPattern(
                matrix=matrix_from_obj(entry["matrix"]),
                genre=genre,
                source=entry.get("source", "unknown"),
                segment=entry.get("segment", 0),
            )
        )
    return RhythmDataset(
        patterns=patterns, genres=genres, stats=InstrumentStats.from_patterns(patterns)
    )


def patterns_to_obj(matrices: list[OnsetMatrix], genres: list[GenreLabel] | None = None) -> dict:
    """Batch container for unlabeled (e.g. generated) matrices."""
    return {
        "version": BATCH_VERSION,
        "patterns": [
            {"matrix": matrix_to_obj(m), "genre": None, "source": "generated", "segment": i}
            for i, m in enumerate(matrices)
        ],
        "genres": [] if genres is None else [{"id": g.id, "name": g.name} for g in genres],
    }


def matrices_from_obj(obj: dict) -> list[OnsetMatrix]:
    if obj.get("version") != BATCH_VERSION:
        raise VersionError(f"unsupported batch version {obj.get('version')!r}")
    return [matrix_from_obj(entry["matrix"]) for entry in obj.get("patterns", [])]


def save_json(obj: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True), encoding="utf-8")


def load_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
