import numpy as np
import pytest

from groovegan.core import (
    DEFAULT_REVERSE_MAP,
    DrumInstrument,
    OnsetMatrix,
    export_midi,
    ingest_midi_file,
)
from groovegan.core.smf import read_smf


def test_all_zero_matrix_no_notes():
    data = export_midi(OnsetMatrix(np.zeros((9, 32))))
    assert read_smf(data).notes == []


def test_single_kick_event():
    grid = np.zeros((9, 32))
    grid[0, 0] = 1.0
    data = export_midi(OnsetMatrix(grid))
    notes = read_smf(data).notes
    assert len(notes) == 1
    assert (notes[0].tick, notes[0].note, notes[0].velocity) == (0, 36, 127)


def test_threshold_filters_soft_cells():
    grid = np.zeros((9, 32))
    grid[0, 0] = 0.6
    grid[1, 4] = 0.3  # below default threshold
    data = export_midi(OnsetMatrix(grid))
    assert len(read_smf(data).notes) == 1


def test_reverse_map_defaults():
    assert {i.label: n for i, n in DEFAULT_REVERSE_MAP.items()} == {
        "Kick": 36, "Snare": 38, "ClosedHihat": 42, "OpenHihat": 46,
        "LowTom": 45, "HighTom": 48, "Cymbal": 51, "Rim": 37, "ClapCowbell": 39,
    }


def _quantized_matrix(rng, threshold=0.5):
    """Matrix whose nonzero velocities are >= threshold and multiples of 1/127."""
    grid = np.zeros((9, 32))
    for row in range(9):
        steps = rng.choice(32, size=rng.integers(0, 8), replace=False)
        grid[row, steps] = rng.integers(int(np.ceil(threshold * 127)), 128, size=len(steps)) / 127
    return OnsetMatrix(grid)


def test_roundtrip_identity_on_quantized_matrices():
    rng = np.random.default_rng(6)
    for _ in range(20):
        matrix = _quantized_matrix(rng)
        patterns = ingest_midi_file(export_midi(matrix))
        if matrix.values.sum() == 0:
            assert patterns == []
            continue
        assert len(patterns) == 1
        np.testing.assert_array_equal(patterns[0].matrix.values, matrix.values)


def test_roundtrip_velocity_within_one_step():
    rng = np.random.default_rng(12)
    grid = np.zeros((9, 32))
    grid[0, [0, 5, 9]] = [0.51, 0.73, 0.99]  # not multiples of 1/127
    patterns = ingest_midi_file(export_midi(OnsetMatrix(grid)))
    out = patterns[0].matrix.values
    assert set(np.nonzero(out[0])[0]) == {0, 5, 9}
    assert np.all(np.abs(out[0, [0, 5, 9]] - grid[0, [0, 5, 9]]) <= 1 / 127)


def test_roundtrip_onset_positions_exact():
    rng = np.random.default_rng(21)
    for _ in range(10):
        matrix = _quantized_matrix(rng)
        patterns = ingest_midi_file(export_midi(matrix))
        if not patterns:
            continue
        np.testing.assert_array_equal(
            patterns[0].matrix.values > 0, matrix.values > 0
        )
