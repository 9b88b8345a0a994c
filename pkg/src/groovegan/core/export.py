"""Write an onset matrix back out as a one-loop standard MIDI file."""

from __future__ import annotations

from ..errors import ContractViolationError
from .smf import write_smf
from .types import DEFAULT_REVERSE_MAP, DrumInstrument, N_STEPS, OnsetMatrix

DEFAULT_ONSET_THRESHOLD = 0.5


def export_midi(
    matrix: OnsetMatrix,
    ppq: int = 480,
    tempo_bpm: float = 120.0,
    reverse_map: dict[DrumInstrument, int] | None = None,
    threshold: float = DEFAULT_ONSET_THRESHOLD,
) -> bytes:
    """Emit one note per cell at or above ``threshold``.

    Velocity is round(v * 127), onsets land on the exact 16th-note grid and
    last one 16th. The end-of-track marker sits on the two-bar boundary so a
    re-ingest yields exactly one segment.
    """
    if ppq % 4 != 0:
        raise ContractViolationError(f"ppq must be divisible by 4, got {ppq}")
    table = DEFAULT_REVERSE_MAP if reverse_map is None else reverse_map
    ticks_per_step = ppq // 4
    notes = []
    for instrument in DrumInstrument:
        note = table[instrument]
        row = matrix.values[instrument.value]
        for step in range(N_STEPS):
            v = row[step]
            if v >= threshold:
                velocity = int(v * 127 + 0.5)
                notes.append((step * ticks_per_step, note, velocity, ticks_per_step))
    return write_smf(ppq, tempo_bpm, notes, end_tick=N_STEPS * ticks_per_step)
