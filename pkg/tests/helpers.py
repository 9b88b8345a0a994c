"""Shared test fixtures: corpus builders and reference onset censuses."""

from __future__ import annotations

from pathlib import Path

from groovegan.core.smf import write_smf

# Reference per-GM-note onset census used to validate the drum-map grouping:
# ingesting a corpus constructed with exactly these counts must reproduce the
# per-instrument totals below.
GM_NOTE_CENSUS = {
    42: 34260,  # closed hi-hat
    38: 20691,  # acoustic snare
    36: 19803,  # bass drum 1
    46: 5069,   # open hi-hat
    44: 3807,   # pedal hi-hat
    51: 1494,   # ride cymbal 1
    37: 936,    # side stick
    56: 602,    # cowbell
    45: 514,    # low tom
    47: 500,    # low-mid tom
    48: 440,    # hi-mid tom
    43: 308,    # high floor tom
    41: 72,     # low floor tom
    39: 62,     # hand clap
    40: 42,     # electric snare
    53: 35,     # ride bell
    49: 13,     # crash cymbal 1
    57: 1,      # crash cymbal 2
}

# Instrument-name -> expected grouped total after GM mapping.
EXPECTED_GROUP_TOTALS = {
    "ClosedHihat": 34260,
    "Snare": 20733,
    "Kick": 19803,
    "OpenHihat": 8876,
    "Cymbal": 1508,
    "LowTom": 1086,
    "Rim": 936,
    "HighTom": 748,
    "ClapCowbell": 699,
}


def build_census_corpus(root: Path, ppq: int = 480, velocity: int = 100) -> Path:
    """Write a root/electronic/*.mid corpus carrying exactly GM_NOTE_CENSUS.

    One file per GM note; onsets fill consecutive 16th steps so no two
    events of the same instrument ever share a cell, and the end-of-track
    marker pads the last slice to a full two bars so nothing is dropped.
    """
    genre_dir = root / "electronic"
    genre_dir.mkdir(parents=True, exist_ok=True)
    ticks_per_step = ppq // 4
    for note, count in sorted(GM_NOTE_CENSUS.items()):
        notes = [(k * ticks_per_step, note, velocity, ticks_per_step) for k in range(count)]
        segments = -(-count // 32)  # ceil
        data = write_smf(ppq, 120.0, notes, end_tick=segments * 32 * ticks_per_step)
        (genre_dir / f"note-{note:03d}.mid").write_bytes(data)
    return root
