from .types import (
    DEFAULT_GM_MAP,
    DEFAULT_REVERSE_MAP,
    INSTRUMENT_NAMES,
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
from .ingest import IngestConfig, ingest_dataset, ingest_midi_file, quantize_tick
from .export import DEFAULT_ONSET_THRESHOLD, export_midi
from .synth import GenreTemplate, SynthSpec, builtin_spec, builtin_templates, synth_corpus

__all__ = [
    "DEFAULT_GM_MAP",
    "DEFAULT_REVERSE_MAP",
    "DEFAULT_ONSET_THRESHOLD",
    "INSTRUMENT_NAMES",
    "N_INSTRUMENTS",
    "N_STEPS",
    "DrumInstrument",
    "GenreLabel",
    "GenreTemplate",
    "IngestConfig",
    "InstrumentStats",
    "OnsetMatrix",
    "RhythmDataset",
    "RhythmPattern",
    "SynthSpec",
    "builtin_spec",
    "builtin_templates",
    "export_midi",
    "ingest_dataset",
    "ingest_midi_file",
    "map_gm_note",
    "normalize_velocity",
    "quantize_tick",
    "synth_corpus",
]
