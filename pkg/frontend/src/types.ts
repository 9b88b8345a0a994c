// Wire types mirroring the generation API.

export const N_INSTRUMENTS = 9;
export const N_STEPS = 32;

export interface MatrixPayload {
  version: number;
  shape: [number, number];
  instruments: string[];
  data: number[]; // 288 row-major floats in [0, 1]
}

export interface GenerateResponse {
  patterns: MatrixPayload[];
  model: string;
  seed: number;
  genres: number[] | null;
}

export interface ModelInfo {
  id: string;
  variant: "creative" | "conditioned";
  K: number;
}

/** One pattern held in the UI: the grid plus how it was produced. */
export interface UiPattern {
  matrix: number[][]; // 9 rows x 32 steps
  model: string;
  seed: number;
  genre: number | null;
}

export const INSTRUMENT_LABELS = [
  "Kick",
  "Snare",
  "ClosedHihat",
  "OpenHihat",
  "LowTom",
  "HighTom",
  "Cymbal",
  "Rim",
  "ClapCowbell",
];

export const SAMPLE_FILES = [
  "kick.wav",
  "snare.wav",
  "closedhihat.wav",
  "openhihat.wav",
  "lowtom.wav",
  "hightom.wav",
  "cymbal.wav",
  "rim.wav",
  "clapcowbell.wav",
];
