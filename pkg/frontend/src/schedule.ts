// Pure loop-timing math, kept separate from WebAudio so it can be unit tested.

import { N_STEPS } from "./types.js";

/** Seconds per 16th-note step at a tempo. */
export function stepSeconds(bpm: number): number {
  return 60 / bpm / 4;
}

/** Absolute time of the k-th scheduled step given the loop start time. */
export function stepTime(startTime: number, k: number, bpm: number): number {
  return startTime + k * stepSeconds(bpm);
}

/** Which cell of the 32-step loop the k-th scheduled step plays. */
export function stepIndex(k: number): number {
  return ((k % N_STEPS) + N_STEPS) % N_STEPS;
}

/** Steps whose onset falls inside [now, now + horizon) — the lookahead set
 * an audio scheduler must enqueue this tick. */
export function dueSteps(
  startTime: number,
  nextStep: number,
  now: number,
  horizon: number,
  bpm: number,
): number[] {
  const due: number[] = [];
  let k = nextStep;
  while (stepTime(startTime, k, bpm) < now + horizon) {
    due.push(k);
    k += 1;
  }
  return due;
}
