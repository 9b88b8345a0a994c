// Pure grid model: payload validation, cell extraction, pattern edits.
// Keeping this free of DOM lets the fixture tests assert on exact cell sets.

import { MatrixPayload, N_INSTRUMENTS, N_STEPS, UiPattern } from "./types.js";

export interface CellModel {
  row: number;
  step: number;
  velocity: number;
  active: boolean;
}

/** Strict payload check: anything malformed is rejected whole, never
 * partially rendered. */
export function matrixFromPayload(payload: MatrixPayload): number[][] {
  if (payload.version !== 1) {
    throw new Error(`unsupported matrix version ${payload.version}`);
  }
  const [rows, steps] = payload.shape;
  if (rows !== N_INSTRUMENTS || steps !== N_STEPS) {
    throw new Error(`expected a ${N_INSTRUMENTS}x${N_STEPS} matrix, got ${rows}x${steps}`);
  }
  if (!Array.isArray(payload.data) || payload.data.length !== rows * steps) {
    throw new Error(`matrix data must hold ${rows * steps} values`);
  }
  const matrix: number[][] = [];
  for (let r = 0; r < rows; r++) {
    const row = payload.data.slice(r * steps, (r + 1) * steps);
    for (const v of row) {
      if (typeof v !== "number" || !isFinite(v) || v < 0 || v > 1) {
        throw new Error(`velocity out of range: ${v}`);
      }
    }
    matrix.push(row);
  }
  return matrix;
}

export function gridCells(matrix: number[][], threshold: number): CellModel[] {
  const cells: CellModel[] = [];
  for (let row = 0; row < N_INSTRUMENTS; row++) {
    for (let step = 0; step < N_STEPS; step++) {
      const velocity = matrix[row][step];
      cells.push({ row, step, velocity, active: velocity >= threshold });
    }
  }
  return cells;
}

export function activeCellSet(matrix: number[][], threshold: number): Set<string> {
  const out = new Set<string>();
  for (const cell of gridCells(matrix, threshold)) {
    if (cell.active) out.add(`${cell.row}:${cell.step}`);
  }
  return out;
}

/** Toggle a cell: active cells clear to 0, silent cells get the velocity. */
export function toggleCell(
  pattern: UiPattern,
  row: number,
  step: number,
  velocity = 0.8,
): UiPattern {
  const matrix = pattern.matrix.map((r) => r.slice());
  matrix[row][step] = matrix[row][step] > 0 ? 0 : velocity;
  return { ...pattern, matrix };
}

export function matrixToPayload(matrix: number[][], instruments: string[]): MatrixPayload {
  return {
    version: 1,
    shape: [N_INSTRUMENTS, N_STEPS],
    instruments,
    data: matrix.flat(),
  };
}
