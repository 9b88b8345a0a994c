// MIDI download path. The service's bytes are saved as-is: the file a user
// downloads is byte-identical to the /export-midi response body.

import { ApiClient } from "./api.js";
import { matrixToPayload } from "./grid.js";
import { INSTRUMENT_LABELS, UiPattern } from "./types.js";

export async function fetchMidiBytes(
  client: ApiClient,
  pattern: UiPattern,
  tempoBpm: number,
): Promise<Uint8Array> {
  const payload = matrixToPayload(pattern.matrix, INSTRUMENT_LABELS);
  return client.exportMidi(payload, tempoBpm);
}

export function saveBytes(bytes: Uint8Array, filename: string): void {
  const blob = new Blob([bytes.buffer as ArrayBuffer], { type: "audio/midi" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = filename;
  link.click();
  URL.revokeObjectURL(url);
}
