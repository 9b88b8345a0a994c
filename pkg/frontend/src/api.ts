// Thin typed client for the generation service. The fetch implementation is
// injectable so tests can pin responses to fixtures.

import { GenerateResponse, ModelInfo } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async checkedJson<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let message = `${response.status}`;
      try {
        const body = await response.json();
        if (body && typeof body.error === "string") message = body.error;
      } catch {
        // non-JSON error body: keep the status code
      }
      throw new Error(message);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.checkedJson("/health");
  }

  models(): Promise<ModelInfo[]> {
    return this.checkedJson("/models");
  }

  genres(modelId: string): Promise<string[]> {
    return this.checkedJson(`/models/${encodeURIComponent(modelId)}/genres`);
  }

  generate(body: {
    model: string;
    n?: number;
    genre?: number | null;
    seed?: number | null;
  }): Promise<GenerateResponse> {
    return this.checkedJson("/generate", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  /** Raw MIDI bytes for one pattern; passed through to the download
   * unmodified, so the saved file is byte-identical to the service's
   * response. */
  async exportMidi(matrixPayload: unknown, tempoBpm = 120): Promise<Uint8Array> {
    const response = await this.fetchImpl(this.baseUrl + "/export-midi", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ matrix: matrixPayload, tempo_bpm: tempoBpm }),
    });
    if (!response.ok) {
      throw new Error(`export failed: ${response.status}`);
    }
    return new Uint8Array(await response.arrayBuffer());
  }
}
