// App wiring: model/genre pickers, generate, editable grid, playback,
// MIDI download, and a session history for recall.

import { ApiClient } from "./api.js";
import { DrumPlayer } from "./audio.js";
import { gridCells, matrixFromPayload, toggleCell } from "./grid.js";
import { fetchMidiBytes, saveBytes } from "./midi.js";
import { INSTRUMENT_LABELS, ModelInfo, N_STEPS, UiPattern } from "./types.js";

const DEFAULT_THRESHOLD = 0.5;
const serviceUrl =
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8765";

const client = new ApiClient(serviceUrl);
const player = new DrumPlayer();

let models: ModelInfo[] = [];
let current: UiPattern | null = null;
const history: UiPattern[] = [];

const el = {
  banner: document.getElementById("banner") as HTMLDivElement,
  retry: document.getElementById("retry") as HTMLButtonElement,
  model: document.getElementById("model") as HTMLSelectElement,
  genreWrap: document.getElementById("genre-wrap") as HTMLSpanElement,
  genre: document.getElementById("genre") as HTMLSelectElement,
  generate: document.getElementById("generate") as HTMLButtonElement,
  play: document.getElementById("play") as HTMLButtonElement,
  bpm: document.getElementById("bpm") as HTMLInputElement,
  download: document.getElementById("download") as HTMLButtonElement,
  grid: document.getElementById("grid") as HTMLDivElement,
  history: document.getElementById("history") as HTMLUListElement,
  status: document.getElementById("status") as HTMLSpanElement,
};

function setControlsEnabled(enabled: boolean): void {
  for (const control of [el.model, el.genre, el.generate, el.play, el.bpm, el.download]) {
    control.disabled = !enabled;
  }
}

function showBanner(message: string | null): void {
  el.banner.hidden = message === null;
  if (message !== null) el.banner.querySelector("span")!.textContent = message;
  setControlsEnabled(message === null);
}

async function connect(): Promise<void> {
  try {
    await client.health();
    models = await client.models();
    el.model.innerHTML = "";
    for (const m of models) {
      const option = document.createElement("option");
      option.value = m.id;
      option.textContent = `${m.id} (${m.variant}, K=${m.K})`;
      el.model.appendChild(option);
    }
    showBanner(models.length ? null : "service has no loaded models");
    await onModelChange();
  } catch (err) {
    showBanner(`service unreachable at ${serviceUrl}: ${(err as Error).message}`);
  }
}

async function onModelChange(): Promise<void> {
  const info = models.find((m) => m.id === el.model.value);
  if (!info) return;
  if (info.variant === "conditioned") {
    const names = await client.genres(info.id);
    el.genre.innerHTML = "";
    names.forEach((name, id) => {
      const option = document.createElement("option");
      option.value = String(id);
      option.textContent = name;
      el.genre.appendChild(option);
    });
    el.genreWrap.hidden = false;
  } else {
    el.genreWrap.hidden = true;
  }
}

function renderGrid(pattern: UiPattern | null): void {
  el.grid.innerHTML = "";
  if (!pattern) return;
  for (const cell of gridCells(pattern.matrix, DEFAULT_THRESHOLD)) {
    if (cell.step === 0) {
      const label = document.createElement("div");
      label.className = "row-label";
      label.textContent = INSTRUMENT_LABELS[cell.row];
      el.grid.appendChild(label);
    }
    const div = document.createElement("div");
    div.className = "cell" + (cell.step % 4 === 0 ? " beat" : "");
    div.dataset.row = String(cell.row);
    div.dataset.step = String(cell.step);
    if (cell.velocity > 0) {
      div.classList.add("on");
      div.style.opacity = String(0.25 + 0.75 * cell.velocity);
    }
    div.addEventListener("click", () => {
      if (!current) return;
      current = toggleCell(current, cell.row, cell.step);
      player.matrix = current.matrix;
      renderGrid(current);
    });
    el.grid.appendChild(div);
  }
}

function markStep(step: number): void {
  el.grid.querySelectorAll(".cell.now").forEach((n) => n.classList.remove("now"));
  el.grid
    .querySelectorAll(`.cell[data-step="${step}"]`)
    .forEach((n) => n.classList.add("now"));
}

function setCurrent(pattern: UiPattern): void {
  current = pattern;
  player.matrix = pattern.matrix;
  renderGrid(pattern);
  const genre = pattern.genre === null ? "" : ` genre=${pattern.genre}`;
  el.status.textContent = `${pattern.model} seed=${pattern.seed}${genre}`;
}

function pushHistory(pattern: UiPattern): void {
  history.unshift(pattern);
  const item = document.createElement("li");
  const genre = pattern.genre === null ? "" : ` g${pattern.genre}`;
  item.textContent = `${pattern.model} #${pattern.seed}${genre}`;
  item.addEventListener("click", () => setCurrent(pattern));
  el.history.prepend(item);
}

async function generate(): Promise<void> {
  const info = models.find((m) => m.id === el.model.value);
  if (!info) return;
  el.generate.disabled = true; // one in-flight request at a time
  try {
    const genre = info.variant === "conditioned" ? Number(el.genre.value) : null;
    const response = await client.generate({ model: info.id, n: 1, genre });
    const pattern: UiPattern = {
      matrix: matrixFromPayload(response.patterns[0]),
      model: response.model,
      seed: response.seed,
      genre: response.genres ? response.genres[0] : null,
    };
    setCurrent(pattern);
    pushHistory(pattern);
  } catch (err) {
    showBanner(`generate failed: ${(err as Error).message}`);
  } finally {
    el.generate.disabled = false;
  }
}

async function togglePlayback(): Promise<void> {
  await player.init("public/samples");
  if (player.playing) {
    player.stop();
    el.play.textContent = "Play";
  } else {
    player.bpm = Number(el.bpm.value) || 120;
    player.start();
    el.play.textContent = "Stop";
  }
}

async function download(): Promise<void> {
  if (!current) return;
  try {
    const bytes = await fetchMidiBytes(client, current, Number(el.bpm.value) || 120);
    saveBytes(bytes, `${current.model}-${current.seed}.mid`);
  } catch (err) {
    showBanner(`download failed: ${(err as Error).message}`);
  }
}

el.retry.addEventListener("click", () => void connect());
el.model.addEventListener("change", () => void onModelChange());
el.generate.addEventListener("click", () => void generate());
el.play.addEventListener("click", () => void togglePlayback());
el.download.addEventListener("click", () => void download());
el.bpm.addEventListener("change", () => {
  player.bpm = Number(el.bpm.value) || 120;
});
player.onStep = markStep;

// an empty 9x32 grid before the first generate
setCurrent({
  matrix: Array.from({ length: 9 }, () => new Array<number>(N_STEPS).fill(0)),
  model: "-",
  seed: 0,
  genre: null,
});
void connect();
