// WebAudio playback: one sample per instrument, gain proportional to
// velocity, lookahead scheduling against the audio clock so step timing
// stays within a few milliseconds regardless of UI jank.

import { dueSteps, stepIndex, stepTime } from "./schedule.js";
import { N_INSTRUMENTS, SAMPLE_FILES } from "./types.js";

const LOOKAHEAD_SEC = 0.12;
const TICK_MS = 25;

export class DrumPlayer {
  private ctx: AudioContext | null = null;
  private buffers: (AudioBuffer | null)[] = new Array(N_INSTRUMENTS).fill(null);
  private timer: number | null = null;
  private startTime = 0;
  private nextStep = 0;
  bpm = 120;
  matrix: number[][] | null = null;
  onStep: ((step: number) => void) | null = null;

  async init(sampleBase: string): Promise<void> {
    if (this.ctx) return;
    this.ctx = new AudioContext();
    this.buffers = await Promise.all(
      SAMPLE_FILES.map(async (name) => {
        try {
          const res = await fetch(`${sampleBase}/${name}`);
          return await this.ctx!.decodeAudioData(await res.arrayBuffer());
        } catch {
          return null; // missing sample: that row plays silent
        }
      }),
    );
  }

  get playing(): boolean {
    return this.timer !== null;
  }

  start(): void {
    if (!this.ctx || this.playing) return;
    void this.ctx.resume();
    this.startTime = this.ctx.currentTime + 0.05;
    this.nextStep = 0;
    this.timer = window.setInterval(() => this.tick(), TICK_MS);
  }

  stop(): void {
    if (this.timer !== null) {
      window.clearInterval(this.timer);
      this.timer = null;
    }
  }

  private tick(): void {
    if (!this.ctx || !this.matrix) return;
    const due = dueSteps(this.startTime, this.nextStep, this.ctx.currentTime, LOOKAHEAD_SEC, this.bpm);
    for (const k of due) {
      const step = stepIndex(k);
      const when = stepTime(this.startTime, k, this.bpm);
      for (let row = 0; row < N_INSTRUMENTS; row++) {
        const velocity = this.matrix[row][step];
        if (velocity > 0) this.trigger(row, velocity, when);
      }
      if (this.onStep) {
        const delay = Math.max(0, when - this.ctx.currentTime) * 1000;
        window.setTimeout(() => this.onStep && this.onStep(step), delay);
      }
    }
    if (due.length) this.nextStep = due[due.length - 1] + 1;
  }

  private trigger(row: number, velocity: number, when: number): void {
    const buffer = this.buffers[row];
    if (!this.ctx || !buffer) return;
    const source = this.ctx.createBufferSource();
    source.buffer = buffer;
    const gain = this.ctx.createGain();
    gain.gain.value = velocity;
    source.connect(gain).connect(this.ctx.destination);
    source.start(when);
  }
}
