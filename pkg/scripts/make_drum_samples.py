"""Synthesize the nine drum sample WAVs bundled with the sequencer UI.

Run from the repo root: python3 scripts/make_drum_samples.py
Writes 16-bit mono 44.1 kHz files into frontend/public/samples/.
"""

import wave
from pathlib import Path

import numpy as np

SR = 44100
OUT = Path(__file__).resolve().parent.parent / "frontend" / "public" / "samples"


def _t(duration):
    return np.arange(int(SR * duration)) / SR


def _env(t, decay):
    return np.exp(-t / decay)


def _write(name, signal):
    signal = signal / (np.abs(signal).max() + 1e-9) * 0.9
    pcm = (signal * 32767).astype(np.int16)
    OUT.mkdir(parents=True, exist_ok=True)
    with wave.open(str(OUT / f"{name}.wav"), "wb") as fh:
        fh.setnchannels(1)
        fh.setsampwidth(2)
        fh.setframerate(SR)
        fh.writeframes(pcm.tobytes())


def _noise(t, rng):
    return rng.standard_normal(len(t))


def _highpass(x, alpha=0.95):
    y = np.empty_like(x)
    y[0] = x[0]
    for i in range(1, len(x)):
        y[i] = alpha * (y[i - 1] + x[i] - x[i - 1])
    return y


def main():
    rng = np.random.default_rng(909)

    t = _t(0.35)
    sweep = np.sin(2 * np.pi * (40 + 80 * np.exp(-t / 0.06)) * t)
    _write("kick", sweep * _env(t, 0.12))

    t = _t(0.22)
    body = np.sin(2 * np.pi * 190 * t) * _env(t, 0.04)
    _write("snare", body + _noise(t, rng) * _env(t, 0.06) * 0.8)

    t = _t(0.07)
    _write("closedhihat", _highpass(_noise(t, rng)) * _env(t, 0.018))

    t = _t(0.4)
    _write("openhihat", _highpass(_noise(t, rng)) * _env(t, 0.13))

    t = _t(0.35)
    _write("lowtom", np.sin(2 * np.pi * (85 + 30 * np.exp(-t / 0.08)) * t) * _env(t, 0.12))

    t = _t(0.3)
    _write("hightom", np.sin(2 * np.pi * (150 + 50 * np.exp(-t / 0.07)) * t) * _env(t, 0.1))

    t = _t(0.9)
    shimmer = sum(np.sin(2 * np.pi * f * t + p) for f, p in
                  [(3130, 0.1), (4500, 1.3), (5870, 2.2), (7410, 0.7)])
    _write("cymbal", (_highpass(_noise(t, rng)) + 0.25 * shimmer) * _env(t, 0.3))

    t = _t(0.05)
    _write("rim", (np.sin(2 * np.pi * 1700 * t) + _noise(t, rng) * 0.4) * _env(t, 0.008))

    t = _t(0.25)
    bursts = np.zeros(len(t))
    for k, offset in enumerate((0.0, 0.012, 0.026)):
        i = int(offset * SR)
        seg = _t(0.12)
        bursts[i : i + len(seg)] += _noise(seg, rng) * _env(seg, 0.025) * (0.9 - 0.15 * k)
    cow = (np.sign(np.sin(2 * np.pi * 560 * t)) + np.sign(np.sin(2 * np.pi * 845 * t)))
    _write("clapcowbell", bursts + 0.12 * cow * _env(t, 0.05))

    print(f"wrote 9 samples to {OUT}")


if __name__ == "__main__":
    main()
