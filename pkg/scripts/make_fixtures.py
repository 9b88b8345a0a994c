"""Regenerate the pinned serving fixtures.

Creates a seeded-initialization creative checkpoint (weights only, no
training; fixtures pin serving behavior, not model quality), then captures
the /generate response for seed 7 and the matching /export-midi bytes.
The UI tests and the server fixture tests both assert against these files.

Run from the repo root: python3 scripts/make_fixtures.py
"""

import json
from pathlib import Path

import torch
from fastapi.testclient import TestClient

from groovegan.models import Checkpoint, CreativeDiscriminator, RhythmGenerator, save_checkpoint
from groovegan.models.checkpoint import params_from_modules
from groovegan.server import create_app

ROOT = Path(__file__).resolve().parent.parent
CKPT_PATH = ROOT / "tests" / "fixtures" / "fixture-creative.npz"
UI_FIXTURES = ROOT / "frontend" / "tests" / "fixtures"

FIXTURE_SEED = 1234
GENERATE_SEED = 7


def make_checkpoint() -> Checkpoint:
    torch.manual_seed(FIXTURE_SEED)
    arch = {
        "latent_dim": 100,
        "dense_size": 128,
        "seq_features": 16,
        "lstm_sizes": [128, 128],
        "units": 64,
        "dropout": 0.0,
    }
    modules = {
        "generator": RhythmGenerator(),
        "discriminator": CreativeDiscriminator(3),
    }
    return Checkpoint(
        variant="creative",
        epoch=0,
        seed=FIXTURE_SEED,
        config={
            "variant": "creative",
            "arch": arch,
            "train": {},
            "genres": ["breaks", "dub", "house"],
            "holdout_indices": [],
        },
        metrics={},
        params=params_from_modules(modules),
    )


def main() -> None:
    ckpt = make_checkpoint()
    CKPT_PATH.parent.mkdir(parents=True, exist_ok=True)
    save_checkpoint(ckpt, CKPT_PATH)
    print(f"checkpoint -> {CKPT_PATH} ({CKPT_PATH.stat().st_size // 1024} KB)")

    app = create_app({"fixture-creative": ckpt})
    client = TestClient(app)
    response = client.post(
        "/generate", json={"model": "fixture-creative", "n": 1, "seed": GENERATE_SEED}
    )
    response.raise_for_status()
    UI_FIXTURES.mkdir(parents=True, exist_ok=True)
    (UI_FIXTURES / "generate_seed7.json").write_bytes(response.content)
    print(f"generate fixture -> {UI_FIXTURES / 'generate_seed7.json'}")

    pattern = response.json()["patterns"][0]
    midi = client.post("/export-midi", json={"matrix": pattern, "tempo_bpm": 120.0})
    midi.raise_for_status()
    (UI_FIXTURES / "export_seed7.mid").write_bytes(midi.content)
    print(f"midi fixture -> {UI_FIXTURES / 'export_seed7.mid'} ({len(midi.content)} bytes)")

    meta = {
        "model": "fixture-creative",
        "request": {"model": "fixture-creative", "n": 1, "seed": GENERATE_SEED},
        "threshold": 0.5,
        "checkpoint": str(CKPT_PATH.relative_to(ROOT)),
    }
    (UI_FIXTURES / "fixtures.json").write_text(json.dumps(meta, indent=2))


if __name__ == "__main__":
    main()
