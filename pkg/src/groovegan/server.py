"""HTTP generation API.

Exposes loaded generator checkpoints to the sequencer UI and other clients:
model listing, seeded pattern generation, and MIDI export. Checkpoints are
immutable after load and every request carries its own RNG state, so
identical seeded requests return byte-identical responses even under
concurrency.
"""

from __future__ import annotations

import json
import secrets
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .core.codec import matrix_from_obj, matrix_to_obj
from .core.export import export_midi
from .core.types import OnsetMatrix
from .errors import GrooveganError
from .models.checkpoint import Checkpoint, build_models
from .models.nets import RhythmGenerator, generate_batch
from .models.sampling import sample_z

MAX_PATTERNS_PER_REQUEST = 64


class GenerateRequest(BaseModel):
    model: str
    n: int = Field(default=1, ge=1, le=MAX_PATTERNS_PER_REQUEST)
    genre: int | None = None
    seed: int | None = None
    threshold: float | None = Field(default=None, gt=0.0, lt=1.0)


class ExportMidiRequest(BaseModel):
    matrix: dict
    tempo_bpm: float = Field(default=120.0, gt=0.0)


@dataclass
class LoadedModel:
    checkpoint: Checkpoint
    generator: RhythmGenerator

    @property
    def variant(self) -> str:
        return self.checkpoint.variant

    @property
    def genres(self) -> list[str]:
        return list(self.checkpoint.config["genres"])


def _json_response(obj, status_code: int = 200) -> Response:
    return Response(
        content=json.dumps(obj, sort_keys=True),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, message: str) -> Response:
    return _json_response({"error": message}, status_code)


def create_app(checkpoints: dict[str, Checkpoint]) -> FastAPI:
    if not checkpoints:
        raise GrooveganError("the server needs at least one loaded checkpoint")
    registry: dict[str, LoadedModel] = {}
    for model_id, ckpt in checkpoints.items():
        if ckpt.variant not in ("creative", "conditioned"):
            raise GrooveganError(f"checkpoint {model_id!r} is not a generator checkpoint")
        modules = build_models(ckpt)
        registry[model_id] = LoadedModel(checkpoint=ckpt, generator=modules["generator"])

    app = FastAPI(title="groovegan", version="1")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        malformed = any(e.get("type") == "json_invalid" for e in exc.errors())
        detail = "; ".join(
            f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in exc.errors()
        )
        return _error(400 if malformed else 422, detail)

    @app.exception_handler(GrooveganError)
    async def groovegan_handler(request: Request, exc: GrooveganError):
        return _error(422, str(exc))

    @app.get("/health")
    async def health():
        return _json_response({"status": "ok"})

    @app.get("/models")
    async def models():
        return _json_response(
            [
                {"id": model_id, "variant": m.variant, "K": len(m.genres)}
                for model_id, m in sorted(registry.items())
            ]
        )

    @app.get("/models/{model_id}/genres")
    async def model_genres(model_id: str):
        m = registry.get(model_id)
        if m is None:
            return _error(404, f"unknown model {model_id!r}")
        if m.variant != "conditioned":
            return _error(422, f"model {model_id!r} is not genre-conditioned")
        return _json_response(m.genres)

    @app.post("/generate")
    async def generate(req: GenerateRequest):
        m = registry.get(req.model)
        if m is None:
            return _error(404, f"unknown model {req.model!r}")
        if m.variant == "creative" and req.genre is not None:
            return _error(422, "creative models take no genre")
        if m.variant == "conditioned":
            if req.genre is None:
                return _error(422, "conditioned models need a genre")
            if not 0 <= req.genre < len(m.genres):
                return _error(422, f"genre id {req.genre} outside 0..{len(m.genres) - 1}")
        seed = req.seed if req.seed is not None else secrets.randbelow(2**31)
        z = sample_z(req.n, seed, dim=m.generator.latent_dim)
        if m.variant == "conditioned":
            matrices = generate_batch(
                m.generator, z, np.full(req.n, req.genre, dtype=np.int64)
            )
        else:
            matrices = generate_batch(m.generator, z)
        if req.threshold is not None:
            matrices = np.where(matrices >= req.threshold, matrices, 0.0)
        return _json_response(
            {
                "patterns": [matrix_to_obj(OnsetMatrix(mat)) for mat in matrices],
                "model": req.model,
                "seed": seed,
                "genres": None if req.genre is None else [req.genre] * req.n,
            }
        )

    @app.post("/export-midi")
    async def export_midi_endpoint(req: ExportMidiRequest):
        matrix = matrix_from_obj(req.matrix)
        data = export_midi(matrix, tempo_bpm=req.tempo_bpm)
        return Response(content=data, media_type="audio/midi")

    return app
