"""End-to-end generator evaluation.

Generates a batch of patterns from a checkpoint, measures their distances to
every training genre and to an onset-count-matched random baseline, averages
onset matrices for both sides, and summarizes the genre posterior's entropy
on generated versus held-out real patterns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from ..core.types import N_INSTRUMENTS, N_STEPS, RhythmDataset
from ..distance import (
    DistanceConfig,
    DistanceMatrixReport,
    averaged_onset_matrix,
    baseline_random_patterns,
    set_to_dataset_distances,
)
from ..errors import CheckpointError, ContractViolationError, VersionError
from ..models.checkpoint import Checkpoint, build_models
from ..models.losses import posterior_entropy
from ..models.nets import generate_batch
from ..models.sampling import sample_z

REPORT_VERSION = 1

# Offset mixed into the evaluation seed for the baseline sampler so the
# baseline and the latent draws never share a stream.
BASELINE_SEED_OFFSET = 7919


@dataclass
class EvalReport:
    n_generated: int
    per_genre_distances: DistanceMatrixReport
    intra_generated: float | None
    baseline_distances: DistanceMatrixReport
    averaged_matrix_generated: np.ndarray
    averaged_matrix_training: np.ndarray
    entropy_generated: dict | None  # {"mean":, "std":}
    entropy_real: dict | None
    config: dict = field(default_factory=dict)

    def to_obj(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "n_generated": self.n_generated,
            "per_genre_distances": self.per_genre_distances.to_obj(),
            "intra_generated": self.intra_generated,
            "baseline_distances": self.baseline_distances.to_obj(),
            "averaged_matrix_generated": self.averaged_matrix_generated.tolist(),
            "averaged_matrix_training": self.averaged_matrix_training.tolist(),
            "entropy_generated": self.entropy_generated,
            "entropy_real": self.entropy_real,
            "config": self.config,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "EvalReport":
        version = obj.get("version")
        if version != REPORT_VERSION:
            raise VersionError(f"unsupported evaluation report version {version!r}")
        return cls(
            n_generated=obj["n_generated"],
            per_genre_distances=DistanceMatrixReport.from_obj(obj["per_genre_distances"]),
            intra_generated=obj["intra_generated"],
            baseline_distances=DistanceMatrixReport.from_obj(obj["baseline_distances"]),
            averaged_matrix_generated=np.asarray(obj["averaged_matrix_generated"]),
            averaged_matrix_training=np.asarray(obj["averaged_matrix_training"]),
            entropy_generated=obj["entropy_generated"],
            entropy_real=obj["entropy_real"],
            config=obj.get("config", {}),
        )


def entropy_stats(posteriors: np.ndarray) -> dict:
    """Mean and population std of per-vector Shannon entropy (natural log)."""
    arr = np.asarray(posteriors, dtype=np.float64)
    if arr.size == 0:
        raise ContractViolationError("no posteriors to summarize")
    ent = posterior_entropy(torch.from_numpy(arr)).numpy()
    return {"mean": float(ent.mean()), "std": float(ent.std())}


def evaluate_generator(
    ckpt: Checkpoint,
    dataset: RhythmDataset,
    n: int = 500,
    seed: int = 0,
    cfg: DistanceConfig | None = None,
) -> EvalReport:
    """Full results pipeline for one generator checkpoint.

    Distances are computed on thresholded matrices; the averaged matrices
    keep raw continuous values. Entropies use the checkpoint's own genre
    head and are omitted for variants that lack one.
    """
    cfg = cfg or DistanceConfig()
    if ckpt.variant not in ("creative", "conditioned"):
        raise CheckpointError(f"cannot evaluate a {ckpt.variant!r} checkpoint as a generator")
    if ckpt.n_genres != dataset.n_genres:
        raise CheckpointError(
            f"checkpoint has {ckpt.n_genres} genres but dataset has {dataset.n_genres}"
        )
    models = build_models(ckpt)
    gen = models["generator"]

    z = sample_z(n, seed, dim=gen.latent_dim)
    if ckpt.variant == "conditioned":
        rng = np.random.default_rng(seed)
        genre_ids = rng.integers(0, ckpt.n_genres, size=n)
        generated = generate_batch(gen, z, genre_ids)
    else:
        generated = generate_batch(gen, z)

    per_genre = set_to_dataset_distances(generated, dataset, cfg, set_label="generated")
    baseline = baseline_random_patterns(dataset.stats, n, seed + BASELINE_SEED_OFFSET)
    baseline_stack = np.stack([m.values for m in baseline])
    baseline_report = set_to_dataset_distances(baseline_stack, dataset, cfg, set_label="baseline")

    entropy_generated = None
    entropy_real = None
    if ckpt.variant == "creative":
        disc = models["discriminator"]
        with torch.no_grad():
            _, post_gen = disc(torch.from_numpy(generated.astype(np.float32)))
        entropy_generated = entropy_stats(post_gen.double().numpy())
        held = ckpt.config.get("holdout_indices") or []
        real = dataset.matrices()
        real_subset = real[np.asarray(held, dtype=np.int64)] if held else real
        with torch.no_grad():
            _, post_real = disc(torch.from_numpy(real_subset.astype(np.float32)))
        entropy_real = entropy_stats(post_real.double().numpy())

    return EvalReport(
        n_generated=n,
        per_genre_distances=per_genre,
        intra_generated=per_genre.intra,
        baseline_distances=baseline_report,
        averaged_matrix_generated=averaged_onset_matrix(generated),
        averaged_matrix_training=averaged_onset_matrix(dataset.matrices()),
        entropy_generated=entropy_generated,
        entropy_real=entropy_real,
        config={
            "checkpoint_epoch": ckpt.epoch,
            "checkpoint_variant": ckpt.variant,
            "n": n,
            "seed": seed,
            "distance": {
                "indel_cost": cfg.indel_cost,
                "onset_threshold": cfg.onset_threshold,
                "pair_sample_cap": cfg.pair_sample_cap,
            },
        },
    )


def render_pgm(matrix: np.ndarray) -> bytes:
    """Grayscale PGM (binary P5), one pixel per cell, value = round(255*v)."""
    arr = np.asarray(matrix, dtype=np.float64)
    if arr.shape != (N_INSTRUMENTS, N_STEPS):
        raise ContractViolationError(f"expected a {N_INSTRUMENTS}x{N_STEPS} grid, got {arr.shape}")
    pixels = np.floor(arr * 255.0 + 0.5).astype(np.uint8)
    header = f"P5\n{N_STEPS} {N_INSTRUMENTS}\n255\n".encode("ascii")
    return header + pixels.tobytes()


def write_report(report: EvalReport, out_dir: str | Path) -> None:
    """Write report JSON plus CSV grids and PGM renderings."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(
        json.dumps(report.to_obj(), sort_keys=True), encoding="utf-8"
    )
    (out_dir / "per_genre_distances.csv").write_text(
        report.per_genre_distances.to_csv(), encoding="utf-8"
    )
    (out_dir / "baseline_distances.csv").write_text(
        report.baseline_distances.to_csv(), encoding="utf-8"
    )
    for name, grid in (
        ("averaged_generated", report.averaged_matrix_generated),
        ("averaged_training", report.averaged_matrix_training),
    ):
        (out_dir / f"{name}.pgm").write_bytes(render_pgm(grid))
        np.savetxt(out_dir / f"{name}.csv", grid, delimiter=",", fmt="%.6f")


def load_report(path: str | Path) -> EvalReport:
    return EvalReport.from_obj(json.loads(Path(path).read_text(encoding="utf-8")))
