import json
import math

import numpy as np
import pytest
import torch

from groovegan.core import GenreLabel, OnsetMatrix
from groovegan.errors import CheckpointError, VersionError
from groovegan.evaluation import (
    EvalReport,
    entropy_stats,
    evaluate_generator,
    load_report,
    render_pgm,
    write_report,
)
from groovegan.models import Checkpoint, CreativeDiscriminator, RhythmGenerator
from groovegan.models.checkpoint import params_from_modules


def _tiny_creative_checkpoint(k=3):
    torch.manual_seed(2)
    arch = {"latent_dim": 12, "dense_size": 8, "seq_features": 4, "lstm_sizes": [8], "units": 8}
    modules = {
        "generator": RhythmGenerator(latent_dim=12, dense_size=8, seq_features=4, lstm_sizes=(8,)),
        "discriminator": CreativeDiscriminator(k, units=8),
    }
    return Checkpoint(
        variant="creative",
        epoch=1,
        seed=0,
        config={"arch": arch, "genres": [f"g{i}" for i in range(k)], "train": {},
                "holdout_indices": [0, 1]},
        params=params_from_modules(modules),
    )


def test_entropy_stats_uniform():
    posteriors = np.full((5, 9), 1 / 9)
    stats = entropy_stats(posteriors)
    assert stats["mean"] == pytest.approx(math.log(9), abs=1e-9)
    assert stats["std"] == pytest.approx(0.0, abs=1e-12)


def test_entropy_stats_mixed():
    one_hot = np.zeros(9)
    one_hot[0] = 1.0
    mixed = np.stack([np.full(9, 1 / 9), one_hot])
    stats = entropy_stats(mixed)
    assert 0.0 < stats["mean"] < math.log(9)


def test_evaluate_generator_full_report(small_corpus):
    ckpt = _tiny_creative_checkpoint()
    report = evaluate_generator(ckpt, small_corpus, n=8, seed=5)
    assert report.n_generated == 8
    assert len(report.per_genre_distances.means[0]) == small_corpus.n_genres
    assert report.intra_generated is not None
    assert report.averaged_matrix_generated.shape == (9, 32)
    assert 0.0 <= report.averaged_matrix_generated.min()
    assert report.averaged_matrix_generated.max() <= 1.0
    assert report.entropy_generated is not None and report.entropy_real is not None


def test_evaluate_generator_deterministic(small_corpus):
    ckpt = _tiny_creative_checkpoint()
    r1 = evaluate_generator(ckpt, small_corpus, n=6, seed=9)
    r2 = evaluate_generator(ckpt, small_corpus, n=6, seed=9)
    assert json.dumps(r1.to_obj(), sort_keys=True) == json.dumps(r2.to_obj(), sort_keys=True)


def test_evaluate_generator_k_mismatch(small_corpus):
    ckpt = _tiny_creative_checkpoint(k=4)
    with pytest.raises(CheckpointError, match="genres"):
        evaluate_generator(ckpt, small_corpus, n=4, seed=0)


def test_evaluate_single_pattern_intra_missing(small_corpus):
    ckpt = _tiny_creative_checkpoint()
    report = evaluate_generator(ckpt, small_corpus, n=1, seed=3)
    assert report.intra_generated is None


def test_report_roundtrip_and_files(tmp_path, small_corpus):
    ckpt = _tiny_creative_checkpoint()
    report = evaluate_generator(ckpt, small_corpus, n=4, seed=2)
    write_report(report, tmp_path)
    loaded = load_report(tmp_path / "report.json")
    assert loaded.n_generated == report.n_generated
    np.testing.assert_allclose(
        loaded.averaged_matrix_generated, report.averaged_matrix_generated
    )
    for name in (
        "report.json",
        "per_genre_distances.csv",
        "baseline_distances.csv",
        "averaged_generated.pgm",
        "averaged_training.pgm",
    ):
        assert (tmp_path / name).exists()


def test_report_version_gate(tmp_path, small_corpus):
    ckpt = _tiny_creative_checkpoint()
    report = evaluate_generator(ckpt, small_corpus, n=2, seed=2)
    obj = report.to_obj()
    obj["version"] = 99
    (tmp_path / "old.json").write_text(json.dumps(obj))
    with pytest.raises(VersionError):
        load_report(tmp_path / "old.json")


def test_render_pgm_format():
    grid = np.zeros((9, 32))
    grid[0, 0] = 1.0
    grid[8, 31] = 0.5
    data = render_pgm(grid)
    assert data.startswith(b"P5\n32 9\n255\n")
    pixels = np.frombuffer(data.split(b"255\n", 1)[1], dtype=np.uint8).reshape(9, 32)
    assert pixels[0, 0] == 255
    assert pixels[8, 31] == 128  # round(0.5 * 255) = 128 with half-up
    assert pixels.sum() == 255 + 128


def test_replayed_training_patterns_match_intra(small_corpus):
    # a "generator" that replays genre-g training patterns scores exactly
    # that genre's intra mean
    from groovegan.distance import genre_distance_matrix, set_to_dataset_distances

    g = small_corpus.genres[1]
    replay = [p.matrix for p in small_corpus.by_genre(g.id)]
    report = set_to_dataset_distances(replay, small_corpus)
    full = genre_distance_matrix(small_corpus)
    assert report.intra == pytest.approx(full.means[g.id][g.id])
