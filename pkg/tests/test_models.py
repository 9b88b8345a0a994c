import numpy as np
import pytest
import torch

from groovegan.core import GenreLabel, OnsetMatrix
from groovegan.errors import CheckpointError, ContractViolationError
from groovegan.models import (
    Checkpoint,
    ConditionedDiscriminator,
    CreativeDiscriminator,
    GenreClassifier,
    LATENT_DIM,
    RhythmGenerator,
    build_models,
    classifier_forward,
    discriminator_forward,
    generate_batch,
    generator_forward,
    load_checkpoint,
    sample_z,
    save_checkpoint,
)
from groovegan.models.checkpoint import params_from_modules


@pytest.fixture(scope="module")
def nets():
    torch.manual_seed(0)
    return {
        "gen": RhythmGenerator(),
        "cgen": RhythmGenerator(n_genres=3),
        "creative": CreativeDiscriminator(3),
        "conditioned": ConditionedDiscriminator(3),
        "classifier": GenreClassifier(3),
    }


def test_sample_z_shape_and_determinism():
    a = sample_z(10, seed=4)
    b = sample_z(10, seed=4)
    np.testing.assert_array_equal(a, b)
    assert a.shape == (10, LATENT_DIM)
    assert sample_z(1, seed=0).shape == (1, 100)


def test_sample_z_moments():
    z = sample_z(10000, seed=1)
    assert np.all(np.abs(z.mean(axis=0)) < 0.05)
    assert np.all(np.abs(z.var(axis=0) - 1.0) < 0.1)


def test_generator_output_contract(nets):
    out = generator_forward(nets["gen"], sample_z(1, 3)[0])
    assert isinstance(out, OnsetMatrix)
    assert out.values.shape == (9, 32)
    assert 0.0 < out.values.min() and out.values.max() < 1.0


def test_generator_deterministic(nets):
    z = sample_z(1, 8)[0]
    a = generator_forward(nets["gen"], z)
    b = generator_forward(nets["gen"], z)
    np.testing.assert_array_equal(a.values, b.values)


def test_generator_genre_contracts(nets):
    z = sample_z(1, 2)[0]
    with pytest.raises(ContractViolationError):
        generator_forward(nets["gen"], z, GenreLabel(0, "x"))
    with pytest.raises(ContractViolationError):
        generator_forward(nets["cgen"], z)
    out = generator_forward(nets["cgen"], z, GenreLabel(1, "x"))
    assert out.values.shape == (9, 32)


def test_conditioned_generator_label_changes_output(nets):
    z = sample_z(1, 5)[0]
    a = generator_forward(nets["cgen"], z, GenreLabel(0, "a"))
    b = generator_forward(nets["cgen"], z, GenreLabel(1, "b"))
    assert not np.array_equal(a.values, b.values)


def test_discriminator_contracts(nets):
    m = OnsetMatrix(np.zeros((9, 32)))
    p, posterior = discriminator_forward(nets["creative"], m)
    assert 0.0 < p < 1.0
    assert posterior.shape == (3,)
    assert posterior.sum() == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ContractViolationError):
        discriminator_forward(nets["creative"], m, GenreLabel(0, "x"))

    p2, none = discriminator_forward(nets["conditioned"], m, GenreLabel(0, "x"))
    assert 0.0 < p2 < 1.0 and none is None
    with pytest.raises(ContractViolationError):
        discriminator_forward(nets["conditioned"], m)


def test_classifier_simplex(nets):
    m = OnsetMatrix(np.random.default_rng(0).random((9, 32)))
    posterior = classifier_forward(nets["classifier"], m)
    assert posterior.shape == (3,)
    assert posterior.sum() == pytest.approx(1.0, abs=1e-6)
    assert np.all(posterior > 0)


def test_fresh_init_not_saturated():
    m = OnsetMatrix(np.random.default_rng(1).random((9, 32)))
    for seed in range(100):
        torch.manual_seed(seed)
        model = GenreClassifier(3)
        posterior = classifier_forward(model, m)
        assert posterior.max() < 0.9


def _mini_checkpoint(variant="creative", k=3):
    torch.manual_seed(1)
    arch = {"latent_dim": 16, "dense_size": 8, "seq_features": 4, "lstm_sizes": [8], "units": 8}
    if variant == "creative":
        modules = {
            "generator": RhythmGenerator(
                latent_dim=16, dense_size=8, seq_features=4, lstm_sizes=(8,)
            ),
            "discriminator": CreativeDiscriminator(k, units=8),
        }
    else:
        modules = {
            "generator": RhythmGenerator(
                latent_dim=16, dense_size=8, seq_features=4, lstm_sizes=(8,), n_genres=k
            ),
            "discriminator": ConditionedDiscriminator(k, units=8),
        }
    return Checkpoint(
        variant=variant,
        epoch=7,
        seed=1,
        config={"arch": arch, "genres": [f"g{i}" for i in range(k)], "train": {}},
        metrics={"loss_g": 0.7},
        params=params_from_modules(modules),
    )


def test_checkpoint_roundtrip_outputs_identical(tmp_path):
    ckpt = _mini_checkpoint()
    path = tmp_path / "ck.npz"
    save_checkpoint(ckpt, path)
    loaded = load_checkpoint(path)
    assert loaded.epoch == 7 and loaded.variant == "creative"
    z = sample_z(6, 11, dim=16)
    out_a = generate_batch(build_models(ckpt)["generator"], z)
    out_b = generate_batch(build_models(loaded)["generator"], z)
    np.testing.assert_array_equal(out_a, out_b)


def test_checkpoint_wrong_k_names_field(tmp_path):
    ckpt = _mini_checkpoint()
    path = tmp_path / "ck.npz"
    save_checkpoint(ckpt, path)
    loaded = load_checkpoint(path)
    loaded.config["genres"] = ["g0", "g1", "g2", "g3"]  # wrong K vs stored tensors
    with pytest.raises(CheckpointError, match="discriminator"):
        build_models(loaded)


def test_checkpoint_corrupt_file(tmp_path):
    path = tmp_path / "junk.npz"
    path.write_bytes(b"definitely not a checkpoint")
    with pytest.raises(CheckpointError):
        load_checkpoint(path)


def test_checkpoint_missing_file(tmp_path):
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path / "absent.npz")


def test_checkpoint_version_gate(tmp_path):
    import json

    import numpy as np

    path = tmp_path / "old.npz"
    np.savez_compressed(path, __meta__=np.array(json.dumps({"version": 99, "variant": "creative"})))
    from groovegan.errors import VersionError

    with pytest.raises(VersionError):
        load_checkpoint(path)
