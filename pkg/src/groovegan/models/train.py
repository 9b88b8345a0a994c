"""Training loops for the classifier and both GAN variants.

Every loop is a single deterministic sequence of Adam steps: one numpy
Generator seeded from the config drives shuffling, latent draws and label
sampling, and torch is seeded before the networks are built. In strict
deterministic mode torch additionally runs single-threaded with
deterministic kernels only, which makes loss histories bit-identical
across runs on one machine.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import torch

from ..core.types import RhythmDataset
from ..errors import ConfigError
from .checkpoint import Checkpoint, optim_from_optimizers, params_from_modules, save_checkpoint
from .losses import gan_losses, genre_ambiguity_loss, genre_classification_loss, posterior_entropy
from .nets import (
    LATENT_DIM,
    ConditionedDiscriminator,
    CreativeDiscriminator,
    GenreClassifier,
    RhythmGenerator,
)

log = logging.getLogger(__name__)

LN2 = math.log(2.0)


def set_strict_determinism(seed: int) -> None:
    torch.manual_seed(seed)
    torch.use_deterministic_algorithms(True)
    torch.set_num_threads(1)


@dataclass(frozen=True)
class GanTrainConfig:
    epochs: int = 100
    batch_size: int = 32
    lr: float = 2e-4
    beta1: float = 0.5
    lambda_ambiguity: float = 1.0
    seed: int = 0
    checkpoint_every: int = 10
    holdout_fraction: float = 0.1
    strict_deterministic: bool = True
    latent_dim: int = LATENT_DIM
    dense_size: int = 128
    seq_features: int = 16
    lstm_sizes: tuple[int, ...] = (128, 128)
    units: int = 64
    # Balance knobs for small corpora: a slower discriminator learning rate,
    # discriminator updates only every d_every-th batch, and instance noise
    # on the discriminator's inputs annealed linearly to zero.
    d_lr: float | None = None
    d_every: int = 1
    instance_noise: float = 0.0
    instance_noise_floor: float = 0.0
    d_dropout: float = 0.0


@dataclass(frozen=True)
class ClassifierTrainConfig:
    epochs: int = 60
    batch_size: int = 32
    lr: float = 1e-3
    seed: int = 0
    val_fraction: float = 0.1
    strict_deterministic: bool = True
    units: int = 64


def _arch_dict(cfg: GanTrainConfig) -> dict:
    return {
        "latent_dim": cfg.latent_dim,
        "dense_size": cfg.dense_size,
        "seq_features": cfg.seq_features,
        "lstm_sizes": list(cfg.lstm_sizes),
        "units": cfg.units,
        "dropout": cfg.d_dropout,
    }


def stratified_split(
    labels: np.ndarray, fraction: float, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic per-class split; returns (train_idx, held_out_idx)."""
    train: list[int] = []
    held: list[int] = []
    for cls in np.unique(labels):
        idx = np.nonzero(labels == cls)[0]
        idx = idx[rng.permutation(len(idx))]
        n_held = int(round(fraction * len(idx))) if fraction > 0 else 0
        held.extend(idx[:n_held].tolist())
        train.extend(idx[n_held:].tolist())
    return np.array(sorted(train), dtype=np.int64), np.array(sorted(held), dtype=np.int64)


def _dataset_tensors(dataset: RhythmDataset) -> tuple[torch.Tensor, np.ndarray]:
    x = torch.from_numpy(dataset.matrices().astype(np.float32))
    y = np.array([p.genre.id for p in dataset.patterns], dtype=np.int64)
    return x, y


def _batches(n: int, batch_size: int, rng: np.random.Generator):
    order = rng.permutation(n)
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def _append_history(out_dir: Path | None, record: dict) -> None:
    if out_dir is not None:
        with (out_dir / "history.jsonl").open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def train_creative_gan(
    dataset: RhythmDataset, config: GanTrainConfig, out_dir: str | Path | None = None
) -> tuple[list[Checkpoint], list[dict]]:
    """Adversarial training with the genre-ambiguity objective.

    The discriminator learns real/fake plus genre classification on real
    samples; the generator minimizes the non-saturating adversarial loss
    plus lambda times the ambiguity of the genre posterior on its output.
    """
    if dataset.n_genres < 2:
        raise ConfigError("ambiguity training needs at least 2 genres")
    out_dir = _prepare_out_dir(out_dir)
    if config.strict_deterministic:
        set_strict_determinism(config.seed)
    else:
        torch.manual_seed(config.seed)
    rng = np.random.default_rng(config.seed)

    x_all, y_all = _dataset_tensors(dataset)
    train_idx, held_idx = stratified_split(y_all, config.holdout_fraction, rng)
    x = x_all[torch.from_numpy(train_idx)]
    y = torch.from_numpy(y_all[train_idx])

    gen = RhythmGenerator(
        latent_dim=config.latent_dim,
        dense_size=config.dense_size,
        seq_features=config.seq_features,
        lstm_sizes=config.lstm_sizes,
    )
    disc = CreativeDiscriminator(dataset.n_genres, units=config.units, dropout=config.d_dropout)
    opt_g = torch.optim.Adam(gen.parameters(), lr=config.lr, betas=(config.beta1, 0.999))
    opt_d = torch.optim.Adam(
        disc.parameters(), lr=config.d_lr or config.lr, betas=(config.beta1, 0.999)
    )

    base_config = {
        "variant": "creative",
        "arch": _arch_dict(config),
        "train": asdict(config),
        "genres": [g.name for g in dataset.genres],
        "holdout_indices": held_idx.tolist(),
    }

    history: list[dict] = []
    checkpoints: list[Checkpoint] = []
    n = len(train_idx)
    step = 0
    for epoch in range(1, config.epochs + 1):
        sums = {"loss_d": 0.0, "loss_g": 0.0, "loss_genre": 0.0, "loss_ambiguity": 0.0,
                "d_acc": 0.0, "gen_entropy": 0.0}
        n_batches = 0
        n_d_steps = 0
        sigma = max(config.instance_noise * (1.0 - (epoch - 1) / config.epochs),
                    config.instance_noise_floor)
        for batch_idx in _batches(n, config.batch_size, rng):
            xb = x[torch.from_numpy(batch_idx)]
            yb = y[torch.from_numpy(batch_idx)]
            b = len(batch_idx)

            # discriminator step: real/fake + genre classification on real
            if step % config.d_every == 0:
                z = torch.from_numpy(rng.standard_normal((b, config.latent_dim)).astype(np.float32))
                with torch.no_grad():
                    fake = gen(z)
                xb_d, fake_d = xb, fake
                if sigma > 0:
                    xb_d = xb + torch.from_numpy(
                        (sigma * rng.standard_normal(tuple(xb.shape))).astype(np.float32))
                    fake_d = fake + torch.from_numpy(
                        (sigma * rng.standard_normal(tuple(fake.shape))).astype(np.float32))
                p_real, post_real = disc(xb_d)
                p_fake, _ = disc(fake_d)
                loss_gan_d, _ = gan_losses(p_real, p_fake)
                loss_genre = genre_classification_loss(post_real, yb)
                opt_d.zero_grad()
                (loss_gan_d + loss_genre).backward()
                opt_d.step()
                with torch.no_grad():
                    acc = 0.5 * ((p_real > 0.5).float().mean() + (p_fake <= 0.5).float().mean())
                sums["loss_d"] += float(loss_gan_d.detach())
                sums["loss_genre"] += float(loss_genre.detach())
                sums["d_acc"] += float(acc)
                n_d_steps += 1
            step += 1

            # generator step: fool the real/fake head, flatten the posterior
            z2 = torch.from_numpy(rng.standard_normal((b, config.latent_dim)).astype(np.float32))
            fake2 = gen(z2)
            fake2_d = fake2
            if sigma > 0:
                fake2_d = fake2 + torch.from_numpy(
                    (sigma * rng.standard_normal(tuple(fake2.shape))).astype(np.float32))
            p_fake2, post_fake2 = disc(fake2_d)
            _, loss_gan_g = gan_losses(p_fake2.detach(), p_fake2)
            loss_amb = genre_ambiguity_loss(post_fake2)
            opt_g.zero_grad()
            (loss_gan_g + config.lambda_ambiguity * loss_amb).backward()
            opt_g.step()

            with torch.no_grad():
                entropy = posterior_entropy(post_fake2).mean()
            sums["loss_g"] += float(loss_gan_g.detach())
            sums["loss_ambiguity"] += float(loss_amb.detach())
            sums["gen_entropy"] += float(entropy)
            n_batches += 1

        record = {"epoch": epoch}
        for key in ("loss_g", "loss_ambiguity", "gen_entropy"):
            record[key] = sums[key] / n_batches
        for key in ("loss_d", "loss_genre", "d_acc"):
            record[key] = sums[key] / max(n_d_steps, 1)
        history.append(record)
        _append_history(out_dir, record)
        if epoch % config.checkpoint_every == 0 or epoch == config.epochs:
            ckpt = Checkpoint(
                variant="creative",
                epoch=epoch,
                seed=config.seed,
                config=base_config,
                metrics=dict(record),
                params=params_from_modules({"generator": gen, "discriminator": disc}),
            )
            ckpt.optim, ckpt.optim_meta = optim_from_optimizers(
                {"generator": opt_g, "discriminator": opt_d}
            )
            checkpoints.append(ckpt)
            if out_dir is not None:
                save_checkpoint(ckpt, out_dir / f"ckpt-epoch-{epoch:04d}.npz")

    selected = select_creative_checkpoint(checkpoints)
    if out_dir is not None:
        (out_dir / "selection.json").write_text(
            json.dumps(
                {
                    "selected_epoch": selected.epoch,
                    "criterion": "max gen_entropy among checkpoints whose loss_g is within 20% of ln 2 (fallback: last)",
                },
                sort_keys=True,
            ),
            encoding="utf-8",
        )
    return checkpoints, history


def select_creative_checkpoint(checkpoints: list[Checkpoint]) -> Checkpoint:
    """Pick the epoch with the most uncertain genre posterior among those
    where the adversarial game looks balanced (loss_g within 20% of ln 2)."""
    candidates = [
        c for c in checkpoints if abs(c.metrics.get("loss_g", math.inf) - LN2) <= 0.2 * LN2
    ]
    if not candidates:
        return checkpoints[-1]
    return max(candidates, key=lambda c: c.metrics.get("gen_entropy", -math.inf))


def train_conditioned_gan(
    dataset: RhythmDataset, config: GanTrainConfig, out_dir: str | Path | None = None
) -> tuple[list[Checkpoint], list[dict]]:
    """Genre-conditioned adversarial training (labels embedded into z and
    into the discriminator input)."""
    out_dir = _prepare_out_dir(out_dir)
    if config.strict_deterministic:
        set_strict_determinism(config.seed)
    else:
        torch.manual_seed(config.seed)
    rng = np.random.default_rng(config.seed)

    x_all, y_all = _dataset_tensors(dataset)
    train_idx, held_idx = stratified_split(y_all, config.holdout_fraction, rng)
    x = x_all[torch.from_numpy(train_idx)]
    y = torch.from_numpy(y_all[train_idx])
    k = dataset.n_genres

    gen = RhythmGenerator(
        latent_dim=config.latent_dim,
        dense_size=config.dense_size,
        seq_features=config.seq_features,
        lstm_sizes=config.lstm_sizes,
        n_genres=k,
    )
    disc = ConditionedDiscriminator(k, units=config.units, dropout=config.d_dropout)
    opt_g = torch.optim.Adam(gen.parameters(), lr=config.lr, betas=(config.beta1, 0.999))
    opt_d = torch.optim.Adam(
        disc.parameters(), lr=config.d_lr or config.lr, betas=(config.beta1, 0.999)
    )

    base_config = {
        "variant": "conditioned",
        "arch": _arch_dict(config),
        "train": asdict(config),
        "genres": [g.name for g in dataset.genres],
        "holdout_indices": held_idx.tolist(),
    }

    history: list[dict] = []
    checkpoints: list[Checkpoint] = []
    n = len(train_idx)
    step = 0
    for epoch in range(1, config.epochs + 1):
        sums = {"loss_d": 0.0, "loss_g": 0.0, "d_acc": 0.0}
        n_batches = 0
        n_d_steps = 0
        sigma = max(config.instance_noise * (1.0 - (epoch - 1) / config.epochs),
                    config.instance_noise_floor)
        for batch_idx in _batches(n, config.batch_size, rng):
            xb = x[torch.from_numpy(batch_idx)]
            yb = y[torch.from_numpy(batch_idx)]
            b = len(batch_idx)

            if step % config.d_every == 0:
                z = torch.from_numpy(rng.standard_normal((b, config.latent_dim)).astype(np.float32))
                y_fake = torch.from_numpy(rng.integers(0, k, size=b).astype(np.int64))
                with torch.no_grad():
                    fake = gen(z, y_fake)
                xb_d, fake_d = xb, fake
                if sigma > 0:
                    xb_d = xb + torch.from_numpy(
                        (sigma * rng.standard_normal(tuple(xb.shape))).astype(np.float32))
                    fake_d = fake + torch.from_numpy(
                        (sigma * rng.standard_normal(tuple(fake.shape))).astype(np.float32))
                p_real = disc(xb_d, yb)
                p_fake = disc(fake_d, y_fake)
                loss_gan_d, _ = gan_losses(p_real, p_fake)
                opt_d.zero_grad()
                loss_gan_d.backward()
                opt_d.step()
                with torch.no_grad():
                    acc = 0.5 * ((p_real > 0.5).float().mean() + (p_fake <= 0.5).float().mean())
                sums["loss_d"] += float(loss_gan_d.detach())
                sums["d_acc"] += float(acc)
                n_d_steps += 1
            step += 1

            z2 = torch.from_numpy(rng.standard_normal((b, config.latent_dim)).astype(np.float32))
            y2 = torch.from_numpy(rng.integers(0, k, size=b).astype(np.int64))
            fake2 = gen(z2, y2)
            fake2_d = fake2
            if sigma > 0:
                fake2_d = fake2 + torch.from_numpy(
                    (sigma * rng.standard_normal(tuple(fake2.shape))).astype(np.float32))
            p_fake2 = disc(fake2_d, y2)
            _, loss_gan_g = gan_losses(p_fake2.detach(), p_fake2)
            opt_g.zero_grad()
            loss_gan_g.backward()
            opt_g.step()

            sums["loss_g"] += float(loss_gan_g.detach())
            n_batches += 1

        record = {"epoch": epoch, "loss_genre": None, "loss_ambiguity": None, "gen_entropy": None}
        record["loss_g"] = sums["loss_g"] / n_batches
        record["loss_d"] = sums["loss_d"] / max(n_d_steps, 1)
        record["d_acc"] = sums["d_acc"] / max(n_d_steps, 1)
        history.append(record)
        _append_history(out_dir, record)
        if epoch % config.checkpoint_every == 0 or epoch == config.epochs:
            ckpt = Checkpoint(
                variant="conditioned",
                epoch=epoch,
                seed=config.seed,
                config=base_config,
                metrics=dict(record),
                params=params_from_modules({"generator": gen, "discriminator": disc}),
            )
            ckpt.optim, ckpt.optim_meta = optim_from_optimizers(
                {"generator": opt_g, "discriminator": opt_d}
            )
            checkpoints.append(ckpt)
            if out_dir is not None:
                save_checkpoint(ckpt, out_dir / f"ckpt-epoch-{epoch:04d}.npz")
    return checkpoints, history


def train_classifier(
    dataset: RhythmDataset, config: ClassifierTrainConfig, out_dir: str | Path | None = None
) -> tuple[Checkpoint, list[dict]]:
    """Supervised genre classifier; returns the best-validation checkpoint."""
    if dataset.n_genres < 2:
        raise ConfigError("classification needs at least 2 genres")
    out_dir = _prepare_out_dir(out_dir)
    if config.strict_deterministic:
        set_strict_determinism(config.seed)
    else:
        torch.manual_seed(config.seed)
    rng = np.random.default_rng(config.seed)

    x, y_np = _dataset_tensors(dataset)
    for g in dataset.genres:
        n_g = int((y_np == g.id).sum())
        if n_g < 10:
            log.warning("genre %r has only %d patterns; validation will be thin", g.name, n_g)
    train_idx, val_idx = stratified_split(y_np, config.val_fraction, rng)
    y = torch.from_numpy(y_np)

    model = GenreClassifier(dataset.n_genres, units=config.units)
    opt = torch.optim.Adam(model.parameters(), lr=config.lr)

    best_state: dict | None = None
    best_acc = -1.0
    best_epoch = 0
    history: list[dict] = []
    for epoch in range(1, config.epochs + 1):
        model.train()
        loss_sum, n_batches = 0.0, 0
        for batch_idx in _batches(len(train_idx), config.batch_size, rng):
            sel = torch.from_numpy(train_idx[batch_idx])
            posterior = model(x[sel])
            loss = genre_classification_loss(posterior, y[sel])
            opt.zero_grad()
            loss.backward()
            opt.step()
            loss_sum += float(loss.detach())
            n_batches += 1
        model.eval()
        with torch.no_grad():
            val_posterior = model(x[torch.from_numpy(val_idx)])
            val_acc = float((val_posterior.argmax(dim=1) == y[torch.from_numpy(val_idx)]).float().mean())
        record = {"epoch": epoch, "loss": loss_sum / n_batches, "val_accuracy": val_acc}
        history.append(record)
        _append_history(out_dir, record)
        if val_acc > best_acc:
            best_acc = val_acc
            best_epoch = epoch
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}

    model.load_state_dict(best_state)
    ckpt = Checkpoint(
        variant="classifier",
        epoch=best_epoch,
        seed=config.seed,
        config={
            "variant": "classifier",
            "arch": {"units": config.units},
            "train": asdict(config),
            "genres": [g.name for g in dataset.genres],
            "val_indices": val_idx.tolist(),
        },
        metrics={"val_accuracy": best_acc, "best_epoch": best_epoch},
        params=params_from_modules({"classifier": model}),
    )
    ckpt.optim, ckpt.optim_meta = optim_from_optimizers({"classifier": opt})
    if out_dir is not None:
        save_checkpoint(ckpt, out_dir / "classifier-best.npz")
    return ckpt, history


def classifier_accuracy(model: GenreClassifier, x: torch.Tensor, y: torch.Tensor) -> float:
    model.eval()
    with torch.no_grad():
        return float((model(x).argmax(dim=1) == y).float().mean())


def _prepare_out_dir(out_dir: str | Path | None) -> Path | None:
    if out_dir is None:
        return None
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    history = out_dir / "history.jsonl"
    if history.exists():
        history.unlink()
    return out_dir
