"""Single-file checkpoint container.

Format: a compressed .npz holding a JSON metadata entry plus one array per
named parameter tensor ("param:<net>.<name>") and optimizer state tensor
("optim:<net>:<index>:<key>"). No pickling, so files are portable and safe
to load.
"""

from __future__ import annotations

import json
import zipfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from ..errors import CheckpointError, VersionError
from .nets import (
    ConditionedDiscriminator,
    CreativeDiscriminator,
    GenreClassifier,
    RhythmGenerator,
)

CHECKPOINT_VERSION = 1

VARIANTS = ("creative", "conditioned", "classifier")


@dataclass
class Checkpoint:
    variant: str
    epoch: int
    seed: int
    config: dict
    metrics: dict = field(default_factory=dict)
    params: dict[str, np.ndarray] = field(default_factory=dict)
    optim: dict[str, np.ndarray] = field(default_factory=dict)
    optim_meta: dict = field(default_factory=dict)

    @property
    def n_genres(self) -> int:
        return len(self.config["genres"])


def save_checkpoint(ckpt: Checkpoint, path: str | Path) -> None:
    meta = {
        "version": CHECKPOINT_VERSION,
        "variant": ckpt.variant,
        "epoch": ckpt.epoch,
        "seed": ckpt.seed,
        "config": ckpt.config,
        "metrics": ckpt.metrics,
        "optim_meta": ckpt.optim_meta,
    }
    arrays = {"param:" + k: v for k, v in ckpt.params.items()}
    arrays.update({"optim:" + k: v for k, v in ckpt.optim.items()})
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savez_compressed(path, __meta__=np.array(json.dumps(meta)), **arrays)
    # np.savez appends .npz when missing; keep the caller's literal path
    implied = path if path.suffix == ".npz" else path.with_name(path.name + ".npz")
    if implied != path:
        implied.replace(path)


def load_checkpoint(path: str | Path) -> Checkpoint:
    path = Path(path)
    if not path.exists():
        raise CheckpointError(f"no checkpoint at {path}")
    try:
        with np.load(path, allow_pickle=False) as data:
            if "__meta__" not in data:
                raise CheckpointError(f"{path} is missing checkpoint metadata")
            meta = json.loads(str(data["__meta__"]))
            version = meta.get("version")
            if version != CHECKPOINT_VERSION:
                raise VersionError(f"unsupported checkpoint version {version!r} in {path}")
            if meta.get("variant") not in VARIANTS:
                raise CheckpointError(f"unknown checkpoint variant {meta.get('variant')!r}")
            params = {}
            optim = {}
            for key in data.files:
                if key.startswith("param:"):
                    params[key[len("param:") :]] = data[key]
                elif key.startswith("optim:"):
                    optim[key[len("optim:") :]] = data[key]
    except (zipfile.BadZipFile, ValueError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    return Checkpoint(
        variant=meta["variant"],
        epoch=meta["epoch"],
        seed=meta["seed"],
        config=meta["config"],
        metrics=meta["metrics"],
        params=params,
        optim=optim,
        optim_meta=meta.get("optim_meta", {}),
    )


def params_from_modules(modules: dict[str, torch.nn.Module]) -> dict[str, np.ndarray]:
    out = {}
    for net_name, module in modules.items():
        for name, tensor in module.state_dict().items():
            out[f"{net_name}.{name}"] = tensor.detach().cpu().numpy().copy()
    return out


def optim_from_optimizers(optimizers: dict[str, torch.optim.Optimizer]) -> tuple[dict, dict]:
    arrays: dict[str, np.ndarray] = {}
    meta: dict = {}
    for net_name, opt in optimizers.items():
        sd = opt.state_dict()
        meta[net_name] = {"param_groups": sd["param_groups"]}
        for idx, state in sd["state"].items():
            for key, value in state.items():
                tensor = value if isinstance(value, torch.Tensor) else torch.tensor(value)
                arrays[f"{net_name}:{idx}:{key}"] = tensor.detach().cpu().numpy().copy()
    return arrays, meta


def restore_optimizer(
    opt: torch.optim.Optimizer, ckpt: Checkpoint, net_name: str
) -> None:
    """Load saved Adam moments back into a freshly constructed optimizer."""
    if net_name not in ckpt.optim_meta:
        return
    state: dict[int, dict] = {}
    prefix = f"{net_name}:"
    for key, array in ckpt.optim.items():
        if not key.startswith(prefix):
            continue
        _, idx, field_name = key.split(":", 2)
        entry = state.setdefault(int(idx), {})
        tensor = torch.from_numpy(array.copy())
        entry[field_name] = tensor.reshape(()) if field_name == "step" and tensor.ndim == 0 else tensor
    opt.load_state_dict(
        {"state": state, "param_groups": ckpt.optim_meta[net_name]["param_groups"]}
    )


def _arch(ckpt: Checkpoint) -> dict:
    try:
        return ckpt.config["arch"]
    except KeyError as exc:
        raise CheckpointError("checkpoint config is missing its 'arch' section") from exc


def build_models(ckpt: Checkpoint) -> dict[str, torch.nn.Module]:
    """Reconstruct the networks a checkpoint describes and load their weights."""
    arch = _arch(ckpt)
    k = ckpt.n_genres
    if ckpt.variant == "creative":
        modules: dict[str, torch.nn.Module] = {
            "generator": RhythmGenerator(
                latent_dim=arch["latent_dim"],
                dense_size=arch["dense_size"],
                seq_features=arch["seq_features"],
                lstm_sizes=tuple(arch["lstm_sizes"]),
            ),
            "discriminator": CreativeDiscriminator(
                k, units=arch["units"], dropout=arch.get("dropout", 0.0)
            ),
        }
    elif ckpt.variant == "conditioned":
        modules = {
            "generator": RhythmGenerator(
                latent_dim=arch["latent_dim"],
                dense_size=arch["dense_size"],
                seq_features=arch["seq_features"],
                lstm_sizes=tuple(arch["lstm_sizes"]),
                n_genres=k,
            ),
            "discriminator": ConditionedDiscriminator(
                k, units=arch["units"], dropout=arch.get("dropout", 0.0)
            ),
        }
    elif ckpt.variant == "classifier":
        modules = {"classifier": GenreClassifier(k, units=arch["units"])}
    else:
        raise CheckpointError(f"unknown checkpoint variant {ckpt.variant!r}")

    for net_name, module in modules.items():
        prefix = net_name + "."
        state = {
            key[len(prefix) :]: torch.from_numpy(array.copy())
            for key, array in ckpt.params.items()
            if key.startswith(prefix)
        }
        try:
            module.load_state_dict(state, strict=True)
        except RuntimeError as exc:
            raise CheckpointError(f"parameter mismatch for {net_name!r}: {exc}") from exc
        module.eval()
    return modules
