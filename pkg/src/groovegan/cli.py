"""Command-line entry point.

One binary with subcommands covering the whole workflow: ingest or
synthesize a corpus, inspect stats, compute distance matrices, train the
classifier and both GAN variants, generate patterns, evaluate, export MIDI,
and serve generators over HTTP. Every run with an output target writes its
fully resolved configuration next to the outputs.

Exit codes: 0 success, 1 usage error, 2 data/model error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    GenreTemplate,
    IngestConfig,
    INSTRUMENT_NAMES,
    OnsetMatrix,
    SynthSpec,
    builtin_spec,
    export_midi,
    ingest_dataset,
    synth_corpus,
)
from .core.codec import (
    dataset_from_obj,
    dataset_to_obj,
    load_json,
    matrices_from_obj,
    patterns_to_obj,
    save_json,
)
from .distance import DistanceConfig, genre_distance_matrix
from .errors import ConfigError, GrooveganError
from .evaluation import evaluate_generator, write_report
from .models import (
    ClassifierTrainConfig,
    GanTrainConfig,
    build_models,
    generate_batch,
    load_checkpoint,
    sample_z,
    select_creative_checkpoint,
    train_classifier,
    train_conditioned_gan,
    train_creative_gan,
)

log = logging.getLogger("groovegan")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise UsageError(message)


def output_root() -> Path:
    return Path(os.environ.get("RHYTHM_CAN_HOME", "runs"))


def _resolve_out(arg: str | None, default_name: str) -> Path:
    return Path(arg) if arg else output_root() / default_name


def _write_resolved_config(out: Path, command: str, resolved: dict) -> None:
    target = out / "run_config.json" if out.is_dir() else out.with_suffix(out.suffix + ".config.json")
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(
        json.dumps({"command": command, "version": __version__, **resolved}, sort_keys=True),
        encoding="utf-8",
    )


def _merge(args: argparse.Namespace, file_config: dict, key: str, default):
    """flag > config file > default; config keys may use - or _."""
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    for variant in (key, key.replace("-", "_"), key.replace("_", "-")):
        if variant in file_config:
            return file_config[variant]
    return default


def _load_file_config(args: argparse.Namespace) -> dict:
    if getattr(args, "config", None):
        return load_json(args.config)
    return {}


def build_parser() -> _Parser:
    parser = _Parser(prog="groovegan", description=__doc__)
    parser.add_argument("--version", action="version", version=f"groovegan {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file; flags override its values")
        return p

    p = add("ingest", "ingest a root/<genre>/*.mid directory into a dataset file")
    p.add_argument("root")
    p.add_argument("-o", "--out", help="dataset JSON path")

    p = add("synth", "sample a synthetic genre corpus")
    p.add_argument("--spec", help="synth spec JSON (omit for the built-in templates)")
    p.add_argument("-n", "--n-per-genre", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--out", help="dataset JSON path")

    p = add("stats", "print per-instrument onset statistics of a dataset")
    p.add_argument("dataset")

    p = add("distances", "genre-vs-genre distance matrix of a dataset")
    p.add_argument("dataset")
    p.add_argument("-o", "--out", help="report directory")
    _add_distance_flags(p)

    p = add("train-classifier", "train the genre classifier")
    p.add_argument("dataset")
    p.add_argument("-o", "--out", help="run directory")
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--seed", type=int)

    for name, help_text in (
        ("train-cgan", "train the genre-conditioned GAN"),
        ("train-creative", "train the ambiguity-regularized GAN"),
    ):
        p = add(name, help_text)
        p.add_argument("dataset")
        p.add_argument("-o", "--out", help="run directory")
        p.add_argument("--epochs", type=int)
        p.add_argument("--batch-size", type=int)
        p.add_argument("--lr", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--checkpoint-every", type=int)
        if name == "train-creative":
            p.add_argument("--lambda", dest="lambda_ambiguity", type=float,
                           help="weight of the genre ambiguity loss")

    p = add("generate", "generate patterns from a trained checkpoint")
    p.add_argument("checkpoint")
    p.add_argument("-n", "--n", type=int)
    p.add_argument("--genre", help="genre id or name (conditioned checkpoints only)")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--out", help="patterns JSON path")

    p = add("evaluate", "full evaluation report for a generator checkpoint")
    p.add_argument("checkpoint")
    p.add_argument("dataset")
    p.add_argument("-n", "--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--out", help="report directory")
    _add_distance_flags(p)

    p = add("export-midi", "write each pattern in a patterns file as a MIDI file")
    p.add_argument("patterns")
    p.add_argument("--tempo", type=float)
    p.add_argument("-o", "--out", help="output directory")

    p = add("serve", "serve generator checkpoints over HTTP")
    p.add_argument("checkpoints", nargs="+")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    return parser


def _add_distance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--indel-cost", type=float)
    p.add_argument("--onset-threshold", type=float)
    p.add_argument("--pair-sample-cap", type=int)


def _distance_config(args, file_config) -> DistanceConfig:
    return DistanceConfig(
        indel_cost=_merge(args, file_config, "indel-cost", 8.0),
        onset_threshold=_merge(args, file_config, "onset-threshold", 0.5),
        pair_sample_cap=_merge(args, file_config, "pair-sample-cap", 250_000),
    )


def _load_dataset(path: str):
    return dataset_from_obj(load_json(path))


def cmd_ingest(args) -> int:
    out = _resolve_out(args.out, "dataset.json")
    dataset = ingest_dataset(args.root, config=IngestConfig())
    out.parent.mkdir(parents=True, exist_ok=True)
    save_json(dataset_to_obj(dataset), out)
    _write_resolved_config(out, "ingest", {"root": str(args.root), "out": str(out)})
    print(f"ingested {len(dataset.patterns)} patterns across {dataset.n_genres} genres -> {out}")
    return 0


def _synth_spec_from_file(path: str) -> tuple[SynthSpec, dict]:
    obj = load_json(path)
    jitter = obj.get("jitter", 0.1)
    if "templates" in obj:
        templates = [
            GenreTemplate(
                name=t["name"],
                probs=np.asarray(t["probs"], dtype=np.float64),
                velocities=np.asarray(t["velocities"], dtype=np.float64),
            )
            for t in obj["templates"]
        ]
        return SynthSpec(templates=templates, jitter=jitter), obj
    return builtin_spec(obj.get("builtin"), jitter=jitter), obj


def cmd_synth(args, file_config) -> int:
    if args.spec:
        spec, spec_obj = _synth_spec_from_file(args.spec)
    else:
        spec, spec_obj = builtin_spec(), {"builtin": None}
    n = _merge(args, {**file_config, **spec_obj}, "n-per-genre", 100)
    seed = _merge(args, {**file_config, **spec_obj}, "seed", 0)
    out = _resolve_out(args.out, "dataset.json")
    dataset = synth_corpus(spec, n_per_genre=n, seed=seed)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_json(dataset_to_obj(dataset), out)
    _write_resolved_config(
        out, "synth",
        {"spec": args.spec, "n_per_genre": n, "seed": seed, "out": str(out),
         "genres": [g.name for g in dataset.genres]},
    )
    print(f"synthesized {len(dataset.patterns)} patterns across {dataset.n_genres} genres -> {out}")
    return 0


def cmd_stats(args) -> int:
    dataset = _load_dataset(args.dataset)
    print(f"patterns: {len(dataset.patterns)}  genres: {dataset.n_genres}")
    for g in dataset.genres:
        print(f"  genre {g.id}: {g.name} ({len(dataset.by_genre(g.id))} patterns)")
    print(f"{'instrument':<12} {'total':>8} {'mean':>8} {'std':>8}")
    for i, name in enumerate(INSTRUMENT_NAMES):
        print(
            f"{name:<12} {int(dataset.stats.total[i]):>8} "
            f"{dataset.stats.mean[i]:>8.3f} {dataset.stats.std[i]:>8.3f}"
        )
    return 0


def cmd_distances(args, file_config) -> int:
    dataset = _load_dataset(args.dataset)
    cfg = _distance_config(args, file_config)
    report = genre_distance_matrix(dataset, cfg)
    out = _resolve_out(args.out, "distances")
    out.mkdir(parents=True, exist_ok=True)
    (out / "genre_distances.json").write_text(
        json.dumps(report.to_obj(), sort_keys=True), encoding="utf-8"
    )
    (out / "genre_distances.csv").write_text(report.to_csv(), encoding="utf-8")
    _write_resolved_config(out, "distances", {
        "dataset": args.dataset, "indel_cost": cfg.indel_cost,
        "onset_threshold": cfg.onset_threshold, "pair_sample_cap": cfg.pair_sample_cap,
    })
    print(report.to_csv())
    return 0


def cmd_train_classifier(args, file_config) -> int:
    dataset = _load_dataset(args.dataset)
    cfg = ClassifierTrainConfig(
        epochs=_merge(args, file_config, "epochs", 60),
        batch_size=_merge(args, file_config, "batch-size", 32),
        lr=_merge(args, file_config, "lr", 1e-3),
        seed=_merge(args, file_config, "seed", 0),
    )
    out = _resolve_out(args.out, "classifier")
    out.mkdir(parents=True, exist_ok=True)
    ckpt, _history = train_classifier(dataset, cfg, out_dir=out)
    _write_resolved_config(out, "train-classifier", {"dataset": args.dataset, **vars_of(cfg)})
    print(f"best validation accuracy {ckpt.metrics['val_accuracy']:.4f} "
          f"at epoch {ckpt.metrics['best_epoch']} -> {out / 'classifier-best.npz'}")
    return 0


def _gan_config(args, file_config, with_lambda: bool) -> GanTrainConfig:
    kwargs = dict(
        epochs=_merge(args, file_config, "epochs", 100),
        batch_size=_merge(args, file_config, "batch-size", 32),
        lr=_merge(args, file_config, "lr", 2e-4),
        seed=_merge(args, file_config, "seed", 0),
        checkpoint_every=_merge(args, file_config, "checkpoint-every", 10),
    )
    if with_lambda:
        kwargs["lambda_ambiguity"] = _merge(args, file_config, "lambda_ambiguity", 1.0)
    return GanTrainConfig(**kwargs)


def cmd_train_gan(args, file_config, creative: bool) -> int:
    dataset = _load_dataset(args.dataset)
    cfg = _gan_config(args, file_config, with_lambda=creative)
    out = _resolve_out(args.out, "creative" if creative else "cgan")
    out.mkdir(parents=True, exist_ok=True)
    train = train_creative_gan if creative else train_conditioned_gan
    checkpoints, history = train(dataset, cfg, out_dir=out)
    _write_resolved_config(out, "train-creative" if creative else "train-cgan",
                           {"dataset": args.dataset, **vars_of(cfg)})
    last = history[-1]
    line = f"trained {len(history)} epochs; final loss_d={last['loss_d']:.4f} loss_g={last['loss_g']:.4f}"
    if creative:
        selected = select_creative_checkpoint(checkpoints)
        line += f"; selected epoch {selected.epoch}"
    print(line + f" -> {out}")
    return 0


def _parse_genre(value: str, genre_names: list[str]) -> int:
    if value.isdigit():
        genre_id = int(value)
        if not 0 <= genre_id < len(genre_names):
            raise ConfigError(f"genre id {genre_id} outside 0..{len(genre_names) - 1}")
        return genre_id
    if value in genre_names:
        return genre_names.index(value)
    raise ConfigError(f"unknown genre {value!r}; have {genre_names}")


def cmd_generate(args, file_config) -> int:
    ckpt = load_checkpoint(args.checkpoint)
    if ckpt.variant == "classifier":
        raise ConfigError("cannot generate from a classifier checkpoint")
    n = _merge(args, file_config, "n", 500)
    seed = _merge(args, file_config, "seed", 0)
    models = build_models(ckpt)
    gen = models["generator"]
    z = sample_z(n, seed, dim=gen.latent_dim)
    genre_names = ckpt.config["genres"]
    if ckpt.variant == "conditioned":
        if args.genre is None:
            raise ConfigError("conditioned checkpoints need --genre")
        genre_id = _parse_genre(args.genre, genre_names)
        matrices = generate_batch(gen, z, np.full(n, genre_id, dtype=np.int64))
    else:
        if args.genre is not None:
            raise ConfigError("creative checkpoints take no --genre")
        matrices = generate_batch(gen, z)
    out = _resolve_out(args.out, "patterns.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    save_json(patterns_to_obj([OnsetMatrix(m) for m in matrices]), out)
    _write_resolved_config(out, "generate", {
        "checkpoint": args.checkpoint, "n": n, "seed": seed, "genre": args.genre,
    })
    print(f"generated {n} patterns -> {out}")
    return 0


def cmd_evaluate(args, file_config) -> int:
    ckpt = load_checkpoint(args.checkpoint)
    dataset = _load_dataset(args.dataset)
    n = _merge(args, file_config, "n", 500)
    seed = _merge(args, file_config, "seed", 0)
    cfg = _distance_config(args, file_config)
    report = evaluate_generator(ckpt, dataset, n=n, seed=seed, cfg=cfg)
    out = _resolve_out(args.out, "evaluation")
    write_report(report, out)
    _write_resolved_config(out, "evaluate", {
        "checkpoint": args.checkpoint, "dataset": args.dataset, "n": n, "seed": seed,
    })
    print(report.per_genre_distances.to_csv())
    print(f"report -> {out}")
    return 0


def cmd_export_midi(args, file_config) -> int:
    matrices = matrices_from_obj(load_json(args.patterns))
    tempo = _merge(args, file_config, "tempo", 120.0)
    out = _resolve_out(args.out, "midi")
    out.mkdir(parents=True, exist_ok=True)
    for i, matrix in enumerate(matrices):
        (out / f"pattern-{i:04d}.mid").write_bytes(export_midi(matrix, tempo_bpm=tempo))
    _write_resolved_config(out, "export-midi", {"patterns": args.patterns, "tempo": tempo})
    print(f"wrote {len(matrices)} MIDI files -> {out}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    checkpoints = {}
    for path in args.checkpoints:
        ckpt = load_checkpoint(path)
        model_id = Path(path).stem
        if model_id in checkpoints:
            model_id = f"{model_id}-{len(checkpoints)}"
        checkpoints[model_id] = ckpt
    app = create_app(checkpoints)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def vars_of(cfg) -> dict:
    from dataclasses import asdict

    return asdict(cfg)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
        file_config = _load_file_config(args)
        if args.command == "ingest":
            return cmd_ingest(args)
        if args.command == "synth":
            return cmd_synth(args, file_config)
        if args.command == "stats":
            return cmd_stats(args)
        if args.command == "distances":
            return cmd_distances(args, file_config)
        if args.command == "train-classifier":
            return cmd_train_classifier(args, file_config)
        if args.command == "train-cgan":
            return cmd_train_gan(args, file_config, creative=False)
        if args.command == "train-creative":
            return cmd_train_gan(args, file_config, creative=True)
        if args.command == "generate":
            return cmd_generate(args, file_config)
        if args.command == "evaluate":
            return cmd_evaluate(args, file_config)
        if args.command == "export-midi":
            return cmd_export_midi(args, file_config)
        if args.command == "serve":
            return cmd_serve(args)
        parser.print_usage(sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except GrooveganError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
