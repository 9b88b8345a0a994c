"""Average-distance reports: genre-vs-genre matrices and set-vs-dataset rows."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..core.types import OnsetMatrix, RhythmDataset
from ..errors import ContractViolationError
from .config import PAIR_SAMPLE_SEED, DistanceConfig
from .edit import binarize_stack


@dataclass(frozen=True)
class DistanceMatrixReport:
    """Mean pairwise distances between sets of patterns.

    ``means`` is square (genres x genres) or rectangular (rows x genres);
    cells that cannot be computed (a genre with fewer than two patterns has
    no diagonal) are None with a count of 0. ``intra`` carries the mean
    pairwise distance within the compared set, when one was computed.
    """

    labels: list[str]
    means: list[list[float | None]]
    counts: list[list[int]]
    intra: float | None = None
    row_labels: list[str] | None = None

    def to_obj(self) -> dict:
        obj = {
            "labels": list(self.labels),
            "means": [[None if m is None else float(m) for m in row] for row in self.means],
            "counts": [[int(c) for c in row] for row in self.counts],
            "intra": None if self.intra is None else float(self.intra),
        }
        if self.row_labels is not None:
            obj["row_labels"] = list(self.row_labels)
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> "DistanceMatrixReport":
        return cls(
            labels=list(obj["labels"]),
            means=[list(row) for row in obj["means"]],
            counts=[list(row) for row in obj["counts"]],
            intra=obj.get("intra"),
            row_labels=list(obj["row_labels"]) if obj.get("row_labels") else None,
        )

    def to_csv(self) -> str:
        rows = self.row_labels if self.row_labels is not None else self.labels
        out = io.StringIO()
        out.write("," + ",".join(self.labels) + "\n")
        for name, row in zip(rows, self.means):
            cells = ["" if m is None else f"{m:.6f}" for m in row]
            out.write(name + "," + ",".join(cells) + "\n")
        return out.getvalue()


def _subsample(pairs: np.ndarray, cap: int) -> np.ndarray:
    if len(pairs) <= cap:
        return pairs
    rng = np.random.default_rng(PAIR_SAMPLE_SEED)
    idx = rng.choice(len(pairs), size=cap, replace=False)
    idx.sort()
    return pairs[idx]


def _cross_pairs(n_a: int, n_b: int) -> np.ndarray:
    ii, jj = np.meshgrid(np.arange(n_a, dtype=np.int64), np.arange(n_b, dtype=np.int64), indexing="ij")
    return np.stack([ii.reshape(-1), jj.reshape(-1)], axis=1)


def _distinct_pairs(n: int) -> np.ndarray:
    ii, jj = np.triu_indices(n, k=1)
    return np.stack([ii.astype(np.int64), jj.astype(np.int64)], axis=1)


def _mean_distance(packed_a, packed_b, pairs: np.ndarray, cfg: DistanceConfig) -> tuple[float | None, int]:
    pairs = _subsample(pairs, cfg.pair_sample_cap)
    if len(pairs) == 0:
        return None, 0
    pos_a, len_a = packed_a
    pos_b, len_b = packed_b
    dists = _kernels.pair_distances(pos_a, len_a, pos_b, len_b, pairs, cfg.indel_cost)
    return float(np.mean(dists)), int(len(pairs))


def mean_set_distance(
    matrices_a: np.ndarray, matrices_b: np.ndarray, cfg: DistanceConfig | None = None
) -> tuple[float | None, int]:
    """Mean pattern distance over all cross pairs of two stacks of matrices."""
    cfg = cfg or DistanceConfig()
    packed_a = _kernels.pack_positions(binarize_stack(matrices_a, cfg.onset_threshold))
    packed_b = _kernels.pack_positions(binarize_stack(matrices_b, cfg.onset_threshold))
    return _mean_distance(packed_a, packed_b, _cross_pairs(len(matrices_a), len(matrices_b)), cfg)


def intra_set_mean(matrices: np.ndarray, cfg: DistanceConfig | None = None) -> tuple[float | None, int]:
    """Mean distance over unordered distinct pairs within one stack."""
    cfg = cfg or DistanceConfig()
    packed = _kernels.pack_positions(binarize_stack(matrices, cfg.onset_threshold))
    return _mean_distance(packed, packed, _distinct_pairs(len(matrices)), cfg)


def genre_distance_matrix(dataset: RhythmDataset, cfg: DistanceConfig | None = None) -> DistanceMatrixReport:
    """Square matrix of mean distances between (and within) genres.

    Diagonal cells average over unordered distinct pairs; a genre with fewer
    than two patterns gets a missing diagonal cell rather than a zero.
    """
    cfg = cfg or DistanceConfig()
    if dataset.n_genres < 1:
        raise ContractViolationError("dataset has no genres")
    groups = []
    for g in dataset.genres:
        members = dataset.by_genre(g.id)
        if not members:
            raise ContractViolationError(f"genre {g.name!r} has no patterns")
        stack = np.stack([p.matrix.values for p in members])
        groups.append(_kernels.pack_positions(binarize_stack(stack, cfg.onset_threshold)))

    k = dataset.n_genres
    means: list[list[float | None]] = [[None] * k for _ in range(k)]
    counts = [[0] * k for _ in range(k)]
    for g in range(k):
        n_g = groups[g][1].shape[0]
        mean, count = _mean_distance(groups[g], groups[g], _distinct_pairs(n_g), cfg)
        means[g][g], counts[g][g] = mean, count
        for h in range(g + 1, k):
            n_h = groups[h][1].shape[0]
            mean, count = _mean_distance(groups[g], groups[h], _cross_pairs(n_g, n_h), cfg)
            means[g][h] = means[h][g] = mean
            counts[g][h] = counts[h][g] = count
    return DistanceMatrixReport(
        labels=[g.name for g in dataset.genres], means=means, counts=counts
    )


def set_to_dataset_distances(
    patterns: list[OnsetMatrix] | np.ndarray,
    dataset: RhythmDataset,
    cfg: DistanceConfig | None = None,
    set_label: str = "generated",
) -> DistanceMatrixReport:
    """One row of mean distances from a pattern set to each genre, plus the
    set's own intra mean (missing when the set has fewer than two patterns)."""
    cfg = cfg or DistanceConfig()
    if isinstance(patterns, np.ndarray):
        stack = patterns
    else:
        if not patterns:
            raise ContractViolationError("pattern set is empty")
        stack = np.stack([m.values for m in patterns])
    packed_set = _kernels.pack_positions(binarize_stack(stack, cfg.onset_threshold))

    means_row: list[float | None] = []
    counts_row: list[int] = []
    for g in dataset.genres:
        members = dataset.by_genre(g.id)
        genre_stack = np.stack([p.matrix.values for p in members])
        packed_genre = _kernels.pack_positions(binarize_stack(genre_stack, cfg.onset_threshold))
        mean, count = _mean_distance(
            packed_set, packed_genre, _cross_pairs(len(stack), len(genre_stack)), cfg
        )
        means_row.append(mean)
        counts_row.append(count)
    intra, _ = _mean_distance(packed_set, packed_set, _distinct_pairs(len(stack)), cfg)
    return DistanceMatrixReport(
        labels=[g.name for g in dataset.genres],
        means=[means_row],
        counts=[counts_row],
        intra=intra,
        row_labels=[set_label],
    )
