from .config import DistanceConfig, PAIR_SAMPLE_SEED
from .edit import OnsetPositions, binarize, binarize_stack, pattern_distance, track_edit_distance
from .matrix import (
    DistanceMatrixReport,
    genre_distance_matrix,
    intra_set_mean,
    mean_set_distance,
    set_to_dataset_distances,
)
from .baseline import BASELINE_VELOCITY, averaged_onset_matrix, baseline_random_patterns

__all__ = [
    "BASELINE_VELOCITY",
    "DistanceConfig",
    "DistanceMatrixReport",
    "OnsetPositions",
    "PAIR_SAMPLE_SEED",
    "averaged_onset_matrix",
    "baseline_random_patterns",
    "binarize",
    "binarize_stack",
    "genre_distance_matrix",
    "intra_set_mean",
    "mean_set_distance",
    "pattern_distance",
    "set_to_dataset_distances",
    "track_edit_distance",
]
