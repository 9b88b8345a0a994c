import json

import numpy as np
import pytest

from groovegan.core import GenreLabel, OnsetMatrix, RhythmDataset, RhythmPattern
from groovegan.distance import (
    BASELINE_VELOCITY,
    DistanceConfig,
    DistanceMatrixReport,
    averaged_onset_matrix,
    baseline_random_patterns,
    genre_distance_matrix,
    intra_set_mean,
    set_to_dataset_distances,
)
from groovegan.core import InstrumentStats


def _pattern(grid, genre, segment=0):
    return RhythmPattern(OnsetMatrix(grid), genre, "synthetic", segment)


def _mini_dataset():
    g = [GenreLabel(0, "a"), GenreLabel(1, "b")]
    base = np.zeros((9, 32))
    base[0, [0, 8, 16, 24]] = 0.9
    shifted = np.zeros((9, 32))
    shifted[0, [2, 10, 18, 26]] = 0.9
    other = np.zeros((9, 32))
    other[1, [4, 12, 20, 28]] = 0.9
    patterns = [
        _pattern(base, g[0], 0),
        _pattern(shifted, g[0], 1),
        _pattern(other, g[1], 0),
        _pattern(other, g[1], 1),
    ]
    return RhythmDataset(patterns=patterns, genres=g)


def test_duplicate_genre_diagonal_zero():
    ds = _mini_dataset()
    report = genre_distance_matrix(ds)
    assert report.means[1][1] == 0.0  # genre b duplicates one pattern
    assert report.means[0][0] == 8.0  # four onsets shifted by 2 each


def test_matrix_symmetric():
    ds = _mini_dataset()
    report = genre_distance_matrix(ds)
    assert report.means[0][1] == report.means[1][0]
    assert report.counts[0][1] == report.counts[1][0] == 4


def test_matrix_permutation_invariant():
    ds = _mini_dataset()
    reversed_ds = RhythmDataset(patterns=list(reversed(ds.patterns)), genres=ds.genres)
    r1 = genre_distance_matrix(ds)
    r2 = genre_distance_matrix(reversed_ds)
    assert r1.means == r2.means


def test_single_pattern_genre_diagonal_missing():
    g = [GenreLabel(0, "solo"), GenreLabel(1, "pair")]
    grid = np.zeros((9, 32))
    grid[0, 0] = 1.0
    patterns = [_pattern(grid, g[0]), _pattern(grid, g[1], 0), _pattern(grid, g[1], 1)]
    report = genre_distance_matrix(RhythmDataset(patterns=patterns, genres=g))
    assert report.means[0][0] is None
    assert report.counts[0][0] == 0
    assert report.means[1][1] == 0.0


def test_subsampling_cap_respected():
    ds = _mini_dataset()
    cfg = DistanceConfig(pair_sample_cap=2)
    report = genre_distance_matrix(ds, cfg)
    assert report.counts[0][1] == 2


def test_set_to_dataset_reduction(small_corpus):
    genre = small_corpus.genres[0]
    members = [p.matrix for p in small_corpus.by_genre(genre.id)]
    report = set_to_dataset_distances(members, small_corpus)
    full = genre_distance_matrix(small_corpus)
    # intra mean of the set equals the genre's diagonal cell
    assert report.intra == pytest.approx(full.means[genre.id][genre.id])


def test_set_to_dataset_single_pattern_intra_missing(small_corpus):
    report = set_to_dataset_distances([small_corpus.patterns[0].matrix], small_corpus)
    assert report.intra is None
    assert all(c > 0 for c in report.counts[0])


def test_report_json_csv_roundtrip():
    report = DistanceMatrixReport(
        labels=["a", "b"],
        means=[[1.0, 2.0], [2.0, None]],
        counts=[[3, 4], [4, 0]],
        intra=1.5,
        row_labels=None,
    )
    obj = json.loads(json.dumps(report.to_obj()))
    back = DistanceMatrixReport.from_obj(obj)
    assert back.means == report.means
    assert back.intra == 1.5
    csv = report.to_csv()
    assert csv.splitlines()[0] == ",a,b"
    assert csv.splitlines()[2].endswith(",")  # missing cell stays empty


def test_baseline_zero_stats_all_zero():
    stats = InstrumentStats(mean=np.zeros(9), std=np.zeros(9), total=np.zeros(9, dtype=np.int64))
    mats = baseline_random_patterns(stats, 5, seed=1)
    assert all(m.values.sum() == 0 for m in mats)


def test_baseline_degenerate_normal_exact_count():
    stats = InstrumentStats(
        mean=np.array([8.0] + [0.0] * 8), std=np.zeros(9), total=np.zeros(9, dtype=np.int64)
    )
    for m in baseline_random_patterns(stats, 10, seed=2):
        assert (m.values[0] > 0).sum() == 8
        assert m.values[0].max() == BASELINE_VELOCITY
        assert m.values[1:].sum() == 0


def test_baseline_deterministic(small_corpus):
    a = baseline_random_patterns(small_corpus.stats, 4, seed=9)
    b = baseline_random_patterns(small_corpus.stats, 4, seed=9)
    for ma, mb in zip(a, b):
        np.testing.assert_array_equal(ma.values, mb.values)


def test_baseline_matches_stats_in_expectation(small_corpus):
    mats = baseline_random_patterns(small_corpus.stats, 500, seed=3)
    counts = np.stack([(m.values > 0).sum(axis=1) for m in mats]).mean(axis=0)
    for row in range(9):
        target = small_corpus.stats.mean[row]
        if target >= 1.0:
            assert abs(counts[row] - target) <= 0.1 * target + 3 * small_corpus.stats.std[row] / np.sqrt(500)


def test_averaged_onset_matrix():
    grid = np.zeros((9, 32))
    grid[2, 5] = 0.8
    m = OnsetMatrix(grid)
    np.testing.assert_array_equal(averaged_onset_matrix([m]), grid)
    z = OnsetMatrix(np.zeros((9, 32)))
    avg = averaged_onset_matrix([m, z])
    assert avg[2, 5] == pytest.approx(0.4)


def test_averaged_house_kick_columns(small_corpus):
    house = [p.matrix for p in small_corpus.patterns if p.genre.name == "house"]
    avg = averaged_onset_matrix(house)
    kick = avg[0]
    on = kick[[0, 4, 8, 12, 16, 20, 24, 28]].mean()
    off = np.delete(kick, [0, 4, 8, 12, 16, 20, 24, 28]).mean()
    assert on > 10 * max(off, 1e-9)


def test_synth_genres_separate(small_corpus):
    report = genre_distance_matrix(small_corpus)
    k = small_corpus.n_genres
    for g in range(k):
        for h in range(k):
            if g != h:
                assert report.means[g][h] > report.means[g][g]
                assert report.means[g][h] > report.means[h][h]
