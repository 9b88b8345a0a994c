import json

import numpy as np
import pytest

from groovegan.core import INSTRUMENT_NAMES, OnsetMatrix
from groovegan.core.codec import (
    dataset_from_obj,
    dataset_to_obj,
    matrices_from_obj,
    matrix_from_obj,
    matrix_to_obj,
    patterns_to_obj,
)
from groovegan.errors import ContractViolationError, VersionError


def test_matrix_roundtrip():
    rng = np.random.default_rng(0)
    m = OnsetMatrix(rng.random((9, 32)))
    obj = json.loads(json.dumps(matrix_to_obj(m)))
    assert obj["version"] == 1
    assert obj["shape"] == [9, 32]
    assert obj["instruments"] == INSTRUMENT_NAMES
    assert len(obj["data"]) == 288
    back = matrix_from_obj(obj)
    np.testing.assert_array_equal(back.values, m.values)


def test_matrix_version_gate():
    obj = matrix_to_obj(OnsetMatrix(np.zeros((9, 32))))
    obj["version"] = 2
    with pytest.raises(VersionError):
        matrix_from_obj(obj)


def test_matrix_bad_payloads():
    obj = matrix_to_obj(OnsetMatrix(np.zeros((9, 32))))
    short = dict(obj, data=obj["data"][:-1])
    with pytest.raises(ContractViolationError):
        matrix_from_obj(short)
    with pytest.raises(ContractViolationError):
        matrix_from_obj(dict(obj, shape=[9, 16]))


def test_dataset_roundtrip(small_corpus):
    obj = json.loads(json.dumps(dataset_to_obj(small_corpus)))
    back = dataset_from_obj(obj)
    assert [g.name for g in back.genres] == [g.name for g in small_corpus.genres]
    assert len(back.patterns) == len(small_corpus.patterns)
    for a, b in zip(back.patterns, small_corpus.patterns):
        np.testing.assert_array_equal(a.matrix.values, b.matrix.values)
        assert a.genre == b.genre and a.segment == b.segment
    np.testing.assert_array_equal(back.stats.total, small_corpus.stats.total)


def test_patterns_container():
    mats = [OnsetMatrix(np.zeros((9, 32))) for _ in range(3)]
    obj = patterns_to_obj(mats)
    assert len(matrices_from_obj(obj)) == 3
    obj["version"] = 9
    with pytest.raises(VersionError):
        matrices_from_obj(obj)
