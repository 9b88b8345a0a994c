import numpy as np
import pytest
from hypothesis import given, strategies as st

from groovegan.core import IngestConfig, ingest_dataset, ingest_midi_file, quantize_tick
from groovegan.core.smf import read_smf, write_smf
from groovegan.errors import IngestError, InvalidFileError
from helpers import EXPECTED_GROUP_TOTALS, GM_NOTE_CENSUS, build_census_corpus

PPQ = 480
STEP = PPQ // 4


def test_quantize_examples():
    assert quantize_tick(240, 480) == 2
    assert quantize_tick(130, 480) == 1  # round(1.083) = 1
    assert quantize_tick(3830, 480) == 0  # round(31.92) = 32 wraps


def test_quantize_ties_round_up():
    assert quantize_tick(60, 480) == 1  # exactly half a step up


def test_quantize_bad_ppq():
    with pytest.raises(InvalidFileError):
        quantize_tick(0, 0)


@given(st.integers(min_value=0, max_value=31))
def test_quantize_idempotent_on_grid(step):
    assert quantize_tick(step * STEP, PPQ) == step


def _file(notes, end_tick=None):
    return write_smf(PPQ, 120.0, notes, end_tick=end_tick)


def test_four_on_floor_two_bars():
    beats = [0, 4, 8, 12, 16, 20, 24, 28]
    notes = [(s * STEP, 36, 100, STEP) for s in beats]
    patterns = ingest_midi_file(_file(notes, end_tick=64 * STEP // 2))
    assert len(patterns) == 1
    kick = patterns[0].matrix.values[0]
    assert set(np.nonzero(kick)[0]) == set(beats)
    assert kick[0] == pytest.approx(100 / 127)


def test_four_bar_file_gives_two_segments():
    notes = [(s * STEP, 36, 100, STEP) for s in range(0, 64, 8)]
    patterns = ingest_midi_file(_file(notes, end_tick=64 * STEP))
    assert [p.segment for p in patterns] == [0, 1]


def test_rim_onset_count_preserved():
    notes = [(i * STEP, 37, 90, STEP) for i in range(3)]
    patterns = ingest_midi_file(_file(notes, end_tick=32 * STEP))
    total = sum((p.matrix.values[7] > 0).sum() for p in patterns)
    assert total == 3


def test_collision_keeps_louder_onset():
    notes = [(0, 44, 50, STEP), (0, 46, 90, STEP)]  # both map to OpenHihat
    patterns = ingest_midi_file(_file(notes, end_tick=32 * STEP))
    assert patterns[0].matrix.values[3, 0] == pytest.approx(90 / 127)


def test_trailing_bar_padded_short_remainder_dropped():
    # 3 bars of content -> one full segment plus a 1-bar remainder, kept
    notes = [(s * STEP, 36, 100, STEP) for s in (0, 16, 32, 40)]
    patterns = ingest_midi_file(_file(notes, end_tick=48 * STEP))
    assert len(patterns) == 2
    # half a bar of trailing content -> dropped
    notes = [(0, 36, 100, STEP), (39 * STEP, 36, 100, STEP)]
    patterns = ingest_midi_file(_file(notes, end_tick=40 * STEP))
    assert len(patterns) == 1
    assert (patterns[0].matrix.values > 0).sum() == 1


def test_non_44_meter_skipped():
    data = bytearray(_file([(0, 36, 100, STEP)], end_tick=32 * STEP))
    # patch the meter meta event (4, 2) -> (3, 2) for 3/4
    idx = data.find(bytes([0xFF, 0x58, 0x04, 4, 2]))
    assert idx > 0
    data[idx + 3] = 3
    assert ingest_midi_file(bytes(data)) == []


def test_zero_mapped_onsets_empty_list():
    notes = [(0, 75, 100, STEP)]  # claves: unmapped
    assert ingest_midi_file(_file(notes, end_tick=32 * STEP)) == []


def test_unparseable_file_raises():
    with pytest.raises(InvalidFileError):
        ingest_midi_file(b"not midi at all")


def test_smf_roundtrip_notes():
    notes = [(0, 36, 100, STEP), (7 * STEP, 42, 64, STEP)]
    parsed = read_smf(_file(notes))
    assert [(n.tick, n.note, n.velocity) for n in parsed.notes] == [
        (0, 36, 100),
        (7 * STEP, 42, 64),
    ]
    assert parsed.ppq == PPQ


def test_ingest_dataset_sorted_genres(tmp_path):
    for genre, note in (("techno", 36), ("house", 38)):
        d = tmp_path / genre
        d.mkdir()
        (d / "a.mid").write_bytes(_file([(0, note, 100, STEP)], end_tick=32 * STEP))
    ds = ingest_dataset(tmp_path)
    assert [(g.id, g.name) for g in ds.genres] == [(0, "house"), (1, "techno")]


def test_ingest_dataset_deterministic(tmp_path):
    for genre in ("a", "b"):
        d = tmp_path / genre
        d.mkdir()
        for i in range(3):
            (d / f"f{i}.mid").write_bytes(
                _file([(i * STEP, 36, 100 - i, STEP)], end_tick=32 * STEP)
            )
    ds1 = ingest_dataset(tmp_path)
    ds2 = ingest_dataset(tmp_path)
    assert len(ds1.patterns) == len(ds2.patterns)
    for p1, p2 in zip(ds1.patterns, ds2.patterns):
        assert p1.source == p2.source and p1.segment == p2.segment
        np.testing.assert_array_equal(p1.matrix.values, p2.matrix.values)


def test_ingest_dataset_errors(tmp_path):
    with pytest.raises(IngestError):
        ingest_dataset(tmp_path)
    empty = tmp_path / "emptygenre"
    empty.mkdir()
    with pytest.raises(IngestError, match="emptygenre"):
        ingest_dataset(tmp_path)


@pytest.mark.slow
def test_census_corpus_reproduces_group_totals(tmp_path):
    build_census_corpus(tmp_path)
    ds = ingest_dataset(tmp_path)
    from groovegan.core import INSTRUMENT_NAMES

    totals = {name: int(ds.stats.total[i]) for i, name in enumerate(INSTRUMENT_NAMES)}
    assert totals == EXPECTED_GROUP_TOTALS
    assert sum(totals.values()) == sum(GM_NOTE_CENSUS.values())
