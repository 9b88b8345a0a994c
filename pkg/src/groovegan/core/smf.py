"""Minimal Standard MIDI File reader/writer.

Reads SMF type 0/1 just deeply enough for drum-pattern ingestion: note-on
events, time signatures and the file's tick extent. Writes single-track
type 0 files for pattern export. Anything structurally broken raises
InvalidFileError.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvalidFileError


@dataclass
class NoteOn:
    tick: int
    channel: int
    note: int
    velocity: int


@dataclass
class ParsedMidi:
    ppq: int
    notes: list[NoteOn] = field(default_factory=list)
    time_signatures: list[tuple[int, int, int]] = field(default_factory=list)  # (tick, num, den)
    max_tick: int = 0


class _Cursor:
    """Byte cursor with the integer readers the SMF grammar needs."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def remaining(self) -> int:
        return len(self.data) - self.pos

    def take(self, n: int) -> bytes:
        if self.remaining() < n:
            raise InvalidFileError("truncated MIDI data")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        b = self.take(2)
        return (b[0] << 8) | b[1]

    def u32(self) -> int:
        b = self.take(4)
        return (b[0] << 24) | (b[1] << 16) | (b[2] << 8) | b[3]

    def vlq(self) -> int:
        value = 0
        for _ in range(4):
            byte = self.u8()
            value = (value << 7) | (byte & 0x7F)
            if not byte & 0x80:
                return value
        raise InvalidFileError("variable-length quantity longer than 4 bytes")


def read_smf(data: bytes) -> ParsedMidi:
    cur = _Cursor(data)
    if cur.take(4) != b"MThd":
        raise InvalidFileError("missing MThd header")
    if cur.u32() != 6:
        raise InvalidFileError("unexpected MThd length")
    fmt = cur.u16()
    if fmt not in (0, 1):
        raise InvalidFileError(f"unsupported SMF format {fmt}")
    n_tracks = cur.u16()
    division = cur.u16()
    if division & 0x8000:
        raise InvalidFileError("SMPTE time division is not supported")
    if division == 0:
        raise InvalidFileError("pulses per quarter note must be positive")
    parsed = ParsedMidi(ppq=division)

    for _ in range(n_tracks):
        if cur.take(4) != b"MTrk":
            raise InvalidFileError("missing MTrk chunk")
        length = cur.u32()
        track = _Cursor(cur.take(length))
        _read_track(track, parsed)
    return parsed


def _read_track(cur: _Cursor, parsed: ParsedMidi) -> None:
    tick = 0
    status = 0
    while cur.remaining() > 0:
        tick += cur.vlq()
        parsed.max_tick = max(parsed.max_tick, tick)
        byte = cur.u8()
        if byte == 0xFF:  # meta
            meta_type = cur.u8()
            length = cur.vlq()
            payload = cur.take(length)
            if meta_type == 0x58 and length >= 2:
                parsed.time_signatures.append((tick, payload[0], 1 << payload[1]))
            if meta_type == 0x2F:  # end of track
                return
            continue
        if byte in (0xF0, 0xF7):  # sysex
            cur.take(cur.vlq())
            continue
        if byte & 0x80:
            status = byte
            data1 = cur.u8()
        else:  # running status
            if status == 0:
                raise InvalidFileError("data byte without running status")
            data1 = byte
        kind = status & 0xF0
        if kind in (0x80, 0x90, 0xA0, 0xB0, 0xE0):
            data2 = cur.u8()
            if kind == 0x90 and data2 > 0:
                parsed.notes.append(NoteOn(tick, status & 0x0F, data1, data2))
        elif kind in (0xC0, 0xD0):
            pass  # single data byte, already consumed
        else:
            raise InvalidFileError(f"unexpected status byte 0x{status:02x}")


def _vlq_bytes(value: int) -> bytes:
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(out))


def write_smf(
    ppq: int,
    tempo_bpm: float,
    notes: list[tuple[int, int, int, int]],
    end_tick: int | None = None,
    channel: int = 9,
) -> bytes:
    """Write a type-0 file from (tick, note, velocity, duration) tuples.

    ``end_tick`` places the end-of-track marker, which downstream slicing
    treats as the file's extent; it defaults to the last note-off.
    """
    if ppq <= 0:
        raise InvalidFileError("pulses per quarter note must be positive")
    events: list[tuple[int, int, bytes]] = []  # (tick, sort order, payload)
    tempo = round(60_000_000 / tempo_bpm)
    events.append((0, 0, bytes([0xFF, 0x51, 0x03]) + tempo.to_bytes(3, "big")))
    events.append((0, 0, bytes([0xFF, 0x58, 0x04, 4, 2, 24, 8])))  # 4/4
    last_off = 0
    for tick, note, velocity, duration in notes:
        events.append((tick, 1, bytes([0x90 | channel, note, velocity])))
        events.append((tick + duration, 1, bytes([0x80 | channel, note, 0])))
        last_off = max(last_off, tick + duration)
    eot = last_off if end_tick is None else max(end_tick, last_off)
    events.append((eot, 2, bytes([0xFF, 0x2F, 0x00])))

    events.sort(key=lambda e: (e[0], e[1]))
    body = bytearray()
    prev = 0
    for tick, _, payload in events:
        body += _vlq_bytes(tick - prev)
        body += payload
        prev = tick
    header = b"MThd" + (6).to_bytes(4, "big") + (0).to_bytes(2, "big")
    header += (1).to_bytes(2, "big") + ppq.to_bytes(2, "big")
    return header + b"MTrk" + len(body).to_bytes(4, "big") + bytes(body)
