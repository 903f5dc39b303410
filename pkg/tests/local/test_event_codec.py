import pytest

from quaver.const import SILENCE
from quaver.event_codec import *
from quaver.exceptions import (
    QuaverCapacityException,
    QuaverUnknownCodeException,
    QuaverUnknownSymbolException,
)
from quaver.midi_io import NoteEvent
from tests import *

pytestmark = pytest.mark.local


@pytest.fixture
def tables():
    return build_tables(MISSION_EVENTS)


def test_build_tables(tables: EventTables):
    assert tables.pitches.entries == MISSION_PITCHES
    assert tables.durations.entries == MISSION_DURATIONS


def test_build_tables__silence_takes_code_zero(tables: EventTables):
    assert tables.pitches.code_for(SILENCE) == 0
    assert tables.pitches[0] == SILENCE


def test_build_tables__without_silence():
    tables = build_tables([NoteEvent(64, 10), NoteEvent(62, 20)])
    assert tables.pitches.entries == (62, 64)
    assert SILENCE not in tables.pitches


def test_build_tables__pitch_capacity():
    events = [NoteEvent(pitch, 480) for pitch in range(32)]
    assert len(build_tables(events).pitches) == 32
    events.append(NoteEvent(SILENCE, 480))
    with pytest.raises(QuaverCapacityException):
        build_tables(events)


def test_build_tables__duration_capacity():
    events = [NoteEvent(60, 10 * (i + 1)) for i in range(16)]
    assert len(build_tables(events).durations) == 16
    events.append(NoteEvent(60, 1000))
    with pytest.raises(QuaverCapacityException):
        build_tables(events)


def test_encode(tables: EventTables):
    actual = encode(MISSION_EVENTS, tables)
    assert actual == MISSION_RAW


def test_encode__code_layout(tables: EventTables):
    # pitch 62 has code 4 and 2880 ticks has code 3
    actual = encode([NoteEvent(62, 2880)], tables)
    assert actual == [4 << 4 | 3]
    assert f"{actual[0]:09b}" == "001000011"


@pytest.mark.parametrize(
    "event",
    (NoteEvent(59, 480), NoteEvent(60, 481)),
    ids=("pitch", "duration"),
)
def test_encode__unknown_symbol(tables: EventTables, event: NoteEvent):
    with pytest.raises(QuaverUnknownSymbolException):
        encode([event], tables)


def test_build_lexicon():
    lexicon = build_lexicon(MISSION_RAW)
    assert lexicon.raw_codes == MISSION_LEXICON
    assert len(lexicon) == 8
    assert lexicon.k == 3


@pytest.mark.parametrize(
    "size,k",
    ((1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (256, 8)),
)
def test_lexicon__k(size: int, k: int):
    lexicon = Lexicon(tuple(range(size)))
    assert lexicon.k == k


def test_lexicon__unique_entries():
    with pytest.raises(ValueError):
        Lexicon((1, 2, 1))


def test_compress():
    lexicon = build_lexicon(MISSION_RAW)
    actual = [compress(raw, lexicon) for raw in MISSION_RAW]
    assert actual == MISSION_COMPRESSED


def test_compress__unknown_code():
    lexicon = build_lexicon(MISSION_RAW)
    with pytest.raises(QuaverUnknownCodeException):
        compress(0b111111111, lexicon)


def test_decompress():
    lexicon = build_lexicon(MISSION_RAW)
    actual = [decompress(code, lexicon) for code in MISSION_COMPRESSED]
    assert actual == MISSION_RAW


@pytest.mark.parametrize("code", (8, 15, -1))
def test_decompress__unknown_code(code: int):
    lexicon = build_lexicon(MISSION_RAW)
    with pytest.raises(QuaverUnknownCodeException):
        decompress(code, lexicon)


def test_decode(tables: EventTables):
    actual = [decode(raw, tables) for raw in MISSION_RAW]
    assert actual == MISSION_EVENTS


@pytest.mark.parametrize(
    "raw", (7 << 4, 0b000000100), ids=("pitch", "duration")
)
def test_decode__unknown_code(tables: EventTables, raw: int):
    with pytest.raises(QuaverUnknownCodeException):
        decode(raw, tables)


def test_encode_corpus__shared_tables():
    first = MISSION_EVENTS[:3]
    second = [NoteEvent(72, 480), NoteEvent(70, 480)]
    tables, lexicon, sequences = encode_corpus([first, second])
    assert tables.pitches.entries == (62, 67, 70, 72)
    assert tables.durations.entries == (480, 2880)
    assert len(lexicon) == 4
    assert sequences == [[0, 1, 2], [3, 0]]


def test_describe(tables: EventTables):
    actual = describe(tables)
    assert actual["00000"] == "silence"
    assert actual["00110"] == "pitch 70"
    assert actual["0011"] == "2880 ticks"
