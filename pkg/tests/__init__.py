import struct
from pathlib import Path
from typing import NamedTuple

from quaver.const import SILENCE, VOWELS
from quaver.midi_io import NoteEvent
from quaver.types import StartMode

__all__ = [
    "DEFAULT_SETTINGS",
    "JUNK_TEXT",
    "MISSION_COMPRESSED",
    "MISSION_DURATIONS",
    "MISSION_EVENTS",
    "MISSION_LEXICON",
    "MISSION_PITCHES",
    "MISSION_RAW",
    "MISSION_ROWS",
    "PPQN",
    "E2EResult",
    "smf",
    "track",
]

DEFAULT_SETTINGS = {
    "attack_ms": 10.0,
    "command": None,
    "config_dump": False,
    "config_ignore": False,
    "config_path": None,
    "duration_scale": 1.0,
    "inputs": [],
    "max_retries": 100,
    "noise_mix": 0.05,
    "noise_p": 0.0,
    "no_style": False,
    "order": 1,
    "out_dir": Path("."),
    "plot": False,
    "release_ms": 40.0,
    "rounds": 50,
    "sample_rate": 44100,
    "seed": 0,
    "shots": 1,
    "start": StartMode.RANDOM,
    "start_codes": [],
    "tempo": 120.0,
    "tolerate": False,
    "verbose": False,
    "version": False,
    "vibrato_depth": 15.0,
    "vibrato_rate": 5.5,
    "vowel": "a",
    "vowels": VOWELS,
}

JUNK_TEXT = "blablablabla"

PPQN = 960

# opening of the Mission: Impossible theme, ending in a rest
MISSION_EVENTS = [
    NoteEvent(70, 480),
    NoteEvent(67, 480),
    NoteEvent(62, 2880),
    NoteEvent(70, 480),
    NoteEvent(67, 480),
    NoteEvent(61, 2880),
    NoteEvent(70, 480),
    NoteEvent(67, 480),
    NoteEvent(60, 2880),
    NoteEvent(58, 480),
    NoteEvent(60, 960),
    NoteEvent(SILENCE, 2400),
]

MISSION_PITCHES = (SILENCE, 58, 60, 61, 62, 67, 70)

MISSION_DURATIONS = (480, 960, 2400, 2880)

MISSION_RAW = [
    0b001100000,
    0b001010000,
    0b001000011,
    0b001100000,
    0b001010000,
    0b000110011,
    0b001100000,
    0b001010000,
    0b000100011,
    0b000010000,
    0b000100001,
    0b000000010,
]

MISSION_LEXICON = (
    0b001100000,
    0b001010000,
    0b001000011,
    0b000110011,
    0b000100011,
    0b000010000,
    0b000100001,
    0b000000010,
)

MISSION_COMPRESSED = [0, 1, 2, 0, 1, 3, 0, 1, 4, 5, 6, 7]

# order 1 successor counts; 0b111 only ends the tune so it has no row
MISSION_ROWS = {
    (0,): {1: 3},
    (1,): {2: 1, 3: 1, 4: 1},
    (2,): {0: 1},
    (3,): {0: 1},
    (4,): {5: 1},
    (5,): {6: 1},
    (6,): {7: 1},
}


class E2EResult(NamedTuple):
    code: int
    out: str


def track(*events: bytes) -> bytes:
    """Wraps raw track events in an MTrk chunk."""
    body = b"".join(events)
    return b"MTrk" + struct.pack(">I", len(body)) + body


def smf(*tracks: bytes, fmt: int = 0, division: int = PPQN) -> bytes:
    """Builds Standard MIDI File bytes from MTrk chunks."""
    header = struct.pack(">4sIHHH", b"MThd", 6, fmt, len(tracks), division)
    return header + b"".join(tracks)
