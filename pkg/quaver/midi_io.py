"""Reads Standard MIDI Files into monophonic event lists and back."""

import dataclasses
from io import BytesIO
from typing import Dict, List, Optional, Tuple

import mido

from quaver.const import DEFAULT_BPM, JITTER_DIVISOR, SILENCE
from quaver.exceptions import (
    QuaverConfigException,
    QuaverMalformedFileException,
    QuaverPolyphonyException,
    QuaverUnsupportedFormatException,
)

__all__ = [
    "MidiNote",
    "MidiSequence",
    "NoteEvent",
    "extract_monophonic",
    "parse_smf",
    "write_smf",
]

_VELOCITY = 64

# mido reports malformed input through these
_READ_ERRORS = (
    EOFError,
    IndexError,
    KeyError,
    OSError,
    TypeError,
    ValueError,
    mido.KeySignatureError,
)


@dataclasses.dataclass(frozen=True)
class MidiNote:
    pitch: int
    start: int
    duration: int

    @property
    def end(self) -> int:
        return self.start + self.duration


@dataclasses.dataclass(frozen=True)
class MidiSequence:
    """The notes of a single track in absolute ticks."""

    ppqn: int
    notes: Tuple[MidiNote, ...] = ()
    end: Optional[int] = None

    def __post_init__(self):
        ordered = tuple(sorted(self.notes, key=lambda n: (n.start, n.pitch)))
        object.__setattr__(self, "notes", ordered)


@dataclasses.dataclass(frozen=True)
class NoteEvent:
    """A note or rest; a pitch of SILENCE marks a rest."""

    pitch: int
    duration: int

    @property
    def is_silence(self) -> bool:
        return self.pitch == SILENCE

    def __str__(self) -> str:
        label = "rest" if self.is_silence else str(self.pitch)
        return f"{label}/{self.duration}"


def _track_notes(track: mido.MidiTrack) -> Tuple[List[MidiNote], int]:
    notes = []
    sounding: Dict[Tuple[int, int], List[int]] = {}
    tick = 0
    for message in track:
        tick += message.time
        if message.type == "note_on" and message.velocity > 0:
            key = (message.channel, message.note)
            sounding.setdefault(key, []).append(tick)
        elif message.type in ("note_on", "note_off"):
            starts = sounding.get((message.channel, message.note))
            if not starts:
                continue
            start = starts.pop(0)
            notes.append(MidiNote(message.note, start, tick - start))
    # notes left hanging are cut at the end of the track
    for (_channel, pitch), starts in sounding.items():
        for start in starts:
            notes.append(MidiNote(pitch, start, tick - start))
    return [note for note in notes if note.duration > 0], tick


def parse_smf(data: bytes) -> MidiSequence:
    """
    Parses SMF format 0 or 1 bytes, returning the notes of the first track
    that has any.
    """
    try:
        midi = mido.MidiFile(file=BytesIO(data))
    except _READ_ERRORS as e:
        raise QuaverMalformedFileException(f"malformed MIDI file: {e}")
    if midi.type == 2:
        raise QuaverUnsupportedFormatException("SMF format 2 is not supported")
    if midi.ticks_per_beat & 0x8000:
        raise QuaverUnsupportedFormatException(
            "SMPTE time division is not supported"
        )
    if midi.ticks_per_beat <= 0:
        raise QuaverMalformedFileException("time division must be positive")
    for track in midi.tracks:
        notes, end = _track_notes(track)
        if notes:
            return MidiSequence(midi.ticks_per_beat, tuple(notes), end)
    return MidiSequence(midi.ticks_per_beat)


def extract_monophonic(
    seq: MidiSequence, keep_edges: bool = True
) -> List[NoteEvent]:
    """
    Converts a note sequence into consecutive note and rest events.

    Gaps shorter than 1/32 of a quarter note are merged into the preceding
    note. With keep_edges, a late first note and a delayed end of track also
    become rests so the sequence spans the whole track.
    """
    if not seq.notes:
        return []
    jitter = seq.ppqn / JITTER_DIVISOR
    events: List[NoteEvent] = []
    first = seq.notes[0]
    if keep_edges and first.start >= jitter:
        events.append(NoteEvent(SILENCE, first.start))
    cursor = first.start
    for note in seq.notes:
        gap = note.start - cursor
        if gap < 0:
            raise QuaverPolyphonyException(
                f"note {note.pitch} at tick {note.start} overlaps the previous "
                f"note, which ends at tick {cursor}"
            )
        if gap and gap < jitter and events and not events[-1].is_silence:
            events[-1] = NoteEvent(events[-1].pitch, events[-1].duration + gap)
        elif gap:
            events.append(NoteEvent(SILENCE, gap))
        events.append(NoteEvent(note.pitch, note.duration))
        cursor = note.end
    if keep_edges and seq.end is not None and seq.end > cursor:
        tail = seq.end - cursor
        if tail < jitter:
            events[-1] = NoteEvent(events[-1].pitch, events[-1].duration + tail)
        else:
            events.append(NoteEvent(SILENCE, tail))
    return events


def write_smf(
    events: List[NoteEvent], ppqn: int, bpm: float = DEFAULT_BPM
) -> bytes:
    """Writes events as an SMF format 0 file; rests become time gaps."""
    if ppqn <= 0:
        raise QuaverConfigException("ppqn must be positive")
    midi = mido.MidiFile(type=0, ticks_per_beat=ppqn)
    track = mido.MidiTrack()
    midi.tracks.append(track)
    track.append(mido.MetaMessage("set_tempo", tempo=mido.bpm2tempo(bpm)))
    delay = 0
    for event in events:
        if event.is_silence:
            delay += event.duration
            continue
        track.append(
            mido.Message(
                "note_on", note=event.pitch, velocity=_VELOCITY, time=delay
            )
        )
        track.append(
            mido.Message(
                "note_off", note=event.pitch, velocity=0, time=event.duration
            )
        )
        delay = 0
    track.append(mido.MetaMessage("end_of_track", time=delay))
    buffer = BytesIO()
    midi.save(file=buffer)
    return buffer.getvalue()
