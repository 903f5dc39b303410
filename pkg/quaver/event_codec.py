"""
Maps note events onto 9-bit raw codes and relabels the distinct codes of a
tune with the shortest binary codes that can tell them apart.
"""

import dataclasses
from math import ceil, log2
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from quaver.const import DURATION_BITS, MAX_DURATIONS, MAX_PITCHES, SILENCE
from quaver.exceptions import (
    QuaverCapacityException,
    QuaverUnknownCodeException,
    QuaverUnknownSymbolException,
)
from quaver.midi_io import NoteEvent
from quaver.types import CompressedCode, RawCode

__all__ = [
    "DurationTable",
    "EventTables",
    "Lexicon",
    "PitchTable",
    "build_lexicon",
    "build_tables",
    "compress",
    "decode",
    "decompress",
    "describe",
    "encode",
    "encode_corpus",
]


@dataclasses.dataclass(frozen=True)
class _Table:
    entries: Tuple[int, ...]

    def __post_init__(self):
        index = {value: code for code, value in enumerate(self.entries)}
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, code: int) -> int:
        return self.entries[code]

    def __contains__(self, value: int) -> bool:
        return value in self._index

    def code_for(self, value: int) -> int:
        return self._index[value]


class PitchTable(_Table):
    """Pitch per 5-bit code; silence, when present, always takes code 0."""


class DurationTable(_Table):
    """Tick duration per 4-bit code, ascending."""


class EventTables(NamedTuple):
    pitches: PitchTable
    durations: DurationTable


@dataclasses.dataclass(frozen=True)
class Lexicon:
    """
    The distinct raw codes of a training set in order of first appearance. The
    compressed code of an entry is its position.
    """

    raw_codes: Tuple[RawCode, ...]

    def __post_init__(self):
        positions = {raw: i for i, raw in enumerate(self.raw_codes)}
        if len(positions) != len(self.raw_codes):
            raise ValueError("lexicon entries must be unique")
        object.__setattr__(self, "_positions", positions)

    def __len__(self) -> int:
        return len(self.raw_codes)

    def __contains__(self, raw: int) -> bool:
        return raw in self._positions

    @property
    def k(self) -> int:
        """The number of bits, and so qubits, needed per compressed code."""
        return ceil(log2(max(len(self.raw_codes), 2)))

    def compress(self, raw: RawCode) -> CompressedCode:
        try:
            return CompressedCode(self._positions[raw])
        except KeyError:
            raise QuaverUnknownCodeException(
                f"raw code {raw:09b} is not in the lexicon"
            )

    def decompress(self, code: CompressedCode) -> RawCode:
        if not 0 <= code < len(self.raw_codes):
            raise QuaverUnknownCodeException(
                f"code {code:0{self.k}b} is not in the lexicon"
            )
        return self.raw_codes[code]


def build_tables(events: Sequence[NoteEvent]) -> EventTables:
    """
    Builds the pitch and duration tables of a tune: silence first and then
    ascending pitches; ascending durations.
    """
    if not events:
        raise ValueError("cannot build tables without events")
    pitches = sorted({event.pitch for event in events})
    durations = sorted({event.duration for event in events})
    if len(pitches) > MAX_PITCHES:
        raise QuaverCapacityException(
            f"{len(pitches)} distinct pitches found, at most {MAX_PITCHES} "
            "(silence included) can be encoded"
        )
    if len(durations) > MAX_DURATIONS:
        raise QuaverCapacityException(
            f"{len(durations)} distinct durations found, at most "
            f"{MAX_DURATIONS} can be encoded"
        )
    return EventTables(
        PitchTable(tuple(pitches)), DurationTable(tuple(durations))
    )


def encode(events: Iterable[NoteEvent], tables: EventTables) -> List[RawCode]:
    codes = []
    for event in events:
        if event.pitch not in tables.pitches:
            raise QuaverUnknownSymbolException(
                f"pitch of {event} is not tabled"
            )
        if event.duration not in tables.durations:
            raise QuaverUnknownSymbolException(
                f"duration of {event} is not tabled"
            )
        pitch_code = tables.pitches.code_for(event.pitch)
        duration_code = tables.durations.code_for(event.duration)
        codes.append(RawCode(pitch_code << DURATION_BITS | duration_code))
    return codes


def encode_corpus(
    tunes: Sequence[Sequence[NoteEvent]],
) -> Tuple[EventTables, Lexicon, List[List[CompressedCode]]]:
    """
    Encodes several tunes against one shared set of tables and one lexicon,
    returning the compressed sequence of each tune.
    """
    tables = build_tables([event for tune in tunes for event in tune])
    raw_tunes = [encode(tune, tables) for tune in tunes]
    lexicon = build_lexicon([raw for tune in raw_tunes for raw in tune])
    sequences = [[lexicon.compress(raw) for raw in tune] for tune in raw_tunes]
    return tables, lexicon, sequences


def build_lexicon(raw: Sequence[RawCode]) -> Lexicon:
    if not raw:
        raise ValueError("cannot build a lexicon without codes")
    return Lexicon(tuple(dict.fromkeys(raw)))


def compress(raw: RawCode, lexicon: Lexicon) -> CompressedCode:
    return lexicon.compress(raw)


def decompress(code: CompressedCode, lexicon: Lexicon) -> RawCode:
    return lexicon.decompress(code)


def decode(raw: RawCode, tables: EventTables) -> NoteEvent:
    pitch_code = raw >> DURATION_BITS
    duration_code = raw & (2 ** DURATION_BITS - 1)
    if pitch_code >= len(tables.pitches):
        raise QuaverUnknownCodeException(f"no pitch for raw code {raw:09b}")
    if duration_code >= len(tables.durations):
        raise QuaverUnknownCodeException(f"no duration for raw code {raw:09b}")
    return NoteEvent(
        tables.pitches[pitch_code], tables.durations[duration_code]
    )


def describe(tables: EventTables) -> Dict[str, str]:
    """Lists the code assignments of both tables, e.g. for verbose output."""
    rows = {}
    for code, pitch in enumerate(tables.pitches.entries):
        label = "silence" if pitch == SILENCE else f"pitch {pitch}"
        rows[f"{code:05b}"] = label
    for code, duration in enumerate(tables.durations.entries):
        rows[f"{code:04b}"] = f"{duration} ticks"
    return rows
