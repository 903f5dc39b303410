"""
The learn, generate and sing stages over files, and the run stage chaining
them. Each stage reads its inputs from disk and writes into an output
directory.
"""

import dataclasses
from contextlib import contextmanager
from io import BytesIO
from pathlib import Path
from typing import Iterator, List, Optional, Sequence

import matplotlib
from matplotlib.figure import Figure

from quaver.const import DEFAULT_BPM
from quaver.event_codec import decode, encode_corpus
from quaver.exceptions import (
    QuaverException,
    QuaverSequenceTooShortException,
    QuaverUnsupportedFormatException,
)
from quaver.midi_io import NoteEvent, extract_monophonic, parse_smf, write_smf
from quaver.rule_model import (
    RuleBook,
    deserialize,
    extract_rules_corpus,
    serialize,
)
from quaver.tunegen import (
    GenConfig,
    GenerationStats,
    generate_from_book,
    stats_csv,
)
from quaver.voice_synth import SynthParams, render, write_wav

__all__ = [
    "GenerateResult",
    "LearnResult",
    "RULES_FILENAME",
    "RunResult",
    "STATS_FILENAME",
    "SVG_FILENAME",
    "SingResult",
    "TUNE_FILENAME",
    "WAV_FILENAME",
    "cmd_generate",
    "cmd_learn",
    "cmd_run",
    "cmd_sing",
]

RULES_FILENAME = "rules.json"
TUNE_FILENAME = "tune.mid"
STATS_FILENAME = "stats.csv"
SVG_FILENAME = "stats.svg"
WAV_FILENAME = "tune.wav"


@dataclasses.dataclass(frozen=True)
class LearnResult:
    book: RuleBook
    events: int
    path: Path


@dataclasses.dataclass(frozen=True)
class GenerateResult:
    events: List[NoteEvent]
    stats: GenerationStats
    k: int
    midi_path: Path
    stats_path: Path
    svg_path: Optional[Path] = None


@dataclasses.dataclass(frozen=True)
class SingResult:
    events: List[NoteEvent]
    samples: int
    sample_rate: int
    path: Path

    @property
    def seconds(self) -> float:
        return self.samples / self.sample_rate


@dataclasses.dataclass(frozen=True)
class RunResult:
    learned: LearnResult
    generated: GenerateResult
    sung: SingResult


@contextmanager
def _stage(name: str, path: Optional[Path] = None) -> Iterator[None]:
    """Prefixes the message of any package error with the stage and file."""
    prefix = f"{name}: {path}: " if path else f"{name}: "
    try:
        yield
    except QuaverException as e:
        if not str(e).startswith(f"{name}: "):
            e.args = (prefix + str(e), *e.args[1:])
        raise


def _read(path: Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise QuaverException(f"can't read file ({e.strerror})")


def _write(directory: Path, filename: str, data: bytes) -> Path:
    path = Path(directory, filename)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        raise QuaverException(f"can't write {path} ({e.strerror})")
    return path


def _plot(stats: GenerationStats) -> bytes:
    figure = Figure(figsize=(4, 3))
    axes = figure.subplots()
    labels = ["good", "skipped", "noisy"]
    axes.bar(labels, [stats.good, stats.skipped, stats.noisy], color="grey")
    axes.set_ylabel("rounds")
    figure.tight_layout()
    buffer = BytesIO()
    with matplotlib.rc_context({"svg.hashsalt": "quaver"}):
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def cmd_learn(paths: Sequence[Path], n: int, out_dir: Path) -> LearnResult:
    """
    Learns rules of orders 1 to n from one or more monophonic MIDI files and
    writes them as a rules file.
    """
    tunes = []
    ppqn = None
    for path in paths:
        with _stage("learn", path):
            sequence = parse_smf(_read(path))
            if ppqn is None:
                ppqn = sequence.ppqn
            elif sequence.ppqn != ppqn:
                raise QuaverUnsupportedFormatException(
                    f"time division {sequence.ppqn} differs from the {ppqn} "
                    "of the first file"
                )
            events = extract_monophonic(sequence)
        if events:
            tunes.append(events)
    with _stage("learn"):
        if not tunes:
            raise QuaverSequenceTooShortException("no notes were found")
        tables, lexicon, sequences = encode_corpus(tunes)
        family = [
            extract_rules_corpus(sequences, order) for order in range(1, n + 1)
        ]
        book = RuleBook(
            tables=tables,
            lexicon=lexicon,
            rules=family[-1],
            backoff=tuple(family[:-1]),
            ppqn=ppqn,
            openings=tuple(
                tuple(seq[:n]) for seq in sequences if len(seq) >= n
            ),
        )
        path = _write(out_dir, RULES_FILENAME, serialize(book))
    return LearnResult(book, sum(len(tune) for tune in tunes), path)


def cmd_generate(
    rules_path: Path,
    config: GenConfig,
    out_dir: Path,
    plot: bool = False,
    bpm: float = DEFAULT_BPM,
) -> GenerateResult:
    """Generates a tune from a rules file, writing it with its round log."""
    with _stage("generate", rules_path):
        book = deserialize(_read(rules_path))
    with _stage("generate"):
        codes, stats = generate_from_book(book, config)
        events = [
            decode(book.lexicon.decompress(code), book.tables)
            for code in codes
        ]
        midi_path = _write(
            out_dir, TUNE_FILENAME, write_smf(events, book.ppqn, bpm)
        )
        k = book.lexicon.k
        stats_path = _write(
            out_dir, STATS_FILENAME, stats_csv(stats, k).encode("ascii")
        )
        svg_path = _write(out_dir, SVG_FILENAME, _plot(stats)) if plot else None
    return GenerateResult(events, stats, k, midi_path, stats_path, svg_path)


def cmd_sing(
    midi_path: Path, params: SynthParams, out_dir: Path
) -> SingResult:
    """Sings a monophonic MIDI file into a WAV file."""
    with _stage("sing", midi_path):
        sequence = parse_smf(_read(midi_path))
        events = extract_monophonic(sequence)
    with _stage("sing"):
        params = dataclasses.replace(params, ppqn=sequence.ppqn)
        samples = render(events, params)
        path = _write(
            out_dir, WAV_FILENAME, write_wav(samples, params.sample_rate)
        )
    return SingResult(events, len(samples), params.sample_rate, path)


def cmd_run(
    paths: Sequence[Path],
    config: GenConfig,
    params: SynthParams,
    out_dir: Path,
    plot: bool = False,
) -> RunResult:
    """Learns from the files, generates a tune and sings it."""
    learned = cmd_learn(paths, config.n, out_dir)
    generated = cmd_generate(
        learned.path, config, out_dir, plot, bpm=params.tempo
    )
    sung = cmd_sing(generated.midi_path, params, out_dir)
    return RunResult(learned, generated, sung)
