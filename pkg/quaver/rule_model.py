"""
Order-n transition rules: occurrence counts of successor events per context,
exposed as exact probabilities and as state amplitudes.
"""

import dataclasses
import json
from collections import Counter
from fractions import Fraction
from math import sqrt
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from quaver.const import FORMAT_VERSION
from quaver.event_codec import DurationTable, EventTables, Lexicon, PitchTable
from quaver.exceptions import (
    QuaverDeadEndException,
    QuaverFormatException,
    QuaverSequenceTooShortException,
)
from quaver.types import CompressedCode, Context

__all__ = [
    "Distribution",
    "Outcome",
    "RuleBook",
    "RuleSet",
    "deserialize",
    "distribution",
    "extract_rules",
    "extract_rules_corpus",
    "serialize",
    "to_state_target",
]


@dataclasses.dataclass(frozen=True)
class RuleSet:
    """Successor counts per context of n events."""

    n: int
    rows: Mapping[Context, Mapping[CompressedCode, int]]

    def __contains__(self, context: Sequence[int]) -> bool:
        return tuple(context) in self.rows

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def total(self) -> int:
        return sum(sum(row.values()) for row in self.rows.values())

    def contexts(self) -> List[Context]:
        return sorted(self.rows)


@dataclasses.dataclass(frozen=True)
class Outcome:
    code: CompressedCode
    probability: Fraction

    @property
    def amplitude(self) -> float:
        return sqrt(self.probability)


@dataclasses.dataclass(frozen=True)
class Distribution:
    support: Tuple[Outcome, ...]

    def __contains__(self, code: int) -> bool:
        return any(outcome.code == code for outcome in self.support)

    def __len__(self) -> int:
        return len(self.support)

    @property
    def codes(self) -> List[CompressedCode]:
        return [outcome.code for outcome in self.support]


def _count(
    counts: Dict[Context, Counter], seq: Sequence[CompressedCode], n: int
):
    for i in range(len(seq) - n):
        counts.setdefault(tuple(seq[i : i + n]), Counter())[seq[i + n]] += 1


def _freeze(n: int, counts: Dict[Context, Counter]) -> RuleSet:
    rows = {
        context: dict(sorted(successors.items()))
        for context, successors in sorted(counts.items())
    }
    return RuleSet(n, rows)


def extract_rules(seq: Sequence[CompressedCode], n: int) -> RuleSet:
    if n < 1:
        raise ValueError("rule order must be at least 1")
    if len(seq) < n + 1:
        raise QuaverSequenceTooShortException(
            f"order {n} rules need at least {n + 1} events, got {len(seq)}"
        )
    counts: Dict[Context, Counter] = {}
    _count(counts, seq, n)
    return _freeze(n, counts)


def extract_rules_corpus(
    seqs: Sequence[Sequence[CompressedCode]], n: int
) -> RuleSet:
    """Sums the rules of several tunes; no window spans two tunes."""
    if n < 1:
        raise ValueError("rule order must be at least 1")
    usable = [seq for seq in seqs if len(seq) >= n + 1]
    if not usable:
        raise QuaverSequenceTooShortException(
            f"order {n} rules need a tune of at least {n + 1} events"
        )
    counts: Dict[Context, Counter] = {}
    for seq in usable:
        _count(counts, seq, n)
    return _freeze(n, counts)


def distribution(rules: RuleSet, ctx: Sequence[int]) -> Distribution:
    try:
        row = rules.rows[tuple(ctx)]
    except KeyError:
        raise QuaverDeadEndException(f"no rule follows context {tuple(ctx)}")
    total = sum(row.values())
    return Distribution(
        tuple(
            Outcome(code, Fraction(count, total))
            for code, count in row.items()
        )
    )


def to_state_target(dist: Distribution, k: int) -> np.ndarray:
    """Places each outcome's amplitude at the index equal to its code."""
    target = np.zeros(2 ** k)
    for outcome in dist.support:
        if outcome.code >= 2 ** k:
            raise ValueError(f"code {outcome.code} does not fit {k} qubits")
        target[outcome.code] = outcome.amplitude
    return target


@dataclasses.dataclass(frozen=True)
class RuleBook:
    """
    Everything generation needs from training: the tables and lexicon used to
    decode events, the rules of order n, rules of every lower order for
    backing off, and the opening context of each training tune.
    """

    tables: EventTables
    lexicon: Lexicon
    rules: RuleSet
    backoff: Tuple[RuleSet, ...] = ()
    ppqn: int = 960
    openings: Tuple[Context, ...] = ()

    @property
    def n(self) -> int:
        return self.rules.n

    def family(self) -> List[RuleSet]:
        """All rule sets, highest order first."""
        return sorted((self.rules, *self.backoff), key=lambda r: -r.n)

    def rules_for(self, order: int) -> Optional[RuleSet]:
        for rules in self.family():
            if rules.n == order:
                return rules
        return None


def _rules_as_json(rules: RuleSet) -> Dict[str, Any]:
    return {
        "n": rules.n,
        "rows": [
            {
                "context": list(context),
                "successors": [[code, count] for code, count in row.items()],
            }
            for context, row in rules.rows.items()
        ],
    }


def _rules_from_json(payload: Dict[str, Any]) -> RuleSet:
    n = int(payload["n"])
    rows = {}
    for row in payload["rows"]:
        context = tuple(int(code) for code in row["context"])
        if len(context) != n:
            raise ValueError(f"context {context} is not of order {n}")
        successors = {
            int(code): int(count) for code, count in row["successors"]
        }
        if not successors or min(successors.values()) < 1:
            raise ValueError(f"context {context} has no positive counts")
        rows[context] = successors
    return RuleSet(n, rows)


def serialize(book: RuleBook) -> bytes:
    payload = {
        "format_version": FORMAT_VERSION,
        "pitches": list(book.tables.pitches.entries),
        "durations": list(book.tables.durations.entries),
        "lexicon": list(book.lexicon.raw_codes),
        "ppqn": book.ppqn,
        "openings": [list(opening) for opening in book.openings],
        "rules": _rules_as_json(book.rules),
        "backoff": [_rules_as_json(rules) for rules in book.backoff],
    }
    text = json.dumps(
        payload,
        allow_nan=False,
        ensure_ascii=True,
        indent=4,
        sort_keys=True,
    )
    return (text + "\n").encode("ascii")


def deserialize(data: bytes) -> RuleBook:
    try:
        payload = json.loads(data.decode("utf8"))
    except (UnicodeDecodeError, ValueError) as e:
        raise QuaverFormatException(f"rules file is not valid JSON: {e}")
    if not isinstance(payload, dict):
        raise QuaverFormatException("rules file must hold a JSON object")
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise QuaverFormatException(
            f"unsupported rules format version {version!r}, "
            f"expected {FORMAT_VERSION}"
        )
    try:
        tables = EventTables(
            PitchTable(tuple(int(p) for p in payload["pitches"])),
            DurationTable(tuple(int(d) for d in payload["durations"])),
        )
        return RuleBook(
            tables=tables,
            lexicon=Lexicon(tuple(int(raw) for raw in payload["lexicon"])),
            rules=_rules_from_json(payload["rules"]),
            backoff=tuple(_rules_from_json(r) for r in payload["backoff"]),
            ppqn=int(payload["ppqn"]),
            openings=tuple(
                tuple(int(code) for code in opening)
                for opening in payload["openings"]
            ),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise QuaverFormatException(f"rules file is incomplete: {e}")
