"""
The generation loop: walks the rules from a start context, preparing and
measuring a circuit whenever the active rule leaves more than one choice.
"""

import csv
import dataclasses
from io import StringIO
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from quaver.event_codec import Lexicon
from quaver.exceptions import (
    QuaverConfigException,
    QuaverDeadEndException,
    QuaverEmptyRulesException,
    QuaverRetriesExhaustedException,
)
from quaver.qsim import NoiseModel, StateVector, majority, run, sample
from quaver.rule_model import (
    Distribution,
    RuleBook,
    RuleSet,
    distribution,
    to_state_target,
)
from quaver.state_prep import prepare_state
from quaver.types import (
    Classification,
    CompressedCode,
    Context,
    StartMode,
    Verdict,
)

__all__ = [
    "GenConfig",
    "GenerationStats",
    "RoundRecord",
    "generate",
    "generate_from_book",
    "resolve_context",
    "start_context",
    "stats_csv",
    "wrong_event_policy",
]

# spawn key of the random start; rounds use their own index
_START_STREAM = 2 ** 32 - 1

Counts = Tuple[Tuple[str, int], ...]


@dataclasses.dataclass(frozen=True)
class GenConfig:
    rounds: int = 50
    n: int = 1
    shots: int = 1
    start: StartMode = StartMode.RANDOM
    start_codes: Tuple[int, ...] = ()
    noise: NoiseModel = NoiseModel()
    tolerate_wrong: bool = False
    max_retries: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 0:
            raise QuaverConfigException("rounds can't be negative")
        if self.n < 1:
            raise QuaverConfigException("order must be at least 1")
        if self.shots < 1:
            raise QuaverConfigException("shots must be at least 1")
        if self.max_retries < 1:
            raise QuaverConfigException("max retries must be at least 1")
        if self.seed < 0:
            raise QuaverConfigException("seed can't be negative")
        if self.start is StartMode.EXPLICIT and len(self.start_codes) != self.n:
            raise QuaverConfigException(
                f"an explicit start needs {self.n} codes, "
                f"got {len(self.start_codes)}"
            )


@dataclasses.dataclass(frozen=True)
class RoundRecord:
    round: int
    context: Context
    outcome: CompressedCode
    classification: Classification
    retries: int = 0
    # bitstring counts of the last measurement, for quantum rounds only
    counts: Counts = ()


@dataclasses.dataclass
class GenerationStats:
    """
    Per-run tallies. Dead-end rounds build no circuit, so they count towards
    skipped as well as dead_ends.
    """

    good: int = 0
    skipped: int = 0
    noisy: int = 0
    noisy_accepted: int = 0
    dead_ends: int = 0
    log: List[RoundRecord] = dataclasses.field(default_factory=list)

    @property
    def rounds(self) -> int:
        return self.good + self.skipped + self.noisy_accepted

    @property
    def single_choice(self) -> int:
        return self.skipped - self.dead_ends

    def summary(self) -> str:
        return (
            f"good={self.good} skipped={self.skipped} noisy={self.noisy} "
            f"noisy_accepted={self.noisy_accepted} dead_ends={self.dead_ends}"
        )


def _round_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def resolve_context(
    history: Sequence[int], family: Sequence[RuleSet]
) -> Tuple[Context, RuleSet]:
    """
    Finds the longest suffix of history that has a row, trying each rule set
    of the family from the highest order down.
    """
    if not history:
        raise ValueError("cannot resolve a context from an empty history")
    for rules in family:
        if len(history) < rules.n:
            continue
        context = tuple(history[-rules.n :])
        if context in rules:
            return context, rules
    raise QuaverDeadEndException(
        f"no rule follows any suffix of {tuple(history[-family[0].n :])}"
    )


def wrong_event_policy(
    outcome: int,
    history: Sequence[int],
    rules: RuleSet,
    config: GenConfig,
    lexicon: Lexicon,
) -> Verdict:
    """
    Decides what happens to a measured event the active rule doesn't allow.
    It is kept only when tolerated and something is known to follow it.
    """
    if not config.tolerate_wrong or outcome >= len(lexicon):
        return Verdict.RETRY
    context = tuple([*history, outcome][-rules.n :])
    if len(context) == rules.n and context in rules:
        return Verdict.ACCEPT
    return Verdict.RETRY


def start_context(
    rules: RuleSet,
    lexicon: Lexicon,
    config: GenConfig,
    openings: Sequence[Context] = (),
) -> Context:
    if config.start is StartMode.FIRST:
        usable = [o for o in openings if len(o) >= config.n]
        if not usable:
            raise QuaverConfigException(
                f"no training tune opens with {config.n} events"
            )
        return tuple(usable[0][: config.n])
    if config.start is StartMode.EXPLICIT:
        for code in config.start_codes:
            if not 0 <= code < len(lexicon):
                raise QuaverConfigException(
                    f"start code {code} is outside the lexicon of "
                    f"{len(lexicon)} events"
                )
        return tuple(config.start_codes)
    contexts = rules.contexts()
    rng = _round_rng(config.seed, _START_STREAM)
    return contexts[int(rng.integers(len(contexts)))]


def _measure(
    state: StateVector,
    dist: Distribution,
    history: List[int],
    rules: RuleSet,
    lexicon: Lexicon,
    config: GenConfig,
    rng: np.random.Generator,
    index: int,
    stats: GenerationStats,
) -> Tuple[int, Classification, int, Counts]:
    retries = 0
    while True:
        counts = sample(state, config.shots, rng, config.noise)
        outcome = majority(counts, rng)
        rows = tuple(counts.as_rows())
        if outcome in dist:
            stats.good += 1
            return outcome, Classification.GOOD, retries, rows
        stats.noisy += 1
        verdict = wrong_event_policy(outcome, history, rules, config, lexicon)
        if verdict is Verdict.ACCEPT:
            stats.noisy_accepted += 1
            return outcome, Classification.NOISY, retries, rows
        retries += 1
        if retries > config.max_retries:
            raise QuaverRetriesExhaustedException(
                f"round {index}: no permissible event after "
                f"{config.max_retries} retries",
                index,
            )


def generate(
    rules: RuleSet,
    lexicon: Lexicon,
    config: GenConfig,
    backoff: Sequence[RuleSet] = (),
    openings: Sequence[Context] = (),
) -> Tuple[List[CompressedCode], GenerationStats]:
    """
    Generates config.rounds events after the start context.

    Contexts without a row of order n fall back to the lower orders of
    backoff; when none applies the next event is drawn uniformly from the
    lexicon.
    """
    if not len(rules):
        raise QuaverEmptyRulesException("the rule set has no rows")
    if rules.n != config.n:
        raise QuaverConfigException(
            f"rules are of order {rules.n}, not {config.n}"
        )
    family = sorted(
        [rules, *(r for r in backoff if r.n < rules.n)], key=lambda r: -r.n
    )
    history: List[int] = list(start_context(rules, lexicon, config, openings))
    states: Dict[Tuple[int, Context], StateVector] = {}
    stats = GenerationStats()
    k = lexicon.k
    for index in range(1, config.rounds + 1):
        rng = _round_rng(config.seed, index)
        try:
            context, active = resolve_context(history, family)
        except QuaverDeadEndException:
            outcome = int(rng.integers(len(lexicon)))
            stats.skipped += 1
            stats.dead_ends += 1
            record = RoundRecord(
                index,
                tuple(history[-config.n :]),
                CompressedCode(outcome),
                Classification.DEAD_END,
            )
        else:
            dist = distribution(active, context)
            if len(dist) == 1:
                outcome, retries, counts = dist.codes[0], 0, ()
                classification = Classification.SKIPPED
                stats.skipped += 1
            else:
                key = (active.n, context)
                if key not in states:
                    target = to_state_target(dist, k)
                    states[key] = run(prepare_state(target, k))
                outcome, classification, retries, counts = _measure(
                    states[key],
                    dist,
                    history,
                    rules,
                    lexicon,
                    config,
                    rng,
                    index,
                    stats,
                )
            record = RoundRecord(
                index,
                context,
                CompressedCode(outcome),
                classification,
                retries,
                counts,
            )
        stats.log.append(record)
        history.append(outcome)
    return [CompressedCode(code) for code in history], stats


def generate_from_book(
    book: RuleBook, config: GenConfig
) -> Tuple[List[CompressedCode], GenerationStats]:
    """Generates with the book's rules of order config.n and those below."""
    rules: Optional[RuleSet] = book.rules_for(config.n)
    if rules is None:
        raise QuaverConfigException(
            f"the rules file holds orders 1 to {book.n}, not {config.n}"
        )
    backoff = [r for r in book.family() if r.n < config.n]
    return generate(rules, book.lexicon, config, backoff, book.openings)


def stats_csv(stats: GenerationStats, k: int) -> str:
    """Renders the round log and a closing summary line."""
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["round", "context", "outcome", "classification", "retries"]
    )
    for record in stats.log:
        writer.writerow(
            [
                record.round,
                " ".join(f"{code:0{k}b}" for code in record.context),
                f"{record.outcome:0{k}b}",
                record.classification.value,
                record.retries,
            ]
        )
    buffer.write(f"# {stats.summary()}\n")
    return buffer.getvalue()
