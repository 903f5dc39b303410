from abc import ABC, abstractmethod
from typing import List

from quaver import tty
from quaver.const import SYSTEM, USAGE, VERSION
from quaver.event_codec import describe
from quaver.exceptions import QuaverConfigException
from quaver.pipeline import (
    GenerateResult,
    LearnResult,
    SingResult,
    cmd_generate,
    cmd_learn,
    cmd_run,
    cmd_sing,
)
from quaver.setting_store import SettingStore
from quaver.types import Command, MessageType
from quaver.utils import format_bits


class Frontend(ABC):
    settings: SettingStore

    def __init__(self, settings: SettingStore):
        self.settings = settings
        tty.configure(self.settings)
        self._handle_directives()
        self._print_configuration()

    def _handle_directives(self) -> None:
        if self.settings.version:
            tty.msg(f"quaver version {VERSION}")
            raise SystemExit(0)

        if self.settings.config_dump:
            print(self.settings.as_json())
            raise SystemExit(0)

        if self.settings.config_path:
            tty.msg(
                f"loaded config from '{self.settings.config_path}'",
                MessageType.ALERT,
            )

    def _print_configuration(self) -> None:
        tty.msg("\nsystem", debug=True)
        tty.msg(SYSTEM, debug=True)
        tty.msg("\nsettings", debug=True)
        tty.msg(self.settings.as_dict(), debug=True)
        tty.msg("\ninputs", debug=True)
        tty.msg(self.settings.inputs or [None], debug=True)

    @abstractmethod
    def launch(self):
        pass


class Cli(Frontend):
    def __init__(self, settings: SettingStore):
        super().__init__(settings)
        if not settings.command:
            tty.error(USAGE)
            raise SystemExit(2)

    def launch(self) -> None:
        command = self.settings.command
        tty.msg(f"Starting quaver {command.value}", MessageType.HEADING)
        if command is Command.LEARN:
            self._report_learn(
                cmd_learn(
                    self._inputs(),
                    self.settings.order,
                    self.settings.out_dir,
                )
            )
        elif command is Command.GENERATE:
            self._report_generate(
                cmd_generate(
                    self._inputs(single=True),
                    self.settings.gen_config(),
                    self.settings.out_dir,
                    self.settings.plot,
                    bpm=self.settings.tempo,
                )
            )
        elif command is Command.SING:
            self._report_sing(
                cmd_sing(
                    self._inputs(single=True),
                    self.settings.synth_params(),
                    self.settings.out_dir,
                )
            )
        else:
            result = cmd_run(
                self._inputs(),
                self.settings.gen_config(),
                self.settings.synth_params(),
                self.settings.out_dir,
                self.settings.plot,
            )
            self._report_learn(result.learned)
            self._report_generate(result.generated)
            self._report_sing(result.sung)

    def _inputs(self, single: bool = False) -> List:
        inputs = self.settings.inputs
        command = self.settings.command.value
        if not inputs:
            raise QuaverConfigException(f"{command}: no input file given")
        if single and len(inputs) > 1:
            raise QuaverConfigException(
                f"{command}: expected one input file, got {len(inputs)}"
            )
        return inputs[0] if single else inputs

    def _report_learn(self, result: LearnResult) -> None:
        book = result.book
        tty.msg("\nevent codes", debug=True)
        tty.msg(describe(book.tables), debug=True)
        tty.msg("\nrules", debug=True)
        k = book.lexicon.k
        for rules in book.family():
            for context, row in rules.rows.items():
                successors = ", ".join(
                    f"{code:0{k}b}:{count}" for code, count in row.items()
                )
                tty.msg(
                    f" - {format_bits(context, k)} -> {successors}", debug=True
                )
        tty.msg(
            f"learned {len(book.rules)} order {book.n} rules from "
            f"{result.events} events; {len(book.lexicon)} distinct events "
            f"fit {k} qubits",
            MessageType.SUCCESS,
        )
        tty.msg(f"wrote {result.path}")

    def _report_generate(self, result: GenerateResult) -> None:
        stats = result.stats
        tty.msg("\nrounds", debug=True)
        for record in stats.log:
            line = (
                f" - {record.round}: {format_bits(record.context, result.k)} "
                f"-> {record.outcome:0{result.k}b} "
                f"({record.classification.value}"
            )
            if record.retries:
                line += f", {record.retries} retries"
            line += ")"
            if record.counts:
                line += " " + " ".join(
                    f"{bits}:{n}" for bits, n in record.counts
                )
            tty.msg(line, debug=True)
        good = tty.tag(f"{stats.good} good", MessageType.SUCCESS)
        skipped = tty.tag(f"{stats.skipped} skipped", MessageType.ALERT)
        noisy = tty.tag(f"{stats.noisy} noisy", MessageType.ERROR)
        tty.msg(
            f"generated {len(stats.log)} events: {good}, {skipped}, {noisy}"
        )
        if stats.dead_ends:
            tty.msg(
                f"{stats.dead_ends} rounds hit a dead end and drew an event "
                "at random",
                MessageType.ALERT,
            )
        if stats.noisy_accepted:
            tty.msg(
                f"{stats.noisy_accepted} wrong events were tolerated",
                MessageType.ALERT,
            )
        for path in (result.midi_path, result.stats_path, result.svg_path):
            if path:
                tty.msg(f"wrote {path}")

    def _report_sing(self, result: SingResult) -> None:
        tty.msg(
            f"sang {len(result.events)} events in {result.seconds:.2f}s",
            MessageType.SUCCESS,
        )
        tty.msg(f"wrote {result.path}")
