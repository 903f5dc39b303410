import dataclasses
import json
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from quaver.argument import ArgLoader
from quaver.const import CONFIG_FILENAME, CONFIG_PATH, DEFAULT_BPM, VOWELS
from quaver.exceptions import QuaverConfigException, QuaverException
from quaver.qsim import NoiseModel
from quaver.setting_spec import SettingSpec
from quaver.tunegen import GenConfig
from quaver.types import Command, SettingType, StartMode
from quaver.utils import crawl_out, json_loads
from quaver.voice_synth import SynthParams

__all__ = ["SettingStore"]


@dataclasses.dataclass
class SettingStore:
    """
    A dataclass which stores settings loaded from command line arguments and
    configuration files.
    """

    # positional attributes ----------------------------------------------------

    command: Optional[Union[Command, str]] = dataclasses.field(
        default=None,
        metadata=SettingSpec(
            choices=[command.value for command in Command],
            flags=["command"],
            group=SettingType.POSITIONAL,
            help="{learn,generate,sing,run}: the stage to perform",
            nargs="?",
        )(),
    )
    inputs: List[Path] = dataclasses.field(
        default_factory=lambda: [],
        metadata=SettingSpec(
            flags=["inputs"],
            group=SettingType.POSITIONAL,
            help="[INPUT,...]: MIDI file(s) for learn, run and sing; a rules "
            "file for generate",
            nargs="*",
        )(),
    )

    # parameter attributes -----------------------------------------------------

    order: int = dataclasses.field(
        default=1,
        metadata=SettingSpec(
            flags=["--order", "-n"],
            group=SettingType.PARAMETER,
            help="-n, --order=<N>: number of preceding events a rule looks at",
            type=int,
        )(),
    )
    rounds: int = dataclasses.field(
        default=50,
        metadata=SettingSpec(
            flags=["--rounds"],
            group=SettingType.PARAMETER,
            help="--rounds=<N>: number of events to generate",
            type=int,
        )(),
    )
    shots: int = dataclasses.field(
        default=1,
        metadata=SettingSpec(
            flags=["--shots"],
            group=SettingType.PARAMETER,
            help="--shots=<N>: measurements per circuit; the majority wins",
            type=int,
        )(),
    )
    seed: int = dataclasses.field(
        default=0,
        metadata=SettingSpec(
            flags=["--seed"],
            group=SettingType.PARAMETER,
            help="--seed=<N>: seed of every random draw",
            type=int,
        )(),
    )
    noise_p: float = dataclasses.field(
        default=0.0,
        metadata=SettingSpec(
            dest="noise_p",
            flags=["--noise_p", "--noise-p"],
            group=SettingType.PARAMETER,
            help="--noise-p=<P>: probability of each measured bit flipping",
            type=float,
        )(),
    )
    tolerate: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            flags=["--tolerate"],
            group=SettingType.PARAMETER,
            help="--tolerate: keep wrong events that some rule can continue",
        )(),
    )
    start: Union[StartMode, str] = dataclasses.field(
        default=StartMode.RANDOM,
        metadata=SettingSpec(
            choices=[StartMode.FIRST.value, StartMode.RANDOM.value],
            flags=["--start"],
            group=SettingType.PARAMETER,
            help="--start={first,*random}: open like the first input tune or "
            "with a random trained context",
        )(),
    )
    max_retries: int = dataclasses.field(
        default=100,
        metadata=SettingSpec(
            dest="max_retries",
            flags=["--max_retries", "--max-retries"],
            group=SettingType.PARAMETER,
            help="--max-retries=<N>: measurements of wrong events allowed "
            "per round",
            type=int,
        )(),
    )
    tempo: float = dataclasses.field(
        default=float(DEFAULT_BPM),
        metadata=SettingSpec(
            flags=["--tempo"],
            group=SettingType.PARAMETER,
            help="--tempo=<BPM>: playback speed in quarter notes per minute",
            type=float,
        )(),
    )
    vowel: str = dataclasses.field(
        default="a",
        metadata=SettingSpec(
            flags=["--vowel"],
            group=SettingType.PARAMETER,
            help="--vowel=<NAME>: vowel preset to sing; e.g. a, e, i, o, u",
        )(),
    )
    duration_scale: float = dataclasses.field(
        default=1.0,
        metadata=SettingSpec(
            dest="duration_scale",
            flags=["--duration_scale", "--duration-scale"],
            group=SettingType.PARAMETER,
            help="--duration-scale=<X>: stretch sung notes by a factor",
            type=float,
        )(),
    )
    out_dir: Path = dataclasses.field(
        default=Path("."),
        metadata=SettingSpec(
            dest="out_dir",
            flags=["--out_dir", "--out-dir"],
            group=SettingType.PARAMETER,
            help="--out-dir=<PATH>: directory outputs are written to",
        )(),
    )
    plot: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            flags=["--plot"],
            group=SettingType.PARAMETER,
            help="--plot: also chart the generation statistics as SVG",
        )(),
    )
    verbose: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            flags=["--verbose", "-v"],
            group=SettingType.PARAMETER,
            help="-v, --verbose: increase output verbosity",
        )(),
    )
    no_style: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            dest="no_style",
            flags=["--no_style", "--no-style", "--nostyle"],
            group=SettingType.PARAMETER,
            help="--no-style: print to stdout without using colour",
        )(),
    )

    # directive attributes -----------------------------------------------------

    version: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            flags=["-V", "--version"],
            group=SettingType.DIRECTIVE,
            help="-V, --version: display the running quaver version number",
        )(),
    )
    config_dump: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            dest="config_dump",
            flags=["--config_dump", "--config-dump", "--configdump"],
            group=SettingType.DIRECTIVE,
            help="--config-dump: prints current config JSON to stdout then "
            "exits",
        )(),
    )
    config_ignore: bool = dataclasses.field(
        default=False,
        metadata=SettingSpec(
            action="store_true",
            dest="config_ignore",
            flags=["--config_ignore", "--config-ignore", "--configignore"],
            group=SettingType.DIRECTIVE,
            help="--config-ignore: skips loading config file for session",
        )(),
    )
    config_path: Optional[str] = dataclasses.field(
        default=None,
        metadata=SettingSpec(
            dest="config_path",
            flags=["--config_path", "--config-path"],
            group=SettingType.DIRECTIVE,
            help="--config-path=<PATH>: specifies configuration path to load",
        )(),
    )

    # config-only attributes ---------------------------------------------------

    vowels: Dict[str, List[List[float]]] = dataclasses.field(
        default_factory=lambda: deepcopy(VOWELS),
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    sample_rate: int = dataclasses.field(
        default=44100,
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    attack_ms: float = dataclasses.field(
        default=10.0,
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    release_ms: float = dataclasses.field(
        default=40.0,
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    vibrato_rate: float = dataclasses.field(
        default=5.5,
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    vibrato_depth: float = dataclasses.field(
        default=15.0,
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    noise_mix: float = dataclasses.field(
        default=0.05,
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )
    start_codes: List[int] = dataclasses.field(
        default_factory=lambda: [],
        metadata=SettingSpec(group=SettingType.CONFIGURATION)(),
    )

    @classmethod
    def specifications(cls) -> List[SettingSpec]:
        return [
            SettingSpec(**f.metadata)
            for f in dataclasses.fields(SettingStore)
            if f.metadata
        ]

    def __setattr__(self, key: str, value: Any):
        converter = {
            "command": Command,
            "inputs": lambda inputs: [Path(path) for path in inputs],
            "out_dir": Path,
            "start": StartMode,
            "start_codes": lambda codes: [int(code) for code in codes],
        }.get(key)
        if value is not None and converter:
            try:
                value = converter(value)
            except (TypeError, ValueError):
                raise QuaverConfigException(f"invalid {key}: {value!r}")
        super().__setattr__(key, value)

    def as_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def as_json(self) -> str:
        payload = {}
        serializable_fields = tuple(
            str(field.name)
            for field in dataclasses.fields(self)
            if field.metadata.get("group")
            in {SettingType.PARAMETER, SettingType.CONFIGURATION}
        )
        # transform values into primitive JSON-serializable types
        for k, v in self.as_dict().items():
            if k not in serializable_fields:
                continue
            if hasattr(v, "value"):
                payload[k] = v.value
            elif isinstance(v, Path):
                payload[k] = str(v.resolve())
            else:
                payload[k] = v
        return json.dumps(
            payload,
            allow_nan=False,
            check_circular=False,
            ensure_ascii=True,
            indent=4,
            skipkeys=True,
            sort_keys=True,
        )

    def bulk_apply(self, d: Dict[str, Any]):
        known = {field.name for field in dataclasses.fields(self)}
        for k, v in d.items():
            if k not in known:
                raise QuaverConfigException(f"unknown setting {k!r}")
            if v is not None:
                setattr(self, k, v)

    def locate_config(self, arguments: Dict[str, Any]) -> Optional[Path]:
        """
        Finds the config file: an explicit --config-path, else the nearest
        one up from the working directory or in home, else the user config
        directory.
        """
        if arguments.get("config_path"):
            return Path(arguments["config_path"])
        found = crawl_out(CONFIG_FILENAME)
        if found:
            return found
        return CONFIG_PATH if CONFIG_PATH.exists() else None

    def load(self) -> None:
        arg_loader = ArgLoader(*self.specifications())
        try:
            arguments = arg_loader.load()
        except RuntimeError as e:
            raise QuaverException(e)
        if not self.config_ignore and not arguments.get("config_ignore"):
            config_path = self.locate_config(arguments)
            if config_path:
                if not config_path.exists():
                    raise QuaverConfigException(f"{config_path} does not exist")
                try:
                    config = json_loads(str(config_path))
                except ValueError as e:
                    raise QuaverConfigException(
                        f"{config_path} is not a valid config file: {e}"
                    )
                self.bulk_apply(config)
                self.config_path = str(config_path)
        if arguments:
            self.bulk_apply(
                {k: v for k, v in arguments.items() if k != "config_path"}
            )

    def gen_config(self) -> GenConfig:
        """Generation settings; start_codes select an explicit start."""
        return GenConfig(
            rounds=self.rounds,
            n=self.order,
            shots=self.shots,
            start=StartMode.EXPLICIT if self.start_codes else self.start,
            start_codes=tuple(self.start_codes),
            noise=NoiseModel(self.noise_p),
            tolerate_wrong=self.tolerate,
            max_retries=self.max_retries,
            seed=self.seed,
        )

    def synth_params(self) -> SynthParams:
        return SynthParams.for_vowel(
            self.vowel,
            self.vowels,
            sample_rate=self.sample_rate,
            tempo=self.tempo,
            attack_ms=self.attack_ms,
            release_ms=self.release_ms,
            vibrato_rate=self.vibrato_rate,
            vibrato_depth=self.vibrato_depth,
            noise_mix=self.noise_mix,
            duration_scale=self.duration_scale,
            seed=self.seed,
        )
