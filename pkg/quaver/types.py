"""Enum type definitions and code aliases."""

from enum import Enum
from typing import NewType, Tuple

__all__ = [
    "Classification",
    "Command",
    "CompressedCode",
    "Context",
    "GateKind",
    "MessageType",
    "RawCode",
    "SettingType",
    "StartMode",
    "Verdict",
]

RawCode = NewType("RawCode", int)
CompressedCode = NewType("CompressedCode", int)
Context = Tuple[int, ...]


class Classification(Enum):
    GOOD = "good"
    SKIPPED = "skipped"
    NOISY = "noisy"
    DEAD_END = "dead_end"


class Command(Enum):
    LEARN = "learn"
    GENERATE = "generate"
    SING = "sing"
    RUN = "run"


class GateKind(Enum):
    X = "X"
    RY = "RY"
    CX = "CX"


class MessageType(Enum):
    INFO = None
    ALERT = "yellow"
    ERROR = "red"
    SUCCESS = "green"
    HEADING = "bold"


class SettingType(Enum):
    DIRECTIVE = "directive"
    PARAMETER = "parameter"
    POSITIONAL = "positional"
    CONFIGURATION = "configuration"


class StartMode(Enum):
    FIRST = "first"
    RANDOM = "random"
    EXPLICIT = "explicit"


class Verdict(Enum):
    ACCEPT = "accept"
    RETRY = "retry"
