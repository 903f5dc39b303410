"""Shared constant definitions."""

from datetime import date
from importlib.metadata import version
from pathlib import Path
from platform import platform, python_version
from sys import argv, gettrace

from appdirs import __version__ as appdirs_version, user_config_dir
from matplotlib import __version__ as matplotlib_version
from numpy import __version__ as numpy_version
from scipy import __version__ as scipy_version
from teletype import VERSION as teletype_version

from quaver.__version__ import VERSION

__all__ = [
    "CONFIG_FILENAME",
    "CONFIG_PATH",
    "DEFAULT_BPM",
    "DURATION_BITS",
    "FORMAT_VERSION",
    "IS_DEBUG",
    "JITTER_DIVISOR",
    "MAX_DURATIONS",
    "MAX_PITCHES",
    "MAX_QUBITS",
    "PITCH_BITS",
    "SILENCE",
    "SYSTEM",
    "USAGE",
    "VERSION",
    "VOWELS",
]

CONFIG_FILENAME = ".quaver.json"

CONFIG_PATH = Path(user_config_dir("quaver"), CONFIG_FILENAME).absolute()

DEFAULT_BPM = 120

# raw codes are a 5-bit pitch index followed by a 4-bit duration index
PITCH_BITS = 5
DURATION_BITS = 4
MAX_PITCHES = 2 ** PITCH_BITS
MAX_DURATIONS = 2 ** DURATION_BITS

FORMAT_VERSION = 1

IS_DEBUG = gettrace() is not None

# gaps shorter than ppqn / JITTER_DIVISOR ticks are absorbed by the prior note
JITTER_DIVISOR = 32

MAX_QUBITS = 20

# MIDI note 0 is a real (if inaudible) pitch so silence lives outside 0-127
SILENCE = -1

SYSTEM = {
    "date": date.today(),
    "platform": platform(),
    "arguments": argv[1:],
    "config location": str(CONFIG_PATH),
    "python version": python_version(),
    "quaver version": VERSION,
    "appdirs version": appdirs_version,
    "matplotlib version": matplotlib_version,
    "mido version": version("mido"),
    "numpy version": numpy_version,
    "scipy version": scipy_version,
    "teletype version": teletype_version,
}

USAGE = (
    "USAGE: quaver {learn,generate,sing,run} [parameters] input [inputs ...]"
)

# (frequency Hz, bandwidth Hz, gain) per formant; male voice averages
VOWELS = {
    "a": [[700.0, 130.0, 1.0], [1220.0, 70.0, 1.0], [2600.0, 160.0, 1.0]],
    "e": [[530.0, 60.0, 1.0], [1840.0, 90.0, 1.0], [2480.0, 150.0, 1.0]],
    "i": [[270.0, 60.0, 1.0], [2290.0, 90.0, 1.0], [3010.0, 150.0, 1.0]],
    "o": [[570.0, 70.0, 1.0], [840.0, 80.0, 1.0], [2410.0, 160.0, 1.0]],
    "u": [[300.0, 60.0, 1.0], [870.0, 80.0, 1.0], [2240.0, 150.0, 1.0]],
}
