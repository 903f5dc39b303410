import json
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

from quaver.exceptions import QuaverConfigException, QuaverException
from quaver.setting_store import SettingStore
from quaver.types import Command, StartMode
from tests import *

pytestmark = pytest.mark.local


@pytest.mark.parametrize(
    "item", DEFAULT_SETTINGS.items(), ids=tuple(DEFAULT_SETTINGS.keys())
)
def test_as_dict(item):
    settings = SettingStore()
    k, v = item
    assert settings.as_dict()[k] == v


def test_as_json():
    payload = json.loads(SettingStore().as_json())
    assert payload["start"] == "random"
    assert payload["out_dir"] == str(Path(".").resolve())
    assert payload["vowels"]["a"][0] == [700.0, 130.0, 1.0]
    assert "command" not in payload
    assert "config_dump" not in payload


@pytest.mark.parametrize(
    "key,value,expected",
    (
        ("command", "learn", Command.LEARN),
        ("inputs", ["a.mid", "b.mid"], [Path("a.mid"), Path("b.mid")]),
        ("out_dir", "out", Path("out")),
        ("start", "first", StartMode.FIRST),
        ("start_codes", ["1", 2], [1, 2]),
    ),
    ids=("command", "inputs", "out_dir", "start", "start_codes"),
)
def test_setattr__converts(key, value, expected):
    settings = SettingStore()
    setattr(settings, key, value)
    assert getattr(settings, key) == expected


@pytest.mark.parametrize(
    "key,value",
    (("command", JUNK_TEXT), ("start", "last"), ("start_codes", ["x"])),
    ids=("command", "start", "start_codes"),
)
def test_setattr__invalid(key, value):
    settings = SettingStore()
    with pytest.raises(QuaverConfigException):
        setattr(settings, key, value)


def test_bulk_apply():
    settings = SettingStore()
    settings.bulk_apply({"rounds": 0, "tolerate": True, "vowel": None})
    assert settings.rounds == 0
    assert settings.tolerate is True
    assert settings.vowel == "a"


def test_bulk_apply__unknown_key():
    with pytest.raises(QuaverConfigException):
        SettingStore().bulk_apply({JUNK_TEXT: 1})


def test_gen_config():
    settings = SettingStore(
        order=2, rounds=7, shots=3, noise_p=0.1, tolerate=True, seed=9
    )
    config = settings.gen_config()
    assert config.n == 2
    assert config.rounds == 7
    assert config.shots == 3
    assert config.noise.bit_flip_p == 0.1
    assert config.tolerate_wrong is True
    assert config.seed == 9
    assert config.start is StartMode.RANDOM


def test_gen_config__start_codes():
    settings = SettingStore(order=2, start_codes=[0, 1])
    config = settings.gen_config()
    assert config.start is StartMode.EXPLICIT
    assert config.start_codes == (0, 1)


def test_gen_config__invalid():
    with pytest.raises(QuaverConfigException):
        SettingStore(shots=0).gen_config()
    with pytest.raises(QuaverConfigException):
        SettingStore(noise_p=1.0).gen_config()


def test_synth_params():
    settings = SettingStore(vowel="o", tempo=90.0, seed=4, noise_mix=0.0)
    params = settings.synth_params()
    assert params.formants[0].frequency == 570.0
    assert params.tempo == 90.0
    assert params.seed == 4
    assert params.noise_mix == 0.0


def test_synth_params__unknown_vowel():
    with pytest.raises(QuaverConfigException):
        SettingStore(vowel=JUNK_TEXT).synth_params()


@pytest.mark.usefixtures("setup_test_dir")
def test_load__arguments():
    argv = ["quaver", "generate", "rules.json", "-n", "2", "--seed", "0"]
    settings = SettingStore()
    with patch.object(sys, "argv", argv):
        settings.load()
    assert settings.command is Command.GENERATE
    assert settings.inputs == [Path("rules.json")]
    assert settings.order == 2
    assert settings.seed == 0
    assert settings.config_path is None


@pytest.mark.usefixtures("setup_test_dir")
def test_load__invalid_arguments():
    settings = SettingStore()
    with patch.object(sys, "argv", ["quaver", "learn", "--bogus"]):
        with pytest.raises(QuaverException):
            settings.load()


@pytest.mark.usefixtures("setup_test_dir")
def test_load__config_file():
    Path(".quaver.json").write_text(
        json.dumps({"rounds": 12, "shots": 5, "noise_mix": 0.2})
    )
    settings = SettingStore()
    with patch.object(sys, "argv", ["quaver", "run", "--shots", "3"]):
        settings.load()
    assert settings.rounds == 12
    assert settings.shots == 3
    assert settings.noise_mix == 0.2
    assert Path(settings.config_path).name == ".quaver.json"


@pytest.mark.usefixtures("setup_test_dir")
def test_load__config_ignore():
    Path(".quaver.json").write_text(json.dumps({"rounds": 12}))
    settings = SettingStore()
    with patch.object(sys, "argv", ["quaver", "--config-ignore"]):
        settings.load()
    assert settings.rounds == 50
    assert settings.config_path is None


@pytest.mark.usefixtures("setup_test_dir")
def test_load__config_path():
    Path("custom.json").write_text(json.dumps({"vowel": "e"}))
    settings = SettingStore()
    argv = ["quaver", "--config-path", "custom.json"]
    with patch.object(sys, "argv", argv):
        settings.load()
    assert settings.vowel == "e"
    assert settings.config_path == "custom.json"


@pytest.mark.usefixtures("setup_test_dir")
def test_load__config_path_missing():
    settings = SettingStore()
    argv = ["quaver", "--config-path", "missing.json"]
    with patch.object(sys, "argv", argv):
        with pytest.raises(QuaverConfigException):
            settings.load()


@pytest.mark.usefixtures("setup_test_dir")
@pytest.mark.parametrize(
    "content",
    (JUNK_TEXT, "[1, 2]", '{"bogus": 1}'),
    ids=("junk", "list", "key"),
)
def test_load__config_invalid(content: str):
    Path(".quaver.json").write_text(content)
    settings = SettingStore()
    with patch.object(sys, "argv", ["quaver"]):
        with pytest.raises(QuaverConfigException):
            settings.load()
