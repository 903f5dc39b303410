import os
import tempfile
from pathlib import Path
from shutil import rmtree

import pytest

from quaver.midi_io import write_smf
from tests import MISSION_EVENTS, PPQN


@pytest.fixture
def setup_test_dir(request):
    orig_dir = os.getcwd()
    tmp_dir = tempfile.mkdtemp()
    os.chdir(tmp_dir)

    def finalizer():
        os.chdir(orig_dir)
        rmtree(tmp_dir)

    request.addfinalizer(finalizer)


@pytest.fixture
def mission_midi():
    """Writes the Mission extract as a MIDI file in the working directory."""

    def fn(name: str = "mission.mid") -> Path:
        path = Path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(write_smf(MISSION_EVENTS, PPQN))
        return path

    return fn
