#!/usr/bin/env python3

from quaver import tty
from quaver.const import IS_DEBUG
from quaver.exceptions import QuaverException
from quaver.frontends import Cli
from quaver.setting_store import SettingStore


def main():  # pragma: no cover
    """
    A wrapper for the program entrypoint that reports package errors and
    formats any other uncaught exception in a crash report template.
    """
    settings = SettingStore()
    try:
        settings.load()
        frontend = Cli(settings)
        frontend.launch()
    except QuaverException as e:
        tty.error(e)
        raise SystemExit(2)
    except SystemExit:
        raise
    except:
        if IS_DEBUG:
            # allow exceptions to raised when debugging
            raise
        else:
            # wrap exceptions in crash report under normal operation
            tty.crash_report()


if __name__ == "__main__":  # pragma: no cover
    main()
