import argparse
from typing import Any, Dict

from quaver.const import CONFIG_FILENAME, USAGE
from quaver.setting_spec import SettingSpec
from quaver.types import SettingType

__all__ = ["ArgLoader"]


class ArgLoader(argparse.ArgumentParser):
    """
    An ArgumentParser that registers settings by group and renders a help
    message listing positionals, parameters and directives separately.
    """

    def __init__(self, *specs: SettingSpec):
        super().__init__(
            prog="quaver",
            epilog="Rules, tunes, statistics and audio are written to "
            "--out-dir.",
            usage=USAGE,
            argument_default=argparse.SUPPRESS,
        )
        self._positional_group = self.add_argument_group()
        self._parameter_group = self.add_argument_group()
        self._directive_group = self.add_argument_group()
        for spec in specs:
            if spec.group is not SettingType.CONFIGURATION:
                self._add_spec(spec)

    def _add_spec(self, spec: SettingSpec):
        try:
            group = {
                SettingType.DIRECTIVE: self._directive_group,
                SettingType.PARAMETER: self._parameter_group,
                SettingType.POSITIONAL: self._positional_group,
            }[spec.group]
        except KeyError:
            raise RuntimeError(f"{spec.group.value} settings take no flags")
        args, kwargs = spec.registration
        if not args or not kwargs.get("help"):
            raise RuntimeError(f"cannot register {spec}")
        group.add_argument(*args, **kwargs)

    def __iadd__(self, spec: SettingSpec) -> "ArgLoader":
        self._add_spec(spec)
        return self

    def error(self, message: str):
        raise RuntimeError(message)

    def load(self) -> Dict[str, Any]:
        load_arguments, unknowns = self.parse_known_args()
        if unknowns:
            raise RuntimeError(f"invalid arguments: {','.join(unknowns)}")
        return vars(load_arguments)

    def format_help(self) -> str:
        def help_for_group(group: SettingType) -> str:
            actions = getattr(self, f"_{group.value}_group")._group_actions
            return "\n  ".join([action.help for action in actions])

        return f"""
{self.usage}

POSITIONAL:
  {help_for_group(SettingType.POSITIONAL)}

PARAMETERS:
  The following flags tune learning, generation and singing. Their long forms
  may also be set in a '{CONFIG_FILENAME}' config file, in which case cli
  arguments will take precedence.

  {help_for_group(SettingType.PARAMETER)}

DIRECTIVES:
  Directives are one-off arguments that report on or change how settings are
  loaded. They can't be used in '{CONFIG_FILENAME}'.

  {help_for_group(SettingType.DIRECTIVE)}

{self.epilog}
"""
