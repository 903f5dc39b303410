"""A collection of utility functions non-specific to quaver's domain logic."""

import json
from os.path import expandvars
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

__all__ = [
    "crawl_out",
    "format_bits",
    "format_dict",
    "format_exception",
    "format_iter",
    "json_loads",
]


def crawl_out(filename: str) -> Optional[Path]:
    """Returns the nearest filename up from the working directory, or home."""
    cwd = Path.cwd()
    for directory in (cwd, *cwd.parents, Path.home()):
        if (directory / filename).exists():
            return directory / filename
    return None


def format_bits(values: Iterable[int], width: int) -> str:
    """Formats integers as space separated, zero padded bitstrings."""
    return " ".join(f"{value:0{width}b}" for value in values)


def format_dict(body: Dict[Any, Any]) -> str:
    """
    Formats a dictionary into a multi-line bulleted string of key-value pairs.
    """
    return "\n".join(
        [f" - {k} = {getattr(v, 'value', v)}" for k, v in body.items()]
    )


def format_exception(body: Exception) -> str:
    return str(body)


def format_iter(body: list) -> str:
    """
    Formats an iterable into a multi-line bulleted string of its values.
    """
    return "\n".join(sorted([f" - {getattr(v, 'value', v)}" for v in body]))


def json_loads(path: str) -> Dict[str, Any]:
    """Reads a JSON object from path; a missing or empty file reads as {}."""
    target = Path(expandvars(path)).expanduser()
    text = target.read_text() if target.exists() else ""
    data = json.loads(text) if text.strip() else {}
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object")
    return data
