"""Functions to read run configurations."""

import json
import pathlib
from typing import Any, Union

from blockadepy.core import config, exceptions

logger = config.get_logger()


def read_config_file(file_name: Union[pathlib.Path, str]) -> dict[str, Any]:
    """Read a flat JSON configuration file.

    Args:
        file_name: Path to the configuration file.

    Returns:
        The key/value pairs of the file.

    Raises:
        ConfigError: If the file is missing, not valid JSON, or not a flat object.
    """
    path = pathlib.Path(file_name)
    logger.debug("Reading configuration from %s.", path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc_info:
        raise exceptions.ConfigError(
            f"Could not read configuration file {path}: {exc_info}"
        ) from exc_info

    if not isinstance(data, dict):
        raise exceptions.ConfigError(
            f"Configuration file {path} must contain a JSON object."
        )
    nested = [key for key, value in data.items() if isinstance(value, (dict, list))]
    if nested:
        raise exceptions.ConfigError(
            f"Configuration keys must be flat, found nested values for {nested}."
        )
    return data


def parse_override(text: str) -> tuple[str, Any]:
    """Parse a `key=value` override.

    The value is decoded as JSON when possible (numbers, booleans, null), and
    kept as a string otherwise.

    Args:
        text: The override, e.g. `J=6` or `axis1=g:-10:10:201`.

    Returns:
        The key and decoded value.

    Raises:
        ConfigError: If the text has no `=` or an empty key.
    """
    key, separator, raw = text.partition("=")
    key = key.strip()
    if not separator or not key:
        raise exceptions.ConfigError(f"Override '{text}' must be formatted key=value.")
    raw = raw.strip()
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value
