"""Configuration loading: defaults < --config file < command-line flags."""

import copy
import json
from dataclasses import dataclass, field
from typing import Optional
from pathlib import Path

from jsonschema import Draft7Validator

from .entities.params import ModelParams, make_params
from .utils.errors import InvalidParameterError

PACKAGE_DIR = Path(__file__).resolve().parent
DEFAULT_CONFIG_PATH = PACKAGE_DIR / 'config.json'
SCHEMA_DIR = PACKAGE_DIR / 'schemas'

OUTPUT_FORMATS = ('csv', 'json')

CONFIG_SCHEMA = {
    'type': 'object',
    'properties': {
        'model': {
            'type': 'object',
            'properties': {
                'v0': {'type': 'number'},
                'a': {'type': 'number'},
                'h2m': {'type': 'number'},
            },
        },
        'output': {
            'type': 'object',
            'properties': {
                'format': {'enum': list(OUTPUT_FORMATS)},
                'out': {'type': ['string', 'null']},
            },
        },
    },
    'additionalProperties': {'type': 'object'},
}


def load_json_file(filepath):
    """Loads a JSON file."""
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as exc:
        raise InvalidParameterError(f"config file not found: {filepath}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"config file {filepath} is not valid JSON: {exc}") from exc


def merge(base, override):
    """Recursive dict merge; values in ``override`` win, None values are skipped."""
    result = copy.deepcopy(base)
    for key, value in override.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = merge(result[key], value)
        else:
            result[key] = value
    return result


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one command."""
    command: str
    params: ModelParams
    output_format: str = 'csv'
    out: Optional[str] = None
    options: dict = field(default_factory=dict)

    def echo(self):
        """Config as recorded in result documents."""
        return {
            'command': self.command,
            'model': self.params.as_dict(),
            'format': self.output_format,
            'options': self.options,
        }


def load_run_config(command, config_path=None, overrides=None, defaults_path=DEFAULT_CONFIG_PATH):
    """Merge defaults, an optional user config file and flag overrides into a RunConfig."""
    config = load_json_file(defaults_path)
    if config_path is not None:
        config = merge(config, load_json_file(config_path))
    if overrides:
        config = merge(config, overrides)

    errors = sorted(Draft7Validator(CONFIG_SCHEMA).iter_errors(config), key=lambda e: list(e.path))
    if errors:
        where = '/'.join(str(part) for part in errors[0].path) or '<root>'
        raise InvalidParameterError(f"invalid configuration at {where}: {errors[0].message}")

    model = config.get('model', {})
    params = make_params(model.get('v0'), model.get('a'), model.get('h2m', 1.0))
    output = config.get('output', {})
    section = command.replace('-', '_')
    return RunConfig(
        command=command,
        params=params,
        output_format=output.get('format', 'csv'),
        out=output.get('out'),
        options=dict(config.get(section, {})),
    )
