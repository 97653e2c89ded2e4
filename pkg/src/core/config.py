#!/usr/bin/env python3
"""
Configuration - config.json merged over built-in defaults, with env overrides
"""

import json
import os
from pathlib import Path

from dotenv import load_dotenv

from .errors import InvalidSpec

# Load environment variables
load_dotenv()

DEFAULTS = {
    'nmax': 12,
    'max_order': 64,
    'format': 'json',
    'closed_form_samples': 30,
    'seed': 20240611,
    'beta_samples': ['1/2', '-1/2', '2', '-2', '3'],
    'maroni_limit': None,
}


INT_KEYS = ('nmax', 'max_order', 'seed', 'closed_form_samples')


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def check_types(config, config_path):
    for key in INT_KEYS:
        if not _is_int(config[key]):
            raise InvalidSpec(f"{key} in {config_path} must be an integer, got {config[key]!r}")
    if config['maroni_limit'] is not None and not _is_int(config['maroni_limit']):
        raise InvalidSpec(f"maroni_limit in {config_path} must be an integer or null, "
                          f"got {config['maroni_limit']!r}")
    if not isinstance(config['beta_samples'], list):
        raise InvalidSpec(f"beta_samples in {config_path} must be a list, got {config['beta_samples']!r}")
    if not isinstance(config['format'], str):
        raise InvalidSpec(f"format in {config_path} must be a string, got {config['format']!r}")


def load_config(path=None):
    """Load configuration from JSON file; missing default config.json is not an error"""
    config = dict(DEFAULTS)

    explicit = path is not None or os.getenv('VOPKIT_CONFIG')
    config_path = Path(path or os.getenv('VOPKIT_CONFIG') or 'config.json')
    if config_path.exists():
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
        except ValueError as e:
            raise InvalidSpec(f"config file {config_path} is not valid JSON: {e}") from e
        if not isinstance(loaded, dict):
            raise InvalidSpec(f"config file {config_path} must hold a JSON object")
        unknown = sorted(set(loaded) - set(DEFAULTS))
        if unknown:
            raise InvalidSpec(f"unknown config keys in {config_path}: {', '.join(unknown)}")
        config.update(loaded)
    elif explicit:
        raise InvalidSpec(f"config file not found: {config_path}")

    override = os.getenv('VOPKIT_MAX_ORDER')
    if override:
        try:
            config['max_order'] = int(override)
        except ValueError as e:
            raise InvalidSpec(f"VOPKIT_MAX_ORDER must be an integer, got {override!r}") from e

    check_types(config, config_path)
    if config['max_order'] < 1:
        raise InvalidSpec(f"max_order must be >= 1, got {config['max_order']}")
    if config['format'] not in ('json', 'csv', 'text'):
        raise InvalidSpec(f"unknown output format {config['format']!r}")
    return config
