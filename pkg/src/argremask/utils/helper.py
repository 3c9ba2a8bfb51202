# -*- coding: utf-8 -*-
"""
:Module:            argremask.utils.helper
:Synopsis:          Module that allows the argremask library to leverage a run configuration file
:Usage:             ``from argremask.utils import helper``
:Example:           ``settings = helper.get_helper_settings('/tmp/run.cfg')``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import json
from typing import Iterable, Optional

import yaml

from .. import constants as const
from .. import errors
from . import log_utils
from .core_utils import get_file_type

# Initialize logging within the module
logger = log_utils.initialize_logging(__name__)

_VALID_FILE_TYPES = (const.FILE_EXTENSIONS.YAML, const.FILE_EXTENSIONS.YML, const.FILE_EXTENSIONS.JSON,
                     const.FILE_EXTENSIONS.KV)


def parse_key_value_text(text: str, source: str = '<string>') -> dict[str, str]:
    """This function parses flat ``key = value`` text; blank lines and ``#`` comments are ignored.

    :param text: The configuration text
    :type text: str
    :param source: The file name used in error messages
    :type source: str
    :returns: The raw (string) values by key
    :raises: :py:exc:`argremask.errors.exceptions.DatasetParseError`
    """
    settings = {}
    for _number, _line in enumerate(text.splitlines(), start=1):
        line = _line.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise errors.exceptions.DatasetParseError(file=source, line=_number, message="Expected 'key = value'.")
        key, value = (_part.strip() for _part in line.split('=', 1))
        if not key:
            raise errors.exceptions.DatasetParseError(file=source, line=_number, message='The key is empty.')
        settings[key.replace('-', '_')] = value
    return settings


def import_helper_file(file_path: str, file_type: str) -> dict:
    """This function imports a YAML (.yml, .yaml), JSON (.json) or flat ``key = value`` configuration file.

    :param file_path: The file path to the configuration file
    :type file_path: str
    :param file_type: Defines the file type as ``yaml``, ``yml``, ``json`` or ``kv``
    :type file_type: str
    :returns: The parsed configuration data
    :raises: :py:exc:`FileNotFoundError`,
             :py:exc:`argremask.errors.exceptions.InvalidHelperFileTypeError`
    """
    with open(file_path, encoding='utf-8') as cfg_file:
        file_type = file_type.replace('.', '')
        if file_type in (const.FILE_EXTENSIONS.YML, const.FILE_EXTENSIONS.YAML):
            helper_cfg = yaml.safe_load(cfg_file)
        elif file_type == const.FILE_EXTENSIONS.JSON:
            helper_cfg = json.load(cfg_file)
        elif file_type == const.FILE_EXTENSIONS.KV:
            helper_cfg = parse_key_value_text(cfg_file.read(), file_path)
        else:
            raise errors.exceptions.InvalidHelperFileTypeError()
    if helper_cfg is None:
        helper_cfg = {}
    if not isinstance(helper_cfg, dict):
        raise errors.exceptions.DatasetParseError(file=file_path, message='The configuration must be a mapping of keys.')
    logger.info(f'The configuration file {file_path} was imported successfully.')
    return helper_cfg


def _collect_values(_valid_keys: Iterable[str], _helper_cfg: dict, _helper_dict: Optional[dict] = None) -> dict:
    """This function collects the values of known keys, converting YAML-style booleans along the way."""
    _helper_dict = {} if not _helper_dict else _helper_dict
    for _key in _valid_keys:
        if _key in _helper_cfg:
            _key_val = _helper_cfg[_key]
            if isinstance(_key_val, (str, bool)) and _key_val in const.YAML_BOOLEAN_MAPPING:
                _key_val = const.YAML_BOOLEAN_MAPPING.get(_key_val)
            _helper_dict[_key] = _key_val
    return _helper_dict


def get_helper_settings(file_path: str, file_type: Optional[str] = None, valid_keys: Optional[Iterable[str]] = None) -> dict:
    """This function returns a dictionary of the settings defined in a configuration file.

    Keys outside ``valid_keys`` are reported with a warning and ignored.

    :param file_path: The file path to the configuration file
    :type file_path: str
    :param file_type: ``yaml``, ``json`` or ``kv`` (inferred from the extension or the content when omitted)
    :type file_type: str, None
    :param valid_keys: The recognized setting names (all keys are kept when omitted)
    :type valid_keys: list, tuple, set, None
    :returns: Dictionary of settings
    :raises: :py:exc:`argremask.errors.exceptions.InvalidHelperFileTypeError`,
             :py:exc:`argremask.errors.exceptions.UnknownFileTypeError`
    """
    if file_type not in _VALID_FILE_TYPES:
        file_type = get_file_type(file_path)
    helper_cfg = {str(_key).replace('-', '_'): _value for _key, _value in import_helper_file(file_path, file_type).items()}
    if valid_keys is None:
        return _collect_values(helper_cfg.keys(), helper_cfg)
    valid_keys = tuple(valid_keys)
    unknown = sorted(set(helper_cfg) - set(valid_keys))
    if unknown:
        errors.handlers.display_warning(f"Ignoring unknown configuration keys in {file_path}: {', '.join(unknown)}")
    return _collect_values(valid_keys, helper_cfg)
