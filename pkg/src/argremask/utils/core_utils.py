# -*- coding: utf-8 -*-
"""
:Module:            argremask.utils.core_utils
:Synopsis:          Collection of supporting utilities and functions to complement the primary modules
:Usage:             ``from argremask.utils import core_utils``
:Example:           ``rng = core_utils.get_rng(7, 'fill')``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import hashlib
import json
import math
import os.path
import zlib
from typing import Any, Union

import numpy as np

from .. import constants as const
from .. import errors
from . import log_utils

# Initialize the logger for this module
logger = log_utils.initialize_logging(__name__)


def get_file_type(file_path: str) -> str:
    """This function attempts to identify if a given file path is for a YAML, JSON or flat ``key = value`` file.

    Files without a recognized extension are sniffed: a leading ``{`` marks JSON, a ``key: value`` line marks
    YAML and a ``key = value`` line marks the flat format.

    :param file_path: The full path to the file
    :type file_path: str
    :returns: The file type in string format (``yaml``, ``json`` or ``kv``)
    :raises: :py:exc:`FileNotFoundError`,
             :py:exc:`argremask.errors.exceptions.UnknownFileTypeError`
    """
    if not os.path.isfile(file_path):
        raise FileNotFoundError(f'Unable to locate the following file: {file_path}')
    if file_path.endswith(const.FILE_EXTENSIONS.DOT_JSON):
        return const.FILE_EXTENSIONS.JSON
    if file_path.endswith(const.FILE_EXTENSIONS.DOT_YML) or file_path.endswith(const.FILE_EXTENSIONS.DOT_YAML):
        return const.FILE_EXTENSIONS.YAML
    logger.debug(f"Unable to recognize the file type of '{file_path}' by its extension and the content will be sniffed.")
    file_type = 'unknown'
    with open(file_path, encoding='utf-8') as cfg_file:
        for line in cfg_file:
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if line.startswith('{'):
                file_type = const.FILE_EXTENSIONS.JSON
            elif '=' in line:
                file_type = const.FILE_EXTENSIONS.KV
            elif ':' in line:
                file_type = const.FILE_EXTENSIONS.YAML
            break
    if file_type == 'unknown':
        raise errors.exceptions.UnknownFileTypeError(file=file_path)
    return file_type


def stable_crc(value: Union[str, int]) -> int:
    """This function returns the unsigned CRC-32 of a value's string form (stable across processes)."""
    return zlib.crc32(str(value).encode('utf-8')) & 0xFFFFFFFF


def sha256_hex(payload: Union[str, bytes]) -> str:
    """This function returns the SHA-256 hex digest of a string or bytes payload.

    :param payload: The data to hash (strings are encoded as UTF-8)
    :type payload: str, bytes
    :returns: The hex digest
    """
    if isinstance(payload, str):
        payload = payload.encode('utf-8')
    return hashlib.sha256(payload).hexdigest()


def get_rng(seed: int, stream: str, *keys: Union[str, int]) -> np.random.Generator:
    """This function derives an independent, named random sub-stream from a single run seed.

    Each stream is keyed by a stable CRC of its name (and of any extra keys such as an instance identifier), so
    adding a new consumer never shifts the draws seen by existing ones.

    :param seed: The run seed (must be a non-negative integer)
    :type seed: int
    :param stream: The sub-stream name (e.g. ``train``, ``corrupt``, ``plan``, ``fill``)
    :type stream: str
    :param keys: Additional keys that further separate the stream
    :returns: A seeded :py:class:`numpy.random.Generator`
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise errors.exceptions.InvalidParameterError(param='seed', value=seed)
    entropy = [int(seed), stable_crc(stream)] + [stable_crc(_key) for _key in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def round_half_up(value: float) -> int:
    """This function rounds a non-negative value to the nearest integer with halves rounding up.

    A tolerance absorbs float error so that products such as ``0.3 * 10`` or ``(1 / 3) * 3`` land on the
    intended integer.
    """
    return int(math.floor(value + 0.5 + const.FLOAT_TOLERANCE))


def dump_json(data: Any, indent: Union[int, None] = None) -> str:
    """This function serializes data as deterministic JSON (sorted keys, no ASCII escaping of UTF-8 text).

    :param data: The JSON-compatible data to serialize
    :param indent: Optional indentation for human-readable output
    :type indent: int, None
    :returns: The serialized JSON string
    """
    separators = (',', ': ') if indent is not None else (',', ':')
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=indent, separators=separators)


def write_text(file_path: str, content: str) -> None:
    """This function writes UTF-8 text with ``\\n`` line endings on every platform."""
    with open(file_path, 'w', encoding='utf-8', newline='\n') as out_file:
        out_file.write(content)
    logger.debug(f'Wrote {len(content)} characters to {file_path}')


def read_text(file_path: str) -> str:
    """This function reads a UTF-8 text file.

    :raises: :py:exc:`FileNotFoundError`
    """
    if not os.path.isfile(file_path):
        raise FileNotFoundError(f'Unable to locate the following file: {file_path}')
    with open(file_path, encoding='utf-8') as in_file:
        return in_file.read()
