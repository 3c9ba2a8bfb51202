# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:         tests.unit.test_core_utils
:Synopsis:       This module is used by pytest to test core utility functions
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

import numpy as np
import pytest

from argremask import errors
from argremask.utils import core_utils


@pytest.mark.parametrize(
    ('file_name', 'content', 'expected'),
    [
        ('config.json', '{"seed": 1}', 'json'),
        ('config.yaml', 'seed: 1', 'yaml'),
        ('config.yml', 'seed: 1', 'yaml'),
        ('config.txt', '# comment line\n{"seed": 1}', 'json'),
        ('config.cfg', '\n# run\nseed = 1\n', 'kv'),
        ('config', 'seed: 1\n', 'yaml'),
    ],
)
def test_get_file_type(tmp_path, file_name, content, expected):
    """This function tests file type detection by extension and by content."""
    path = tmp_path / file_name
    path.write_text(content)
    assert core_utils.get_file_type(str(path)) == expected


def test_get_file_type_raises_for_unrecognized_content(tmp_path):
    """This function tests get_file_type when the content matches no supported format."""
    path = tmp_path / 'config.txt'
    path.write_text('# only a comment\nplain words\n')
    with pytest.raises(errors.exceptions.UnknownFileTypeError):
        core_utils.get_file_type(str(path))


def test_get_file_type_raises_for_missing_file(tmp_path):
    """This function tests get_file_type with a path that does not exist."""
    with pytest.raises(FileNotFoundError):
        core_utils.get_file_type(str(tmp_path / 'missing.json'))


def test_get_rng_streams_are_reproducible_and_independent():
    """This function tests that named sub-streams repeat for one seed and differ across names and keys."""
    first = core_utils.get_rng(7, 'plan', 'x1').random(5)
    assert np.array_equal(first, core_utils.get_rng(7, 'plan', 'x1').random(5))
    assert not np.array_equal(first, core_utils.get_rng(7, 'fill', 'x1').random(5))
    assert not np.array_equal(first, core_utils.get_rng(7, 'plan', 'x2').random(5))
    assert not np.array_equal(first, core_utils.get_rng(8, 'plan', 'x1').random(5))


@pytest.mark.parametrize('seed', [-1, True, 1.5, '3'])
def test_get_rng_rejects_invalid_seeds(seed):
    """This function tests that only non-negative integer seeds are accepted."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        core_utils.get_rng(seed, 'plan')


def test_stable_crc_is_fixed():
    """This function tests that the CRC of a value does not depend on the process."""
    assert core_utils.stable_crc('plan') == core_utils.stable_crc('plan')
    assert core_utils.stable_crc(3) == core_utils.stable_crc('3')
    assert core_utils.stable_crc('') == 0


def test_sha256_hex_accepts_text_and_bytes():
    """This function tests that text is hashed as UTF-8."""
    assert core_utils.sha256_hex('abc') == core_utils.sha256_hex(b'abc')
    assert core_utils.sha256_hex('abc').startswith('ba7816bf')


@pytest.mark.parametrize(('value', 'expected'), [(0.3 * 10, 3), (2.5, 3), (2.4999, 2), ((1 / 3) * 3, 1), (0.0, 0)])
def test_round_half_up(value, expected):
    """This function tests rounding with halves going up and float error absorbed."""
    assert core_utils.round_half_up(value) == expected


def test_dump_json_is_deterministic():
    """This function tests sorted keys, compact separators and unescaped UTF-8 text."""
    assert core_utils.dump_json({'b': 1, 'a': 'Barré'}) == '{"a":"Barré","b":1}'
    assert core_utils.dump_json({'b': 1, 'a': 2}, indent=2) == '{\n  "a": 2,\n  "b": 1\n}'


def test_write_and_read_text(tmp_path):
    """This function tests that text round-trips with ``\\n`` line endings."""
    path = tmp_path / 'out.txt'
    core_utils.write_text(str(path), 'first\nsecond\n')
    assert path.read_bytes() == b'first\nsecond\n'
    assert core_utils.read_text(str(path)) == 'first\nsecond\n'
    with pytest.raises(FileNotFoundError):
        core_utils.read_text(str(tmp_path / 'absent.txt'))
