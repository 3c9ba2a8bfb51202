# -*- coding: utf-8 -*-
"""
:Module:            argremask.utils.version
:Synopsis:          Utilities for working with the package version
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Optional

try:
    import tomllib  # Python 3.11+
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib  # type: ignore[import-not-found,no-redef]

from .. import constants as const
from .. import errors
from . import log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)


def get_full_version() -> str:
    """This function returns the current full version of the ``argremask`` package.

    The version is read from the installed package metadata and, for source checkouts without an editable
    install, from the ``pyproject.toml`` file.

    :returns: The current package version as a string
    """
    try:
        return version(const.PACKAGE_NAME)
    except PackageNotFoundError:
        logger.debug('Package is not installed and version will be retrieved from pyproject.toml file')
        return get_version_from_pyproject()


def get_major_minor_version(full_version: Optional[str] = None) -> str:
    """Return the current major.minor (i.e., X.Y) version of the package.

    :param full_version: The full package version (e.g. X.Y.Z)
    :type full_version: str, None
    :returns: The current package version (X.Y) as a string
    """
    if not full_version:
        full_version = get_full_version()
    parts = full_version.split('.')
    if len(parts) >= 2:
        return '.'.join(parts[:2])
    return full_version


def get_version_from_pyproject(pyproject_path: Optional[str] = None) -> str:
    """This function retrieves the current version from the pyproject.toml file.

    :param pyproject_path: The path to the pyproject.toml file (optional)
    :type pyproject_path: str, None
    :returns: The current package version as a string
    """
    path = Path(pyproject_path) if pyproject_path else Path(__file__).resolve().parents[3] / 'pyproject.toml'
    if not path.is_file():
        logger.warning(f"{const.PACKAGE_NAME} version could not be retrieved; falling back to '0.0.0' as version")
        return '0.0.0'

    with path.open('rb') as fp:
        data = tomllib.load(fp)

    # PEP 621
    project_version = data.get('project', {}).get('version')
    if project_version:
        return str(project_version)

    # Poetry legacy layout
    project_version = data.get('tool', {}).get('poetry', {}).get('version')
    if project_version:
        return str(project_version)

    logger.warning(f"{const.PACKAGE_NAME} version could not be retrieved; falling back to '0.0.0' as version")
    return '0.0.0'


def check_archive_version(archive: dict, path: str) -> int:
    """This function verifies that a model or classifier archive was written in a readable format version.

    Archives written before the version field existed are read as version ``1``.

    :param archive: The decoded archive
    :type archive: dict
    :param path: The archive path (used in the error message)
    :type path: str
    :returns: The archive format version
    :raises: :py:exc:`argremask.errors.exceptions.DatasetParseError`
    """
    found = archive.get('format_version', 1)
    if isinstance(found, bool) or not isinstance(found, int) or found < 1:
        raise errors.exceptions.DatasetParseError(file=path, message=f'Invalid archive format version: {found!r}')
    if found > const.ARCHIVE_FORMAT_VERSION:
        logger.error(f'{path} uses archive format {found}; this release of {const.PACKAGE_NAME} reads up to '
                     f'{const.ARCHIVE_FORMAT_VERSION}')
        raise errors.exceptions.DatasetParseError(
            file=path, message=f'Archive format {found} is newer than the supported format {const.ARCHIVE_FORMAT_VERSION}.'
        )
    written_by = archive.get('written_by')
    if written_by and get_major_minor_version(str(written_by)) != get_major_minor_version():
        logger.debug(f'{path} was written by {const.PACKAGE_NAME} {written_by}')
    return found
