# -*- coding: utf-8 -*-
"""
:Module:            argremask.utils.log_utils
:Synopsis:          Collection of logging utilities and functions
:Usage:             ``from argremask.utils import log_utils``
:Example:           ``logger = log_utils.initialize_logging(__name__)``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Optional, Union

from .. import constants as const

LOGGING_DEFAULTS = {
    'logger_name': const.PACKAGE_NAME,
    'log_level': 'info',
    'formatter': logging.Formatter('%(asctime)s - %(levelname)s - %(name)s - %(message)s'),
    'date_format': '%Y-%m-%d %I:%M:%S',
}
HANDLER_DEFAULTS = {
    'file_log_level': 'info',
    'console_log_level': 'warning',
    'log_file': f'{const.PACKAGE_NAME}.log',
}
LOG_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL,
}


def initialize_logging(
    logger_name: Optional[str] = None,
    log_level: Optional[str] = None,
    formatter: Union[str, logging.Formatter, None] = None,
    debug: bool = False,
    file_output: bool = False,
    file_log_level: Optional[str] = None,
    log_file: Optional[str] = None,
    overwrite_log_files: bool = False,
    console_output: bool = False,
    console_log_level: Optional[str] = None,
) -> logging.Logger:
    """This function initializes logging for a module of the argremask library.

    Library modules call this with only their ``__name__`` so that they receive a :py:class:`logging.NullHandler`;
    the command-line entry point attaches console output through :py:func:`set_package_level`.

    :param logger_name: The name of the logger instance (``argremask`` by default)
    :type logger_name: str, None
    :param log_level: The general logging level (falls back to the ``REMASK_LOG_LEVEL`` environment variable)
    :type log_level: str, None
    :param formatter: The log format to utilize for the handlers
    :type formatter: str, logging.Formatter, None
    :param debug: Forces every level to ``debug`` when ``True``
    :type debug: bool
    :param file_output: Adds a :py:class:`logging.FileHandler` when ``True``
    :type file_output: bool
    :param file_log_level: The level for the file handler
    :type file_log_level: str, None
    :param log_file: The log file name or path (``argremask.log`` in the home directory by default)
    :type log_file: str, None
    :param overwrite_log_files: Overwrites rather than appends to the log file when ``True``
    :type overwrite_log_files: bool
    :param console_output: Adds console stream handlers when ``True``
    :type console_output: bool
    :param console_log_level: The level for the console handlers
    :type console_log_level: str, None
    :returns: The configured :py:class:`logging.Logger` instance
    """
    logger_name, log_levels, formatter = _apply_defaults(logger_name, formatter, debug, log_level, file_log_level,
                                                         console_log_level)
    logger = logging.getLogger(logger_name)
    _set_logging_level(logger, log_levels['general'])
    if not (file_output or console_output):
        if not any(isinstance(_handler, logging.NullHandler) for _handler in logger.handlers):
            logger.addHandler(logging.NullHandler())
        return logger
    if file_output:
        _add_file_handler(logger, log_levels['file'], log_file, overwrite_log_files, formatter)
    if console_output:
        _add_stream_handler(logger, log_levels['console'], formatter)
    return logger


def set_package_level(log_level: str, console_output: bool = True, stderr_only: bool = True) -> logging.Logger:
    """This function applies one level to every ``argremask`` logger and optionally attaches console output.

    :param log_level: The level to apply (``debug``, ``info``, ``warning``, ``error`` or ``critical``)
    :type log_level: str
    :param console_output: Attaches a console handler to the package logger when ``True`` (default)
    :type console_output: bool
    :param stderr_only: Routes every console message to ``stderr`` rather than splitting by level (default)
    :type stderr_only: bool
    :returns: The package-level :py:class:`logging.Logger` instance
    """
    package_logger = logging.getLogger(const.PACKAGE_NAME)
    for _name, _candidate in list(logging.Logger.manager.loggerDict.items()):
        if isinstance(_candidate, logging.Logger) and (_name == const.PACKAGE_NAME or _name.startswith(f'{const.PACKAGE_NAME}.')):
            _set_logging_level(_candidate, log_level)
    _set_logging_level(package_logger, log_level)
    for _handler in list(package_logger.handlers):
        if getattr(_handler, '_argremask_console', False):
            package_logger.removeHandler(_handler)
    if console_output:
        if stderr_only:
            _handler = logging.StreamHandler(sys.stderr)
            _set_logging_level(_handler, log_level)
            _handler.setFormatter(LOGGING_DEFAULTS['formatter'])
            _handler._argremask_console = True  # type: ignore[attr-defined]
            package_logger.addHandler(_handler)
        else:
            _add_stream_handler(package_logger, log_level, LOGGING_DEFAULTS['formatter'])
    return package_logger


class LessThanFilter(logging.Filter):
    """This class allows filters to be set to limit log levels to only less than a specified level.

    .. seealso:: `Zoey Greer <https://stackoverflow.com/users/5124424/zoey-greer>`_ is the original author of
                 this class which was provided on `Stack Overflow <https://stackoverflow.com/a/31459386>`_.
    """

    def __init__(self, exclusive_maximum: int, name: str = ''):
        """This method instantiates the :py:class:`argremask.utils.log_utils.LessThanFilter` class object."""
        super().__init__(name)
        self.max_level = exclusive_maximum

    def filter(self, record: logging.LogRecord) -> int:
        """This method returns a Boolean integer value indicating whether a message should be logged.

        .. note:: A non-zero return indicates that the message will be logged.
        """
        return 1 if record.levelno < self.max_level else 0


def _apply_defaults(_logger_name, _formatter, _debug, _log_level, _file_level, _console_level):
    """This function applies default values to the configuration settings if not explicitly defined.

    The general level resolves in the order: explicit argument, ``REMASK_LOG_LEVEL``, package default.

    :returns: The logger name, a dictionary of levels per handler type and the formatter
    """
    _env_level = os.environ.get(const.ENV_VARS.LOG_LEVEL, '').strip().lower() or None
    _general = _log_level or _env_level or LOGGING_DEFAULTS.get('log_level')
    _log_levels = {'general': _general, 'file': _file_level, 'console': _console_level}
    _logger_name = _logger_name or LOGGING_DEFAULTS.get('logger_name')
    if _debug:
        _log_levels = {_log_type: 'debug' for _log_type in _log_levels}
    else:
        for _lvl_type, _lvl_value in _log_levels.items():
            if _lvl_value is None:
                _log_levels[_lvl_type] = _general
    if _formatter and isinstance(_formatter, str):
        _formatter = logging.Formatter(_formatter)
    _formatter = _formatter or LOGGING_DEFAULTS.get('formatter')
    return _logger_name, _log_levels, _formatter


def _set_logging_level(_logger, _log_level: Optional[str]):
    """This function sets the logging level for a :py:class:`logging.Logger` or :py:class:`logging.Handler`.

    Unknown level names leave the current level untouched.

    :param _logger: The logger or handler instance
    :param _log_level: The log level as a string (``debug``, ``info``, ``warning``, ``error`` or ``critical``)
    :type _log_level: str, None
    :returns: The same instance with a logging level set where applicable
    """
    if _log_level and _log_level.lower() in LOG_LEVELS:
        _logger.setLevel(LOG_LEVELS[_log_level.lower()])
    return _logger


def _add_file_handler(_logger, _log_level, _log_file, _overwrite, _formatter):
    """This function adds a :py:class:`logging.FileHandler` to the :py:class:`logging.Logger` instance.

    .. note:: A bare file name is placed in the home directory of the current user.
    """
    _home_dir = str(Path.home())
    if _log_file:
        if not any((('/' in _log_file), ('\\' in _log_file))):
            _log_file = os.path.join(_home_dir, _log_file)
    else:
        _log_file = os.path.join(_home_dir, HANDLER_DEFAULTS['log_file'])
    _write_mode = 'w' if _overwrite else 'a'
    _handler = logging.FileHandler(_log_file, _write_mode)
    _set_logging_level(_handler, _log_level or HANDLER_DEFAULTS.get('file_log_level'))
    _handler.setFormatter(_formatter)
    _logger.addHandler(_handler)
    return _logger


def _add_stream_handler(_logger, _log_level, _formatter):
    """This function adds console output, splitting ``DEBUG``/``INFO`` to ``stdout`` where those levels apply."""
    _log_level = _log_level or HANDLER_DEFAULTS.get('console_log_level')
    if _log_level.upper() in ('DEBUG', 'INFO'):
        return _add_split_stream_handlers(_logger, _log_level, _formatter)
    _handler = logging.StreamHandler()
    _set_logging_level(_handler, _log_level)
    _handler.setFormatter(_formatter)
    _handler._argremask_console = True  # type: ignore[attr-defined]
    _logger.addHandler(_handler)
    return _logger


def _add_split_stream_handlers(_logger, _log_level, _formatter):
    """This function splits messages into a ``stdout`` or ``stderr`` handler depending on the log level.

    .. seealso:: Refer to the documentation for the :py:class:`argremask.utils.log_utils.LessThanFilter` for
                 more information on how this filtering is implemented and for credit to the original author.
    """
    _stdout_handler = logging.StreamHandler(sys.stdout)
    _set_logging_level(_stdout_handler, _log_level)
    _stdout_handler.addFilter(LessThanFilter(logging.WARNING))
    _stdout_handler.setFormatter(_formatter)
    _stdout_handler._argremask_console = True  # type: ignore[attr-defined]
    _logger.addHandler(_stdout_handler)

    _stderr_handler = logging.StreamHandler(sys.stderr)
    _stderr_handler.setLevel(logging.WARNING)
    _stderr_handler.setFormatter(_formatter)
    _stderr_handler._argremask_console = True  # type: ignore[attr-defined]
    _logger.addHandler(_stderr_handler)
    return _logger
