# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:         tests.unit.test_log_utils
:Synopsis:       This module is used by pytest to test the logging functionality
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

import logging
import sys

import pytest

from argremask import constants as const
from argremask.utils import log_utils


def _cleanup_logger(logger: logging.Logger) -> None:
    """This function removes and closes handlers for a logger.

    :param logger: The logger instance to clean up
    :type logger: class[logging.Logger]
    :returns: None
    """
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def test_initialize_logging_defaults_to_info_level() -> None:
    """This function verifies that initialize_logging() defaults logger level to INFO and adds a null handler."""
    logger = log_utils.initialize_logging('argremask.test.default.info')
    try:
        assert logger.level == logging.INFO
        assert [type(_handler) for _handler in logger.handlers] == [logging.NullHandler]
        log_utils.initialize_logging('argremask.test.default.info')
        assert len(logger.handlers) == 1
    finally:
        _cleanup_logger(logger)


def test_initialize_logging_reads_environment_level(monkeypatch: pytest.MonkeyPatch) -> None:
    """This function verifies that ``REMASK_LOG_LEVEL`` sets the level when none is passed."""
    monkeypatch.setenv(const.ENV_VARS.LOG_LEVEL, 'DEBUG')
    logger = log_utils.initialize_logging('argremask.test.env.level')
    try:
        assert logger.level == logging.DEBUG
        assert log_utils.initialize_logging('argremask.test.env.level', log_level='error').level == logging.ERROR
    finally:
        _cleanup_logger(logger)


def test_initialize_logging_applies_default_level_to_console_handler(caplog: pytest.LogCaptureFixture) -> None:
    """This function ensures console handlers inherit the default INFO level.

    :param caplog: Pytest fixture capturing log records for assertions
    :type caplog: class[pytest.LogCaptureFixture]
    :returns: None
    """
    logger_name = 'argremask.test.console.default'
    logger = log_utils.initialize_logging(logger_name, console_output=True)
    message = 'default info message'
    try:
        with caplog.at_level(logging.INFO, logger=logger_name):
            logger.info(message)

        stdout_handlers = [
            handler
            for handler in logger.handlers
            if isinstance(handler, logging.StreamHandler) and getattr(handler, 'stream', None) is sys.stdout
        ]
        assert stdout_handlers
        for handler in stdout_handlers:
            assert handler.level == logging.INFO

        assert any(record.levelno == logging.INFO and record.message == message for record in caplog.records)
    finally:
        _cleanup_logger(logger)


def test_file_output_writes_to_the_given_path(tmp_path) -> None:
    """This function verifies that file output writes formatted records to an explicit path."""
    log_file = tmp_path / 'run.log'
    logger = log_utils.initialize_logging('argremask.test.file', file_output=True, log_file=str(log_file),
                                          overwrite_log_files=True)
    try:
        logger.warning('written to file')
        for handler in logger.handlers:
            handler.flush()
        assert 'WARNING - argremask.test.file - written to file' in log_file.read_text()
    finally:
        _cleanup_logger(logger)


def test_set_package_level_routes_console_output_to_stderr(capsys: pytest.CaptureFixture) -> None:
    """This function verifies that the package console handler writes every level to stderr and is replaced."""
    package_logger = log_utils.set_package_level('info')
    try:
        log_utils.set_package_level('debug')
        consoles = [_handler for _handler in package_logger.handlers if getattr(_handler, '_argremask_console', False)]
        assert len(consoles) == 1
        logging.getLogger('argremask.core').debug('refined')
        captured = capsys.readouterr()
        assert 'refined' in captured.err
        assert captured.out == ''
    finally:
        log_utils.set_package_level('warning', console_output=False)
    assert not any(getattr(_handler, '_argremask_console', False) for _handler in package_logger.handlers)


def test_less_than_filter() -> None:
    """This function verifies that the filter passes only records below its level."""
    level_filter = log_utils.LessThanFilter(logging.WARNING)
    info = logging.LogRecord('x', logging.INFO, __file__, 1, 'info', None, None)
    warning = logging.LogRecord('x', logging.WARNING, __file__, 1, 'warning', None, None)
    assert level_filter.filter(info) == 1
    assert level_filter.filter(warning) == 0
