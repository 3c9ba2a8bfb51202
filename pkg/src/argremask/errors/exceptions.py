# -*- coding: utf-8 -*-
"""
:Module:            argremask.errors.exceptions
:Synopsis:          Collection of exception classes relating to the argremask library
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

from typing import Iterable, Optional, Union

from ..constants import EXCEPTION_CLASSES as _EXC

# -----------------------------
# Base Exception
# -----------------------------


# Define base exception class
class ArgRemaskError(Exception):
    """This is the base class for argremask exceptions."""

    pass


# -----------------------------
# General Exceptions
# -----------------------------


class DataMismatchError(ArgRemaskError):
    """This exception is used when there is a mismatch between two data sources."""

    def __init__(self, *args, **kwargs):
        default_msg = 'A data mismatch was found with the data sources.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._DATA in kwargs:
            data = kwargs[_EXC._DATA]
            if isinstance(data, str):
                args = (f"A data mismatch was found with the '{data}' source.",)
            elif isinstance(data, (list, tuple)) and len(data) == 2:
                args = (f"A data mismatch was found between '{data[0]}' and '{data[1]}'.",)
        super().__init__(*args)


class InvalidParameterError(ArgRemaskError, ValueError):
    """This exception is used when an invalid parameter is provided."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The parameter that was provided is invalid.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._PARAM in kwargs:
            custom_msg = f"The '{kwargs[_EXC._PARAM]}' parameter that was provided is invalid."
            if _EXC._VALUE in kwargs:
                custom_msg = f"{custom_msg[:-1]}: {kwargs[_EXC._VALUE]!r}"
            if _EXC._MESSAGE in kwargs:
                custom_msg = f'{custom_msg.rstrip(".")} ({kwargs[_EXC._MESSAGE]})'
            args = (custom_msg,)
        super().__init__(*args)


class MissingRequiredDataError(ArgRemaskError):
    """This exception is used when a function or method is missing one or more required arguments."""

    def __init__(self, *args, **kwargs):
        default_msg = 'Missing one or more required parameters'
        param_msg = "The required parameter 'PARAMETER_NAME' is not defined"
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._PARAM in kwargs:
            args = (param_msg.replace('PARAMETER_NAME', kwargs[_EXC._PARAM]),)
        elif not args:
            args = (default_msg,)
        super().__init__(*args)


class UnknownFileTypeError(ArgRemaskError):
    """This exception is used when a file type for a given file cannot be identified."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The file type of the given file path cannot be identified.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._FILE in kwargs:
            args = (f"The file type of the given file '{kwargs[_EXC._FILE]}' cannot be identified.",)
        super().__init__(*args)


# -----------------------------
# Dataset Exceptions
# -----------------------------


class DatasetParseError(ArgRemaskError):
    """This exception is used when a dataset file cannot be parsed under its declared format."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The dataset could not be parsed under the declared format.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._FILE in kwargs or _EXC._LINE in kwargs or _EXC._RECORD in kwargs:
            location = []
            if _EXC._FILE in kwargs:
                location.append(f"file '{kwargs[_EXC._FILE]}'")
            if _EXC._LINE in kwargs:
                location.append(f'line {kwargs[_EXC._LINE]}')
            if _EXC._RECORD in kwargs:
                location.append(f'record {kwargs[_EXC._RECORD]}')
            custom_msg = f'The dataset could not be parsed at {", ".join(location)}.'
            if _EXC._MESSAGE in kwargs:
                custom_msg = f'{custom_msg} {kwargs[_EXC._MESSAGE]}'
            args = (custom_msg,)
        super().__init__(*args)


class DuplicateInstanceError(ArgRemaskError):
    """This exception is used when two instances in one dataset share an identifier."""

    def __init__(self, *args, **kwargs):
        default_msg = 'Duplicate instance identifiers were found in the dataset.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._IDENTIFIER in kwargs:
            args = (f"The instance identifier '{kwargs[_EXC._IDENTIFIER]}' appears more than once in the dataset.",)
        super().__init__(*args)


class EmptyDatasetError(ArgRemaskError):
    """This exception is used when a dataset or training corpus contains no records."""

    def __init__(self, *args, **kwargs):
        default_msg = 'empty dataset'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._FILE in kwargs:
            args = (f"empty dataset: the file '{kwargs[_EXC._FILE]}' contains no records",)
        super().__init__(*args)


class MissingReferenceError(ArgRemaskError):
    """This exception is used when an instance lacks the reference summary an operation requires."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The instance does not have a reference summary.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._IDENTIFIER in kwargs:
            args = (f"The instance '{kwargs[_EXC._IDENTIFIER]}' does not have a reference summary.",)
        super().__init__(*args)


# -----------------------------
# Canvas / Model Exceptions
# -----------------------------


class PositionError(ArgRemaskError, IndexError):
    """This exception is used when a canvas position is out of range or in the wrong mask state."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The canvas position is not valid for this operation.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._POSITION in kwargs:
            custom_msg = f'The canvas position {kwargs[_EXC._POSITION]} is not valid for this operation.'
            if _EXC._MESSAGE in kwargs:
                custom_msg = f'{custom_msg} {kwargs[_EXC._MESSAGE]}'
            args = (custom_msg,)
        super().__init__(*args)


class NothingToFillError(ArgRemaskError):
    """This exception is used when a fill is requested on a state without masked positions."""

    def __init__(self, *args, **kwargs):
        default_msg = 'nothing to fill'
        if not (args or kwargs):
            args = (default_msg,)
        super().__init__(*args)


class CoverageGapError(ArgRemaskError):
    """This exception is used when span scores leave canvas positions uncovered."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The spans do not cover every canvas position.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._POSITIONS in kwargs:
            positions = _format_positions(kwargs[_EXC._POSITIONS])
            args = (f'The spans do not cover the following canvas positions: {positions}',)
        super().__init__(*args)
        self.positions = list(kwargs.get(_EXC._POSITIONS, []))


class SingleClassDataError(ArgRemaskError):
    """This exception is used when classifier training data contains only one label."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The training data must contain both sufficient and insufficient spans.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._VALUE in kwargs:
            args = (f'{default_msg} Only the label {kwargs[_EXC._VALUE]} was found.',)
        super().__init__(*args)


# -----------------------------
# Remote Judge Exceptions
# -----------------------------


class MalformedVerdictError(ArgRemaskError):
    """This exception is used when a judge response does not end with a parseable verdict line."""

    def __init__(self, *args, **kwargs):
        default_msg = 'malformed verdict'
        self.raw = kwargs.get(_EXC._RAW)
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._RAW in kwargs:
            args = (f'malformed verdict in the following response: {self.raw!r}',)
        super().__init__(*args)


class FeatureNotConfiguredError(ArgRemaskError):
    """This exception is used when an operation needs a feature (such as an endpoint) that is not configured."""

    def __init__(self, *args, **kwargs):
        exc_msg = 'The feature is not configured.'
        if _EXC._IDENTIFIER in kwargs or _EXC._FEATURE in kwargs:
            if _EXC._FEATURE in kwargs:
                exc_msg = exc_msg.replace(_EXC._FEATURE, f'{kwargs[_EXC._FEATURE]} {_EXC._FEATURE}')
            if _EXC._IDENTIFIER in kwargs:
                exc_msg += f' Identifier: {kwargs[_EXC._IDENTIFIER]}'
            args = (exc_msg,)
        elif not (args or kwargs):
            args = (exc_msg,)
        super().__init__(*args)


class ExternalScorerError(ArgRemaskError):
    """This exception is used when an external metric command or endpoint does not return a usable score."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The external scorer did not return a numeric score.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._IDENTIFIER in kwargs:
            custom_msg = f"The external scorer '{kwargs[_EXC._IDENTIFIER]}' did not return a numeric score."
            if _EXC._MESSAGE in kwargs:
                custom_msg = f'{custom_msg} {kwargs[_EXC._MESSAGE]}'
            args = (custom_msg,)
        super().__init__(*args)


# -----------------------------
# Generic API Exceptions
# -----------------------------


class APIConnectionError(ArgRemaskError):
    """This exception is used when the API query could not be completed due to connection aborts and/or timeouts."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The API query could not be completed due to connection aborts and/or timeouts.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._URL in kwargs:
            args = (f"The API query to '{kwargs[_EXC._URL]}' could not be completed due to connection aborts and/or timeouts.",)
        super().__init__(*args)


class POSTRequestError(ArgRemaskError):
    """This exception is used for generic POST request errors when there is not a more specific exception."""

    def __init__(self, *args, **kwargs):
        default_msg = _EXC._API_DEFAULT_MSG.format(type='POST')
        self.status_code = kwargs.get(_EXC._STATUS_CODE)
        if _EXC._STATUS_CODE in kwargs or _EXC._MESSAGE in kwargs:
            custom_msg = _construct_api_custom_message(
                _request_type='POST',
                _message=kwargs.get(_EXC._MESSAGE, None),
                _status_code=kwargs.get(_EXC._STATUS_CODE, None),
            )
            args = (custom_msg,)
        elif not (args or kwargs):
            args = (default_msg,)
        super().__init__(*args)


# -----------------------------
# Configuration Exceptions
# -----------------------------


class InvalidHelperFileTypeError(ArgRemaskError, ValueError):
    """This exception is used when an invalid file type is provided for the configuration file."""

    def __init__(self, *args, **kwargs):
        default_msg = "The configuration file can only have the 'yml', 'yaml', 'json', or flat 'key = value' file type."
        if not (args or kwargs):
            args = (default_msg,)
        super().__init__(*args)


class UsageError(ArgRemaskError):
    """This exception is used when the command line is called with an unknown subcommand or invalid flags."""

    def __init__(self, *args, **kwargs):
        default_msg = 'The command-line arguments are invalid.'
        if not (args or kwargs):
            args = (default_msg,)
        elif _EXC._MESSAGE in kwargs:
            args = (kwargs[_EXC._MESSAGE],)
        super().__init__(*args)


def _format_positions(_positions: Iterable[int], _limit: int = 20) -> str:
    """This function renders a list of positions for an exception message, truncating long lists."""
    _positions = list(_positions)
    _rendered = ', '.join(str(_pos) for _pos in _positions[:_limit])
    if len(_positions) > _limit:
        _rendered += f', ... ({len(_positions) - _limit} more)'
    return _rendered


def _construct_api_custom_message(
    _request_type: str, _message: Optional[str] = None, _status_code: Union[Optional[str], Optional[int]] = None
) -> str:
    """This function constructs the exception message for an API-related exception class.

    :param _request_type: The associated API request type (e.g. ``POST``)
    :type _request_type: str
    :param _message: A specific message to append to the base message (optional)
    :type _message: str, None
    :param _status_code: The status code returned from the API request (optional)
    :type _status_code: str, int, None
    :returns: The constructed custom message to use when raising the exception
    """
    # Define the base custom message
    _custom_msg = _EXC._API_CUSTOM_MSG.format(type=_request_type.upper())

    # Define the status code custom message if a status code was provided
    if _status_code:
        _status_code_msg = f'returned the {_status_code} status code'
        _custom_msg = _custom_msg.replace('failed', _status_code_msg)

    # Construct the standard custom message if a custom message string was provided
    if _message:
        _custom_msg = f'{_custom_msg} {_message}'
    elif _status_code:
        _custom_msg = _custom_msg.split(_EXC._WITH_THE_FOLLOWING_SEGMENT)[0] + '.'
    else:
        _custom_msg = _EXC._API_DEFAULT_MSG.format(type=_request_type.upper())
    return _custom_msg
