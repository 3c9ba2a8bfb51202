# -*- coding: utf-8 -*-
"""
:Module:            argremask.decorators
:Synopsis:          Decorators that can be used to include additional functionality with functions and methods
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import functools
import time
from typing import Any, Callable, Optional, TypeVar

from . import constants as const
from . import errors
from .utils import log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)

# Define the function Type bound to Callable
F = TypeVar('F', bound=Callable[..., Any])


def _is_retryable(exc: BaseException) -> bool:
    """This function determines whether a failed outbound call should be attempted again."""
    if isinstance(exc, errors.exceptions.APIConnectionError):
        return True
    if isinstance(exc, errors.exceptions.POSTRequestError):
        return exc.status_code in const.RETRYABLE_STATUS_CODES
    return False


def retry_on_failure(
    *,
    max_retries: Optional[int] = None,
    backoff_seconds: Optional[float] = None,
    sleep: Callable[[float], None] = time.sleep,
) -> Callable[[F], F]:
    """This decorator retries a network call on connection failures and retryable status codes.

    The decorated callable may override the limits per call through ``max_retries`` and ``backoff_seconds``
    keyword arguments; the delay doubles after every failed attempt.

    :param max_retries: Number of additional attempts after the first (default: ``3``)
    :type max_retries: int, None
    :param backoff_seconds: Delay before the first retry in seconds (default: ``1.0``)
    :type backoff_seconds: float, None
    :param sleep: The sleep function (replaceable in tests)
    :type sleep: Callable[[float], None]
    """
    default_retries = const.DEFAULT_API_MAX_RETRIES if max_retries is None else max_retries
    default_backoff = const.DEFAULT_API_BACKOFF_SECONDS if backoff_seconds is None else backoff_seconds

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any):
            retries = kwargs.get('max_retries')
            retries = default_retries if retries is None else retries
            delay = kwargs.get('backoff_seconds')
            delay = default_backoff if delay is None else delay
            attempt = 0
            while True:
                try:
                    return func(*args, **kwargs)
                except errors.exceptions.ArgRemaskError as exc:
                    if attempt >= retries or not _is_retryable(exc):
                        raise
                    attempt += 1
                    logger.warning(
                        f'{func.__name__} failed ({errors.handlers.get_exception_type(exc)}: {exc}); '
                        f'retrying in {delay:g}s (attempt {attempt} of {retries})'
                    )
                    if delay > 0:
                        sleep(delay)
                    delay *= 2

        return wrapper  # type: ignore[return-value]

    return decorator
