# -*- coding: utf-8 -*-
"""
:Module:            argremask.api
:Synopsis:          Defines the JSON-over-HTTP transport shared by the remote denoiser, CoT judge and external scorers
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

from typing import Any, Optional

import requests

from . import constants as const
from . import errors
from .decorators import retry_on_failure
from .utils import log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)


@retry_on_failure()
def post_json(
    url: str,
    payload: dict,
    token: Optional[str] = None,
    headers: Optional[dict] = None,
    timeout: Optional[int] = None,
    show_full_error: bool = True,
    max_retries: Optional[int] = None,
    backoff_seconds: Optional[float] = None,
) -> Any:
    """This function performs a POST request with a JSON payload and returns the decoded JSON response.

    Connection failures, timeouts and ``429``/``5xx`` responses are retried with exponential backoff (see
    :py:func:`argremask.decorators.retry_on_failure`); other non-success responses fail immediately.

    :param url: The fully qualified endpoint URL
    :type url: str
    :param payload: The JSON payload to send
    :type payload: dict
    :param token: Bearer token for the ``Authorization`` header (optional)
    :type token: str, None
    :param headers: Specific API headers to use instead of the defaults
    :type headers: dict, None
    :param timeout: The timeout period in seconds (defaults to ``30``)
    :type timeout: int, None
    :param show_full_error: Includes the response body in the exception message (defaults to ``True``)
    :type show_full_error: bool
    :param max_retries: Additional attempts after the first (consumed by the retry decorator)
    :type max_retries: int, None
    :param backoff_seconds: Delay before the first retry (consumed by the retry decorator)
    :type backoff_seconds: float, None
    :returns: The decoded JSON response body
    :raises: :py:exc:`argremask.errors.exceptions.APIConnectionError`,
             :py:exc:`argremask.errors.exceptions.POSTRequestError`
    """
    headers = _get_headers(token) if not headers else headers
    timeout = const.DEFAULT_API_TIMEOUT_SECONDS if not timeout else timeout

    # Perform the API call
    try:
        response = requests.post(url, json=payload, headers=headers, timeout=timeout)
    except (requests.exceptions.ConnectionError, requests.exceptions.Timeout) as exc:
        logger.error(f'The POST request to {url} could not be completed: {exc}')
        raise errors.exceptions.APIConnectionError(url=url) from exc

    # Examine the result
    if response.status_code >= 300:
        message = response.text if show_full_error else None
        logger.error(f'The POST request to {url} returned the {response.status_code} status code')
        raise errors.exceptions.POSTRequestError(status_code=response.status_code, message=message)
    try:
        return response.json()
    except ValueError as exc:
        logger.error(f'Failed to convert the API response from {url} to JSON format: {exc}')
        raise errors.exceptions.POSTRequestError(message='The response body is not valid JSON.') from exc


def _get_headers(_token: Optional[str] = None) -> dict:
    """This function returns the HTTP headers used for JSON POST calls."""
    headers = {
        const.HEADERS.CONTENT_TYPE: const.HEADERS.JSON,
        const.HEADERS.ACCEPT: const.HEADERS.JSON,
    }
    if _token:
        headers[const.HEADERS.AUTHORIZATION] = const.HEADERS.BEARER.format(token=_token)
    return headers
