# -*- coding: utf-8 -*-
"""
:Package:           argremask.errors
:Synopsis:          This module includes custom exceptions and handlers
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

__all__ = ['exceptions', 'handlers']

from . import exceptions, handlers
