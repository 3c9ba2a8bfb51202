# -*- coding: utf-8 -*-
"""
:Package:        argremask.utils
:Synopsis:       This is the ``__init__`` module for the argremask.utils modules
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

__all__ = ['core_utils', 'helper', 'log_utils', 'version']
