# -*- coding: utf-8 -*-
"""
:Module:            argremask
:Synopsis:          This is the ``__init__`` module for the argremask package
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from . import core
from .config import RunConfig
from .core import Summarizer
from .utils import version

__all__ = ['core', 'RunConfig', 'Summarizer']

# Define the package version by pulling from the argremask.utils.version module
__version__ = version.get_full_version()
