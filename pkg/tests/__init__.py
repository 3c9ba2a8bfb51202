# -*- coding: utf-8 -*-
"""
:Module:            tests
:Synopsis:          This package includes tests for the argremask library.
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""
