# -*- coding: utf-8 -*-
"""
:Module:            tests.integration
:Synopsis:          Integration tests for the argremask library.
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""
