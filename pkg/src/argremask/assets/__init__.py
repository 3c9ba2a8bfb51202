# -*- coding: utf-8 -*-
"""
:Package:        argremask.assets
:Synopsis:       Data files shipped with the package
"""
