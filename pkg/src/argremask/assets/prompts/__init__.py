# -*- coding: utf-8 -*-
"""
:Package:        argremask.assets.prompts
:Synopsis:       Prompt templates for the chain-of-thought sufficiency judge and the debate-speech instruction
"""
