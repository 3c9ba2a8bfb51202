# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:            tests.integration.test_cot_endpoint
:Synopsis:          Integration smoke test for the chain-of-thought sufficiency judge
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

import os

import pytest

from argremask import Summarizer, sufficiency
from argremask import constants as const
from argremask.sufficiency import CotClient


@pytest.fixture()
def cot_client(cot_endpoint):
    """This fixture returns a client for the configured endpoint with the token from the environment."""
    return CotClient(endpoint=cot_endpoint, token=os.environ.get(const.ENV_VARS.LLM_TOKEN), max_retries=1)


@pytest.mark.integration
def test_cot_judge_returns_a_known_verdict(cot_client, vaccination_instance):
    """This function validates that a real endpoint answers with a parseable verdict."""
    verdict = sufficiency.cot_judge(cot_client, 'Vaccines or their side effects may be dangerous.', vaccination_instance)
    assert verdict.category in const.VERDICT_SCORES
    assert verdict.score == const.VERDICT_SCORES[verdict.category]


@pytest.mark.integration
def test_cot_scorer_covers_the_canvas(cot_client, vaccination_instance):
    """This function validates that the CoT scorer produces a full profile for a two-sentence summary."""
    summarizer = Summarizer(scorer='cot', llm_endpoint=cot_client.endpoint, llm_token=cot_client.token, max_retries=1)
    report = summarizer.score(vaccination_instance, 'Vaccines may be dangerous. Mandatory vaccination violates rights.')
    assert len(report['sentences']) == 2
    assert all(0.0 <= _sentence['score'] <= 1.0 for _sentence in report['sentences'])
