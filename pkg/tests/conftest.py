# -*- coding: utf-8 -*-
"""
:Module:            tests.conftest
:Synopsis:          Configuration for performing unit and integration testing with pytest
:Usage:             Leveraged by pytest in test modules
:Example:           ``state = engine.generate(vaccination_instance, oracle_model)``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026

Pytest fixtures for ``tests``.

This module centralizes the corpora and models shared by the test suite in both ``tests/unit`` and
``tests/integration``. It introduces the following key fixtures:

* ``vaccination_instance`` - The two-claim vaccination instance with its reference summary.
* ``synthetic_instances`` - A small seeded synthetic corpus with grounded reference summaries.
* ``oracle_model`` / ``categorical_model`` - Denoisers trained on the synthetic corpus.
* ``cot_endpoint`` - The chat-completion endpoint for integration runs; tests using it are marked as
  ``integration`` and are skipped unless ``--integration`` is provided.
"""

from __future__ import annotations

import os
from dataclasses import replace

import pytest

from argremask import constants as const
from argremask import corpus, denoiser
from argremask.denoiser import TrainingConfig
from tests.unit import resources

# Define constants
SYNTHETIC_SIZE = 12


# -----------------------------
# Pytest configuration hooks
# -----------------------------


def pytest_addoption(parser: pytest.Parser) -> None:
    """This function registers custom CLI options.

    ``--integration`` enables tests that call a real chat-completion endpoint.
    """
    parser.addoption(
        '--integration',
        action='store_true',
        default=False,
        help='run tests that require a chat-completion endpoint',
    )


def pytest_configure(config: pytest.Config) -> None:
    """This function declares custom markers so pytest will not warn during collection."""
    config.addinivalue_line(
        'markers',
        'integration: marks tests that require a real chat-completion endpoint',
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """This function skips integration tests when ``--integration`` is not provided."""
    if config.getoption('--integration'):
        return

    skip_integration = pytest.mark.skip(reason='requires --integration to run against a chat-completion endpoint')
    for item in items:
        if 'integration' in item.keywords:
            item.add_marker(skip_integration)


# -----------------------------
# Fixtures
# -----------------------------


@pytest.fixture(autouse=True)
def _isolated_environment(request: pytest.FixtureRequest, monkeypatch: pytest.MonkeyPatch) -> None:
    """This fixture keeps the ``REMASK_*`` variables of the developer's shell out of unit tests."""
    if request.node.get_closest_marker('integration') is not None:
        return
    for _name in (const.ENV_VARS.LLM_TOKEN, const.ENV_VARS.LLM_ENDPOINT, const.ENV_VARS.LOG_LEVEL):
        monkeypatch.delenv(_name, raising=False)


@pytest.fixture()
def vaccination_instance() -> corpus.ArgumentInstance:
    """This fixture returns the vaccination instance with two claims and four evidence texts."""
    return resources.vaccination_instance()


@pytest.fixture(scope='session')
def synthetic_instances() -> list[corpus.ArgumentInstance]:
    """This fixture returns a seeded synthetic corpus shared by the whole session."""
    return corpus.synthetic_corpus(SYNTHETIC_SIZE, seed=0)


@pytest.fixture(scope='session')
def synthetic_vocab(synthetic_instances) -> corpus.Vocabulary:
    return corpus.build_vocabulary(corpus.corpus_texts(synthetic_instances))


@pytest.fixture(scope='session')
def oracle_model(synthetic_instances, synthetic_vocab) -> denoiser.DenoiserModel:
    """This fixture memorizes the synthetic references on a 32-token canvas."""
    config = TrainingConfig(model_kind=const.DENOISER_DEFAULTS.KIND_ORACLE, epochs=0, canvas_length=32)
    model, _ = denoiser.train_denoiser(denoiser.build_training_pairs(synthetic_instances, synthetic_vocab), config,
                                       synthetic_vocab)
    return model


@pytest.fixture(scope='session')
def categorical_model(synthetic_instances, synthetic_vocab) -> denoiser.DenoiserModel:
    """This fixture trains a categorical denoiser for three epochs on a 32-token canvas."""
    config = replace(TrainingConfig(), epochs=3, canvas_length=32)
    model, _ = denoiser.train_denoiser(denoiser.build_training_pairs(synthetic_instances, synthetic_vocab), config,
                                       synthetic_vocab)
    return model


@pytest.fixture(scope='session')
def cot_endpoint() -> str:
    """This fixture returns the configured chat-completion endpoint or skips the test if none is available."""
    endpoint = os.environ.get(const.ENV_VARS.LLM_ENDPOINT)
    if not endpoint:
        pytest.skip(f'{const.ENV_VARS.LLM_ENDPOINT} is not set for integration tests')
    return endpoint
