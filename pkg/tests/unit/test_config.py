# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:         tests.unit.test_config
:Synopsis:       This module is used by pytest to test the layered run configuration
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

import pytest

from argremask import constants as const
from argremask import errors
from argremask.config import RunConfig


def test_defaults_without_sources():
    """This function tests that no file, environment or override yields the defaults."""
    assert RunConfig.from_sources(environ={}) == RunConfig()
    RunConfig().validate()


def test_sources_are_layered_by_precedence(tmp_path):
    """This function tests that overrides beat the environment, which beats the file, which beats the defaults."""
    cfg_path = tmp_path / 'run.cfg'
    cfg_path.write_text('# run settings\nseed = 3\nmask_r = 0.5\nllm_endpoint = http://file.example\n')
    environ = {const.ENV_VARS.LLM_ENDPOINT: 'http://env.example'}

    config = RunConfig.from_sources(str(cfg_path), overrides={'seed': 9, 'mask_r': None}, environ=environ)

    assert config.seed == 9
    assert config.mask_r == 0.5
    assert config.llm_endpoint == 'http://env.example'
    assert config.epochs == const.DENOISER_DEFAULTS.EPOCHS


def test_yaml_file_values_are_coerced(tmp_path):
    """This function tests that YAML values take the types of their fields."""
    cfg_path = tmp_path / 'run.yml'
    cfg_path.write_text('gradient_refine: yes\ncanvas_length: "48"\ntau: 1\nscorer: classifier\n')

    config = RunConfig.from_sources(str(cfg_path), environ={})

    assert config.gradient_refine is True
    assert config.canvas_length == 48
    assert isinstance(config.tau, float) and config.tau == 1.0
    assert config.scorer == 'classifier'


def test_flat_file_booleans_and_dashed_keys(tmp_path):
    """This function tests YAML-style booleans and dashed keys in a flat ``key = value`` file."""
    cfg_path = tmp_path / 'run.cfg'
    cfg_path.write_text('gradient-refine = on\nrefine-iterations = 2\n')

    config = RunConfig.from_sources(str(cfg_path), environ={})

    assert config.gradient_refine is True
    assert config.refine_iterations == 2


def test_unknown_file_keys_are_warned_and_ignored(tmp_path):
    """This function tests that unrecognized file keys produce a warning and no value."""
    cfg_path = tmp_path / 'run.json'
    cfg_path.write_text('{"seed": 4, "colour": "blue"}')

    with pytest.warns(UserWarning, match='colour'):
        config = RunConfig.from_sources(str(cfg_path), environ={})

    assert config.seed == 4
    assert not hasattr(config, 'colour')


def test_unknown_override_raises():
    """This function tests that an unrecognized override key raises an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError, match='colour'):
        RunConfig.from_sources(overrides={'colour': 'blue'}, environ={})


@pytest.mark.parametrize(
    ('key', 'value'),
    [('seed', 'abc'), ('epochs', 2.5), ('gradient_refine', 'maybe'), ('canvas_length', 'none'), ('tau', True)],
)
def test_uncoercible_values_raise(key, value):
    """This function tests that values which cannot take the type of their field raise an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        RunConfig.from_sources(overrides={key: value}, environ={})


def test_optional_text_accepts_none_markers():
    """This function tests that ``none`` and empty text clear an optional path."""
    config = RunConfig.from_sources(overrides={'model_path': 'none', 'classifier_path': ''}, environ={})
    assert config.model_path is None
    assert config.classifier_path is None


def test_environment_supplies_token_and_log_level():
    """This function tests the ``REMASK_*`` environment variables."""
    environ = {const.ENV_VARS.LLM_TOKEN: 'secret-token', const.ENV_VARS.LOG_LEVEL: 'debug', 'UNRELATED': 'x'}
    config = RunConfig.from_sources(environ=environ)
    assert config.llm_token == 'secret-token'
    assert config.log_level == 'debug'


@pytest.mark.parametrize(
    'overrides',
    [
        {'seed': -1},
        {'log_level': 'loud'},
        {'data_format': 'xml'},
        {'workers': 0},
        {'max_retries': -1},
        {'classifier_lr': 0.0},
        {'coverage_threshold': 1.5},
        {'combine_alpha': -0.1},
        {'external_command': 'echo 1', 'external_endpoint': 'http://score.example'},
        {'mask_ratio': 0.0},
        {'mask_r': 2.0},
        {'tau': 1.2},
        {'scorer': 'oracle'},
        {'steps': 0},
    ],
)
def test_validate_rejects_out_of_range_settings(overrides):
    """This function tests that validation reaches every module configuration."""
    config = RunConfig.from_sources(overrides=overrides, environ={})
    with pytest.raises(errors.exceptions.InvalidParameterError):
        config.validate()


def test_echo_redacts_the_token():
    """This function tests that the configuration snapshot never carries the bearer token."""
    config = RunConfig(llm_token='secret-token', seed=5)
    echo = config.echo()
    assert echo['llm_token'] == '***'
    assert echo['seed'] == 5
    assert set(echo) == set(RunConfig.keys())
    assert config.llm_token == 'secret-token'
    assert RunConfig().echo()['llm_token'] is None


def test_projections_carry_the_settings():
    """This function tests the module configurations derived from a run configuration."""
    config = RunConfig(seed=7, canvas_length=40, mask_r=0.3, refine_iterations=4, scorer='heuristic', steps=5)

    training = config.training_config()
    assert (training.seed, training.canvas_length) == (7, 40)

    refine = config.refine_config()
    assert refine.iterations == 4
    assert refine.mask_config.r == 0.3
    assert config.refine_config(iterations=0, scorer='none').iterations == 0
    assert config.refine_config(scorer='none').scorer == 'none'

    schedule = config.schedule()
    assert schedule.steps == 5
    assert schedule.keep_fraction_curve[-1] == 1.0


def test_external_scorers_follow_the_settings():
    """This function tests that an external scorer exists only when a command or endpoint is set."""
    assert RunConfig().external_scorers() == []
    scorers = RunConfig(external_name='bleurt', external_command='echo 0.5').external_scorers()
    assert [_scorer.name for _scorer in scorers] == ['bleurt']


def test_cot_client_uses_the_remote_settings():
    """This function tests that the chat-completion client inherits the endpoint, model and retry settings."""
    client = RunConfig(llm_endpoint='http://llm.example', llm_model='judge', max_retries=1).cot_client()
    assert client.endpoint == 'http://llm.example'
    assert client.model == 'judge'
    assert client.max_retries == 1


def test_text_fields_keep_the_word_none():
    """This function tests that ``none`` remains a scorer kind rather than an unset value."""
    config = RunConfig.from_sources(overrides={'scorer': 'none'}, environ={})
    assert config.scorer == 'none'
    config.validate()
