# -*- coding: utf-8 -*-
"""
:Module:            argremask.config
:Synopsis:          The run configuration: defaults, configuration files, environment variables and overrides
:Usage:             ``from argremask.config import RunConfig``
:Example:           ``config = RunConfig.from_sources('run.cfg', overrides={'seed': 7})``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping, Optional

from . import constants as const
from . import errors
from .denoiser import TrainingConfig
from .engine import DiffusionSchedule, RefineConfig
from .evaluation import ExternalScorer
from .masking import MaskConfig
from .sufficiency import CotClient
from .utils import helper, log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_DEN = const.DENOISER_DEFAULTS
_MASK = const.MASK_DEFAULTS
_SUFF = const.SUFFICIENCY_DEFAULTS
_ENG = const.ENGINE_DEFAULTS
_REDACTED = '***'
_LOG_LEVELS = ('debug', 'info', 'warning', 'error', 'critical')

# Fields whose default is None hold text
_OPTIONAL_TEXT = ('model_path', 'classifier_path', 'llm_endpoint', 'llm_token', 'remote_endpoint', 'external_command',
                  'external_endpoint')


@dataclass
class RunConfig:
    """Every tunable of a run, flat, so that one snapshot replays it."""

    seed: int = const.DEFAULT_SEED
    canvas_length: int = _DEN.CANVAS_LENGTH
    log_level: str = 'info'
    workers: int = const.EVAL_DEFAULTS.WORKERS

    # Data and models
    data_format: str = const.DATASET_FORMATS.CLAIMS_JSON
    min_count: int = 1
    model_path: Optional[str] = None
    classifier_path: Optional[str] = None

    # Denoiser training
    model_kind: str = _DEN.KIND_CATEGORICAL
    mask_ratio: float = _DEN.MASK_RATIO
    epochs: int = _DEN.EPOCHS
    smoothing_alpha: float = _DEN.SMOOTHING_ALPHA
    copy_bias: float = _DEN.COPY_BIAS
    position_buckets: int = _DEN.POSITION_BUCKETS
    gradient_refine: bool = False
    gradient_step: float = _DEN.GRADIENT_STEP

    # Generation schedule
    steps: int = _ENG.STEPS
    schedule_policy: str = _ENG.POLICY_LOW_CONFIDENCE
    fill_policy: str = _DEN.POLICY_ARGMAX

    # Remask planning
    mask_lambda: float = _MASK.LAMBDA
    mask_r: float = _MASK.R
    r_decay: float = _MASK.R_DECAY
    epsilon_converged: float = _MASK.EPSILON_CONVERGED
    granularity: str = _MASK.GRANULARITY_TOKEN
    selection: str = _MASK.SELECTION_TOP_R

    # Refinement
    refine_iterations: int = _ENG.ITERATIONS
    inner_steps: int = _ENG.INNER_STEPS
    tau: float = _ENG.TAU
    scorer: str = _SUFF.SOURCE_HEURISTIC
    combine_alpha: float = _SUFF.COMBINE_ALPHA
    remask_policy: str = _ENG.POLICY_LOW_CONFIDENCE

    # Classifier
    classifier_epochs: int = _SUFF.CLASSIFIER_EPOCHS
    classifier_lr: float = _SUFF.CLASSIFIER_LR
    classifier_dim: int = _SUFF.CLASSIFIER_DIM
    feature_hash_seed: int = _SUFF.FEATURE_HASH_SEED
    k_per_type: int = _SUFF.K_PER_TYPE

    # Evaluation
    coverage_threshold: float = const.EVAL_DEFAULTS.COVERAGE_THRESHOLD
    external_name: str = 'external'
    external_command: Optional[str] = None
    external_endpoint: Optional[str] = None

    # Remote services
    llm_endpoint: Optional[str] = None
    llm_model: str = _SUFF.COT_MODEL
    llm_token: Optional[str] = None
    remote_endpoint: Optional[str] = None
    remote_top_k: int = _DEN.TOP_K
    timeout: int = const.DEFAULT_API_TIMEOUT_SECONDS
    max_retries: int = const.DEFAULT_API_MAX_RETRIES
    backoff_seconds: float = const.DEFAULT_API_BACKOFF_SECONDS
    max_in_flight: int = _SUFF.MAX_IN_FLIGHT

    @classmethod
    def keys(cls) -> tuple[str, ...]:
        return tuple(_field.name for _field in fields(cls))

    @classmethod
    def from_sources(
        cls,
        config_path: Optional[str] = None,
        overrides: Optional[Mapping[str, Any]] = None,
        environ: Optional[Mapping[str, str]] = None,
    ) -> RunConfig:
        """This method layers defaults, a configuration file, environment variables and explicit overrides.

        Later sources win; ``None`` overrides are ignored so unset command-line flags keep lower-precedence values.

        :param config_path: A YAML, JSON or flat ``key = value`` file (optional)
        :type config_path: str, None
        :param overrides: Explicit values such as command-line flags (optional)
        :type overrides: dict, None
        :param environ: The environment (``os.environ`` by default)
        :type environ: dict, None
        :returns: The coerced configuration
        :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
        """
        environ = os.environ if environ is None else environ
        values: dict[str, Any] = {}
        if config_path:
            values.update(helper.get_helper_settings(config_path, valid_keys=cls.keys()))
        env_map = {
            const.ENV_VARS.LLM_TOKEN: 'llm_token',
            const.ENV_VARS.LLM_ENDPOINT: 'llm_endpoint',
            const.ENV_VARS.LOG_LEVEL: 'log_level',
        }
        for _var, _key in env_map.items():
            if environ.get(_var):
                values[_key] = environ[_var]
        for _key, _value in (overrides or {}).items():
            if _value is not None:
                if _key not in cls.keys():
                    raise errors.exceptions.InvalidParameterError(param=_key, message='unknown configuration key')
                values[_key] = _value
        return cls(**{_key: _coerce(_key, _value) for _key, _value in values.items()})

    def validate(self) -> None:
        """This method checks the preconditions of every module before any work starts.

        :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
        """
        if isinstance(self.seed, bool) or self.seed < 0:
            raise errors.exceptions.InvalidParameterError(param='seed', value=self.seed)
        if self.log_level.lower() not in _LOG_LEVELS:
            raise errors.exceptions.InvalidParameterError(param='log_level', value=self.log_level)
        if self.data_format not in const.DATASET_FORMATS.VALID:
            raise errors.exceptions.InvalidParameterError(param='data_format', value=self.data_format)
        if self.min_count < 1:
            raise errors.exceptions.InvalidParameterError(param='min_count', value=self.min_count)
        if self.fill_policy not in _DEN.FILL_POLICIES:
            raise errors.exceptions.InvalidParameterError(param='fill_policy', value=self.fill_policy)
        for _name in ('workers', 'max_in_flight', 'classifier_dim', 'timeout'):
            if getattr(self, _name) < 1:
                raise errors.exceptions.InvalidParameterError(param=_name, value=getattr(self, _name))
        if self.max_retries < 0 or self.backoff_seconds < 0 or self.classifier_epochs < 0 or self.k_per_type < 0:
            raise errors.exceptions.InvalidParameterError('Retry, epoch and perturbation counts must not be negative.')
        if self.classifier_lr <= 0:
            raise errors.exceptions.InvalidParameterError(param='classifier_lr', value=self.classifier_lr)
        for _name in ('coverage_threshold', 'combine_alpha'):
            if not 0.0 <= getattr(self, _name) <= 1.0:
                raise errors.exceptions.InvalidParameterError(param=_name, value=getattr(self, _name))
        if self.external_command and self.external_endpoint:
            raise errors.exceptions.InvalidParameterError(param='external_command',
                                                          message='set an external command or endpoint, not both')
        self.training_config().validate()
        self.refine_config().validate()
        self.schedule()

    def echo(self) -> dict:
        """Returns the replayable snapshot embedded in outputs; secrets are redacted."""
        snapshot = asdict(self)
        if snapshot.get('llm_token'):
            snapshot['llm_token'] = _REDACTED
        return snapshot

    # Projections onto the module configurations

    def training_config(self) -> TrainingConfig:
        return TrainingConfig(
            mask_ratio=self.mask_ratio,
            epochs=self.epochs,
            seed=self.seed,
            model_kind=self.model_kind,
            canvas_length=self.canvas_length,
            smoothing_alpha=self.smoothing_alpha,
            copy_bias=self.copy_bias,
            position_buckets=self.position_buckets,
            gradient_refine=self.gradient_refine,
            gradient_step=self.gradient_step,
            remote_endpoint=self.remote_endpoint,
            remote_top_k=self.remote_top_k,
        )

    def mask_config(self) -> MaskConfig:
        return MaskConfig(lam=self.mask_lambda, r=self.mask_r, r_decay=self.r_decay, epsilon_converged=self.epsilon_converged,
                          granularity=self.granularity, selection=self.selection)

    def refine_config(self, iterations: Optional[int] = None, scorer: Optional[str] = None) -> RefineConfig:
        return RefineConfig(
            iterations=self.refine_iterations if iterations is None else iterations,
            mask_config=self.mask_config(),
            inner_steps=self.inner_steps,
            tau=self.tau,
            scorer=scorer or self.scorer,
            remask_policy=self.remask_policy,
        )

    def schedule(self) -> DiffusionSchedule:
        return DiffusionSchedule.linear(self.steps, self.schedule_policy)

    def cot_client(self) -> CotClient:
        return CotClient(endpoint=self.llm_endpoint, model=self.llm_model, token=self.llm_token, timeout=self.timeout,
                         max_retries=self.max_retries, backoff_seconds=self.backoff_seconds)

    def external_scorers(self) -> list[ExternalScorer]:
        if not (self.external_command or self.external_endpoint):
            return []
        return [ExternalScorer(self.external_name, command=self.external_command, endpoint=self.external_endpoint,
                               token=self.llm_token, timeout=self.timeout)]


def _field_type(_key: str) -> type:
    if _key in _OPTIONAL_TEXT:
        return str
    default = RunConfig.__dataclass_fields__[_key].default
    return type(default)


def _coerce(_key: str, _value: Any) -> Any:
    """This function converts a raw configuration value (often text) to the type of its field."""
    if _key in _OPTIONAL_TEXT and (_value is None or str(_value).strip().lower() in ('', 'none', 'null')):
        return None
    if _value is None:
        raise errors.exceptions.InvalidParameterError(param=_key, value=_value)
    target = _field_type(_key)
    try:
        if target is bool:
            if isinstance(_value, bool):
                return _value
            lowered = str(_value).strip().lower()
            if lowered not in const.YAML_BOOLEAN_MAPPING:
                raise ValueError(_value)
            return const.YAML_BOOLEAN_MAPPING[lowered]
        if target is int:
            if isinstance(_value, bool) or (isinstance(_value, float) and not _value.is_integer()):
                raise ValueError(_value)
            return int(_value)
        if target is float:
            if isinstance(_value, bool):
                raise ValueError(_value)
            return float(_value)
        return str(_value).strip()
    except (TypeError, ValueError) as exc:
        logger.error(f"The configuration value {_value!r} for '{_key}' cannot be read as {target.__name__}")
        raise errors.exceptions.InvalidParameterError(param=_key, value=_value) from exc
