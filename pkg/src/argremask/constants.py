# -*- coding: utf-8 -*-
"""
:Module:            argremask.constants
:Synopsis:          Constants that are utilized throughout the package
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import ClassVar, Final, Mapping, Union

# -----------------------------
# Versioning / Meta
# -----------------------------
PACKAGE_NAME: Final[str] = 'argremask'
ARCHIVE_FORMAT_VERSION: Final[int] = 1


# --------------------------------------
# Common Validation Criteria / Mapping
# --------------------------------------
YAML_BOOLEAN_MAPPING: Final[Mapping[Union[str, bool], bool]] = MappingProxyType(
    {
        True: True,
        False: False,
        'yes': True,
        'no': False,
        'true': True,
        'false': False,
        'on': True,
        'off': False,
    }
)
FLOAT_TOLERANCE: Final[float] = 1e-9


# -----------------------------
# Error Handling
# -----------------------------
_DEFAULT_WARNING_CATEGORY: Final[type[Warning]] = UserWarning


# -----------------------------
# Exception Classes
# -----------------------------
@dataclass(frozen=True)
class ExceptionClasses:
    """Constants utilized by the exception classes in the :py:mod:`argremask.errors.exceptions` module."""

    # Keyword arguments
    _DATA: str = 'data'
    _FEATURE: str = 'feature'
    _FILE: str = 'file'
    _IDENTIFIER: str = 'identifier'
    _LINE: str = 'line'
    _MESSAGE: str = 'message'
    _PARAM: str = 'param'
    _POSITION: str = 'position'
    _POSITIONS: str = 'positions'
    _RAW: str = 'raw'
    _RECORD: str = 'record'
    _STATUS_CODE: str = 'status_code'
    _URL: str = 'url'
    _VALUE: str = 'value'

    # Exception messages and message segments
    _API_CUSTOM_MSG: str = 'The {type} request failed with the following message:'
    _API_DEFAULT_MSG: str = 'The {type} request did not return a successful response.'
    _WITH_THE_FOLLOWING_SEGMENT: str = ' with the following'


EXCEPTION_CLASSES: Final[ExceptionClasses] = ExceptionClasses()


# -----------------------------
# File Type Extensions
# -----------------------------
@dataclass(frozen=True)
class FileExtensions:
    """Common file extensions leveraged throughout the package."""

    # Without delimiter
    CFG: str = 'cfg'
    CONF: str = 'conf'
    CSV: str = 'csv'
    JSON: str = 'json'
    JSONL: str = 'jsonl'
    KV: str = 'kv'
    TXT: str = 'txt'
    YAML: str = 'yaml'
    YML: str = 'yml'

    # With delimiter
    DOT_CFG: str = f'.{CFG}'
    DOT_CONF: str = f'.{CONF}'
    DOT_CSV: str = f'.{CSV}'
    DOT_JSON: str = f'.{JSON}'
    DOT_JSONL: str = f'.{JSONL}'
    DOT_TXT: str = f'.{TXT}'
    DOT_YAML: str = f'.{YAML}'
    DOT_YML: str = f'.{YML}'


FILE_EXTENSIONS: Final[FileExtensions] = FileExtensions()


# -----------------------------
# Vocabulary / Tokens
# -----------------------------
@dataclass(frozen=True)
class ReservedTokens:
    """Reserved vocabulary entries and their fixed indices."""

    MASK: ClassVar[str] = '[MASK]'
    PAD: ClassVar[str] = '[PAD]'
    UNK: ClassVar[str] = '[UNK]'
    EOS: ClassVar[str] = '[EOS]'
    MASK_ID: ClassVar[int] = 0
    PAD_ID: ClassVar[int] = 1
    UNK_ID: ClassVar[int] = 2
    EOS_ID: ClassVar[int] = 3
    ORDERED: ClassVar[tuple[str, ...]] = (MASK, PAD, UNK, EOS)
    EDGE_ID: ClassVar[int] = -1  # canvas boundary used as a context feature


RESERVED: Final[ReservedTokens] = ReservedTokens()

SENTENCE_TERMINATORS: Final[frozenset[str]] = frozenset({'.', '!', '?'})

# Fixed 50-word stopword list used by every content-token computation
STOPWORDS: Final[frozenset[str]] = frozenset(
    {
        'a', 'an', 'the', 'and', 'or', 'but', 'if', 'of', 'to', 'in',
        'on', 'at', 'by', 'for', 'with', 'from', 'as', 'into', 'about', 'than',
        'is', 'are', 'was', 'were', 'be', 'been', 'being', 'am', 'it', 'its',
        'this', 'that', 'these', 'those', 'their', 'they', 'them', 'there', 'he', 'she',
        'we', 'you', 'i', 'not', 'no', 'so', 'such', 'which', 'who', 'will',
    }
)  # fmt: skip


# -----------------------------
# Perturbation Lexicons
# -----------------------------
NEGATION_TOKENS: Final[frozenset[str]] = frozenset({'not', "n't", 'never', 'no'})
NEGATABLE_AUXILIARIES: Final[tuple[str, ...]] = (
    'may', 'might', 'can', 'could', 'will', 'would', 'should', 'must',
    'is', 'are', 'was', 'were', 'does', 'do', 'did', 'has', 'have',
)  # fmt: skip
ANTONYMS: Final[Mapping[str, str]] = MappingProxyType(
    {
        'safe': 'dangerous',
        'dangerous': 'safe',
        'support': 'oppose',
        'oppose': 'support',
        'increase': 'decrease',
        'decrease': 'increase',
        'increases': 'decreases',
        'decreases': 'increases',
        'protects': 'violates',
        'violates': 'protects',
        'rare': 'common',
        'common': 'rare',
        'benefit': 'harm',
        'harm': 'benefit',
        'mandatory': 'optional',
        'optional': 'mandatory',
        'effective': 'ineffective',
        'ineffective': 'effective',
        'high': 'low',
        'low': 'high',
    }
)


# -----------------------------
# Dataset Formats
# -----------------------------
@dataclass(frozen=True)
class DatasetFormats:
    """Supported dataset formats and their field names."""

    CLAIMS_JSON: ClassVar[str] = 'claims_json'
    PAIRS_CSV: ClassVar[str] = 'pairs_csv'
    VALID: ClassVar[frozenset[str]] = frozenset({CLAIMS_JSON, PAIRS_CSV})

    # claims_json record fields
    ID: ClassVar[str] = 'id'
    TOPIC: ClassVar[str] = 'topic'
    STANCE: ClassVar[str] = 'stance'
    CLAIMS: ClassVar[str] = 'claims'
    CLAIM: ClassVar[str] = 'claim'
    EVIDENCE: ClassVar[str] = 'evidence'
    SUMMARY: ClassVar[str] = 'summary'

    # pairs_csv header
    KEY_POINT: ClassVar[str] = 'key_point'
    ARGUMENT: ClassVar[str] = 'argument'
    CSV_HEADER: ClassVar[tuple[str, ...]] = (TOPIC, STANCE, KEY_POINT, ARGUMENT)


DATASET_FORMATS: Final[DatasetFormats] = DatasetFormats()

STANCE_ALIASES: Final[Mapping[str, str]] = MappingProxyType(
    {
        'support': 'support',
        'pro': 'support',
        '1': 'support',
        '+1': 'support',
        'oppose': 'oppose',
        'con': 'oppose',
        '-1': 'oppose',
        'neutral': 'neutral',
        '0': 'neutral',
    }
)
DEFAULT_TOPIC_TEST_FRACTION: Final[float] = 3 / 31


# -----------------------------
# Denoiser Defaults
# -----------------------------
@dataclass(frozen=True)
class DenoiserDefaults:
    """Default values for the denoiser module."""

    KIND_ORACLE: ClassVar[str] = 'oracle'
    KIND_CATEGORICAL: ClassVar[str] = 'categorical'
    KIND_REMOTE: ClassVar[str] = 'remote'
    KINDS: ClassVar[frozenset[str]] = frozenset({KIND_ORACLE, KIND_CATEGORICAL, KIND_REMOTE})

    MASK_RATIO: ClassVar[float] = 0.3
    EPOCHS: ClassVar[int] = 5
    CANVAS_LENGTH: ClassVar[int] = 64
    SMOOTHING_ALPHA: ClassVar[float] = 0.1
    COPY_BIAS: ClassVar[float] = 2.0
    POSITION_BUCKETS: ClassVar[int] = 8
    GRADIENT_STEP: ClassVar[float] = 0.1
    TOP_K: ClassVar[int] = 20

    POLICY_ARGMAX: ClassVar[str] = 'argmax'
    POLICY_SAMPLE: ClassVar[str] = 'sample'
    FILL_POLICIES: ClassVar[frozenset[str]] = frozenset({POLICY_ARGMAX, POLICY_SAMPLE})

    ARCHIVE_TAG: ClassVar[str] = 'argremask-denoiser'


DENOISER_DEFAULTS: Final[DenoiserDefaults] = DenoiserDefaults()


# -----------------------------
# Masking Defaults
# -----------------------------
@dataclass(frozen=True)
class MaskDefaults:
    """Default values for the masking module."""

    LAMBDA: ClassVar[float] = 0.1
    R: ClassVar[float] = 0.2
    R_DECAY: ClassVar[float] = 1.0
    EPSILON_CONVERGED: ClassVar[float] = 1e-6

    GRANULARITY_TOKEN: ClassVar[str] = 'token'
    GRANULARITY_SENTENCE: ClassVar[str] = 'sentence'
    GRANULARITIES: ClassVar[frozenset[str]] = frozenset({GRANULARITY_TOKEN, GRANULARITY_SENTENCE})

    SELECTION_TOP_R: ClassVar[str] = 'top_r'
    SELECTION_PROPORTIONAL: ClassVar[str] = 'proportional'
    SELECTIONS: ClassVar[frozenset[str]] = frozenset({SELECTION_TOP_R, SELECTION_PROPORTIONAL})


MASK_DEFAULTS: Final[MaskDefaults] = MaskDefaults()


# -----------------------------
# Sufficiency Defaults
# -----------------------------
@dataclass(frozen=True)
class SufficiencyDefaults:
    """Default values and mappings for the sufficiency module."""

    SOURCE_HEURISTIC: ClassVar[str] = 'heuristic'
    SOURCE_CLASSIFIER: ClassVar[str] = 'classifier'
    SOURCE_COT: ClassVar[str] = 'cot'
    SOURCE_COMBINED: ClassVar[str] = 'combined'
    SOURCE_NONE: ClassVar[str] = 'none'
    SCORERS: ClassVar[frozenset[str]] = frozenset(
        {SOURCE_HEURISTIC, SOURCE_CLASSIFIER, SOURCE_COT, SOURCE_COMBINED, SOURCE_NONE}
    )

    REDUNDANCY_OVERLAP: ClassVar[float] = 0.8
    REDUNDANCY_PENALTY: ClassVar[float] = 0.25
    UNIFORM_SCORE: ClassVar[float] = 0.5
    COMBINE_ALPHA: ClassVar[float] = 0.5

    CLASSIFIER_EPOCHS: ClassVar[int] = 300
    CLASSIFIER_LR: ClassVar[float] = 0.5
    CLASSIFIER_DIM: ClassVar[int] = 4096
    FEATURE_HASH_SEED: ClassVar[int] = 17
    K_PER_TYPE: ClassVar[int] = 2
    ARCHIVE_TAG: ClassVar[str] = 'argremask-classifier'

    PERTURB_NONE: ClassVar[str] = 'none'
    PERTURB_HALLUCINATED: ClassVar[str] = 'hallucinated'
    PERTURB_CONTRADICTORY: ClassVar[str] = 'contradictory'
    PERTURB_UNSUPPORTED: ClassVar[str] = 'unsupported'
    NEGATIVE_TYPES: ClassVar[tuple[str, ...]] = (PERTURB_CONTRADICTORY, PERTURB_HALLUCINATED, PERTURB_UNSUPPORTED)

    COT_TEMPLATE: ClassVar[str] = 'sufficiency_cot'
    DEBATE_TEMPLATE: ClassVar[str] = 'debate_speech'
    COT_MODEL: ClassVar[str] = 'gpt-4o-mini'
    COT_SYSTEM_PROMPT: ClassVar[str] = (
        'You judge whether a summary span is grounded in the supplied claims and evidence. '
        'Reason step by step, then finish with a single line of the form VERDICT: <label>.'
    )
    MAX_IN_FLIGHT: ClassVar[int] = 4


SUFFICIENCY_DEFAULTS: Final[SufficiencyDefaults] = SufficiencyDefaults()

VERDICT_SCORES: Final[Mapping[str, float]] = MappingProxyType(
    {
        'supported': 1.0,
        'insufficient': 0.0,
        'redundant': 0.25,
    }
)


# -----------------------------
# Engine Defaults
# -----------------------------
@dataclass(frozen=True)
class EngineDefaults:
    """Default values for the engine module."""

    STEPS: ClassVar[int] = 8
    ITERATIONS: ClassVar[int] = 3
    INNER_STEPS: ClassVar[int] = 4
    TAU: ClassVar[float] = 0.9

    POLICY_LOW_CONFIDENCE: ClassVar[str] = 'low_confidence_remask'
    POLICY_RANDOM: ClassVar[str] = 'random_remask'
    REMASK_POLICIES: ClassVar[frozenset[str]] = frozenset({POLICY_LOW_CONFIDENCE, POLICY_RANDOM})

    TERMINATED_BUDGET: ClassVar[str] = 'iteration_budget'
    TERMINATED_CONVERGED: ClassVar[str] = 'converged'


ENGINE_DEFAULTS: Final[EngineDefaults] = EngineDefaults()


# -----------------------------
# Evaluation Defaults
# -----------------------------
@dataclass(frozen=True)
class EvalDefaults:
    """Default values for the evaluation module."""

    COVERAGE_THRESHOLD: ClassVar[float] = 0.3
    WORKERS: ClassVar[int] = 1
    GRID_METRICS: ClassVar[tuple[str, ...]] = ('rouge_l', 'faithfulness', 'conciseness')
    METRIC_LABELS: ClassVar[Mapping[str, str]] = MappingProxyType(
        {
            'rouge_1': 'R-1',
            'rouge_2': 'R-2',
            'rouge_l': 'R-L',
            'coverage': 'Coverage',
            'faithfulness': 'Faithfulness',
            'conciseness': 'Conciseness',
            'bleurt': 'BLEURT',
            'bertscore': 'BERTScore',
        }
    )
    VARIANT_LABELS: ClassVar[Mapping[str, str]] = MappingProxyType(
        {
            'none': 'No Diagnosis',
            'heuristic': 'Heuristic Only',
            'cot': 'CoT Prompting Only',
            'classifier': 'Classifier Only',
            'combined': 'Combine',
        }
    )
    LAYOUT_CELLS: ClassVar[str] = 'cells'
    LAYOUT_ITERATIONS: ClassVar[str] = 'iterations'
    LAYOUT_VARIANTS: ClassVar[str] = 'variants'


EVAL_DEFAULTS: Final[EvalDefaults] = EvalDefaults()


# -----------------------------
# RNG Sub-Streams
# -----------------------------
@dataclass(frozen=True)
class RngStreams:
    """Names of the random sub-streams derived from the run seed."""

    TRAIN: ClassVar[str] = 'train'
    CORRUPT: ClassVar[str] = 'corrupt'
    PLAN: ClassVar[str] = 'plan'
    FILL: ClassVar[str] = 'fill'
    PERTURB: ClassVar[str] = 'perturb'
    CLASSIFIER: ClassVar[str] = 'classifier'
    SYNTHETIC: ClassVar[str] = 'synthetic'


RNG_STREAMS: Final[RngStreams] = RngStreams()
DEFAULT_SEED: Final[int] = 0


# -----------------------------
# Environment Variables
# -----------------------------
@dataclass(frozen=True)
class EnvVars:
    """Environment variables read by the package."""

    LLM_TOKEN: ClassVar[str] = 'REMASK_LLM_TOKEN'
    LLM_ENDPOINT: ClassVar[str] = 'REMASK_LLM_ENDPOINT'
    LOG_LEVEL: ClassVar[str] = 'REMASK_LOG_LEVEL'


ENV_VARS: Final[EnvVars] = EnvVars()


# -----------------------------
# HTTP / Networking Defaults
# -----------------------------
@dataclass(frozen=True)
class Headers:
    """HTTP header names and values used by the API module."""

    ACCEPT: ClassVar[str] = 'Accept'
    AUTHORIZATION: ClassVar[str] = 'Authorization'
    CONTENT_TYPE: ClassVar[str] = 'Content-Type'
    JSON: ClassVar[str] = 'application/json'
    BEARER: ClassVar[str] = 'Bearer {token}'


HEADERS: Final[Headers] = Headers()

DEFAULT_API_TIMEOUT_SECONDS: Final[int] = 30
DEFAULT_API_MAX_RETRIES: Final[int] = 3
DEFAULT_API_BACKOFF_SECONDS: Final[float] = 1.0
RETRYABLE_STATUS_CODES: Final[frozenset[int]] = frozenset({429, 500, 502, 503, 504})


# -----------------------------
# Command-Line Interface
# -----------------------------
@dataclass(frozen=True)
class ExitCodes:
    """Process exit codes returned by :py:func:`argremask.cli.run_command`."""

    SUCCESS: ClassVar[int] = 0
    USAGE: ClassVar[int] = 1
    RUNTIME: ClassVar[int] = 2


EXIT_CODES: Final[ExitCodes] = ExitCodes()
