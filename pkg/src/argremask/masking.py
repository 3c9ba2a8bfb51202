# -*- coding: utf-8 -*-
"""
:Module:            argremask.masking
:Synopsis:          Corruption of summary canvases: training-time masking and sufficiency-guided remask plans
:Usage:             ``from argremask import masking``
:Example:           ``plan = masking.sufficiency_mask_plan(profile, range(len(state)), masking.MaskConfig(), rng)``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, Iterable, Optional, Union

import numpy as np

from . import constants as const
from . import corpus, denoiser, errors
from .corpus import TokenSeq
from .utils import core_utils, log_utils

if TYPE_CHECKING:
    from .sufficiency import SufficiencyProfile

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_DEFAULTS = const.MASK_DEFAULTS


@dataclass
class MaskConfig:
    """Settings for remask planning; ``lam`` is the exploration-noise coefficient."""

    lam: float = _DEFAULTS.LAMBDA
    r: float = _DEFAULTS.R
    r_decay: float = _DEFAULTS.R_DECAY
    epsilon_converged: float = _DEFAULTS.EPSILON_CONVERGED
    granularity: str = _DEFAULTS.GRANULARITY_TOKEN
    selection: str = _DEFAULTS.SELECTION_TOP_R

    def validate(self) -> None:
        """Checks every range and enumeration.

        :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
        """
        if self.lam < 0:
            raise errors.exceptions.InvalidParameterError(param='lambda', value=self.lam)
        if not 0.0 <= self.r <= 1.0:
            raise errors.exceptions.InvalidParameterError(param='r', value=self.r)
        if self.r_decay <= 0:
            raise errors.exceptions.InvalidParameterError(param='r_decay', value=self.r_decay)
        if self.epsilon_converged < 0:
            raise errors.exceptions.InvalidParameterError(param='epsilon_converged', value=self.epsilon_converged)
        if self.granularity not in _DEFAULTS.GRANULARITIES:
            raise errors.exceptions.InvalidParameterError(param='granularity', value=self.granularity)
        if self.selection not in _DEFAULTS.SELECTIONS:
            raise errors.exceptions.InvalidParameterError(param='selection', value=self.selection)

    def with_r(self, r: float) -> MaskConfig:
        values = asdict(self)
        values['r'] = min(max(r, 0.0), 1.0)
        return MaskConfig(**values)


@dataclass(frozen=True)
class MaskPlan:
    """The set of canvas positions to remask and the realized weights that selected them.

    ``candidates`` lists the scored units: canvas positions for token plans and sentence start positions for
    sentence plans, aligned with ``weights``.
    """

    positions: tuple[int, ...]
    weights: tuple[float, ...]
    r: float
    lam: float
    converged: bool = False
    candidates: tuple[int, ...] = ()
    granularity: str = _DEFAULTS.GRANULARITY_TOKEN

    def __post_init__(self):
        object.__setattr__(self, 'positions', tuple(sorted(int(_pos) for _pos in set(self.positions))))
        object.__setattr__(self, 'weights', tuple(float(_weight) for _weight in self.weights))
        object.__setattr__(self, 'candidates', tuple(int(_pos) for _pos in self.candidates))

    def __len__(self) -> int:
        return len(self.positions)

    @classmethod
    def empty(cls, r: float = 0.0, lam: float = 0.0, converged: bool = False) -> MaskPlan:
        return cls(positions=(), weights=(), r=r, lam=lam, converged=converged)

    def to_dict(self) -> dict:
        return {
            'positions': list(self.positions),
            'weights': [round(_weight, 12) for _weight in self.weights],
            'r': self.r,
            'lambda': self.lam,
            'converged': self.converged,
            'candidates': list(self.candidates),
            'granularity': self.granularity,
        }

    def to_json(self) -> str:
        return core_utils.dump_json(self.to_dict())

    @classmethod
    def from_json(cls, payload: Union[str, dict]) -> MaskPlan:
        data = json.loads(payload) if isinstance(payload, str) else payload
        return cls(
            positions=tuple(data['positions']),
            weights=tuple(data.get('weights', ())),
            r=float(data['r']),
            lam=float(data['lambda']),
            converged=bool(data.get('converged', False)),
            candidates=tuple(data.get('candidates', ())),
            granularity=data.get('granularity', _DEFAULTS.GRANULARITY_TOKEN),
        )


def _mask_count(_fraction: float, _total: int) -> int:
    return core_utils.round_half_up(_fraction * _total)


def corrupt(reference: TokenSeq, ratio: float, rng: np.random.Generator) -> tuple[denoiser.SummaryState, MaskPlan]:
    """This function masks a uniformly random subset of a reference sequence.

    Exactly ``round(ratio * L)`` positions are masked (at least one when ``ratio > 0``), drawn without
    replacement.

    :param reference: The reference sequence (non-empty)
    :type reference: class[argremask.corpus.TokenSeq]
    :param ratio: The corruption ratio in ``[0, 1]``
    :type ratio: float
    :param rng: The random stream
    :type rng: class[numpy.random.Generator]
    :returns: The corrupted state and the plan that produced it
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if not len(reference):
        raise errors.exceptions.InvalidParameterError(param='reference', message='the reference must not be empty')
    if not 0.0 <= ratio <= 1.0:
        raise errors.exceptions.InvalidParameterError(param='ratio', value=ratio)
    length = len(reference)
    count = _mask_count(ratio, length)
    if ratio > 0:
        count = min(max(count, 1), length)
    positions = rng.choice(length, size=count, replace=False) if count else ()
    state = denoiser.SummaryState.from_tokens(reference).with_masked(int(_pos) for _pos in positions)
    plan = MaskPlan(positions=tuple(positions), weights=(1.0,) * length, r=ratio, lam=0.0, candidates=tuple(range(length)))
    return state, plan


def sufficiency_mask_plan(
    profile: SufficiencyProfile,
    candidates: Iterable[int],
    config: Optional[MaskConfig] = None,
    rng: Optional[np.random.Generator] = None,
) -> MaskPlan:
    """This function selects the candidate positions to remask from their sufficiency scores.

    Each candidate receives the realized weight ``(1 - s_i) + lam * u_i`` with ``u_i`` drawn independently from
    ``[0, 1)``. Under ``top_r`` selection the ``round(r * n)`` largest weights are taken (lower index on ties);
    under ``proportional`` selection that many candidates are sampled without replacement with probability
    proportional to the positive weights, which can yield fewer positions when fewer weights are positive.
    When the positive weights sum to less than ``epsilon_converged`` the plan is empty and converged.

    :param profile: The sufficiency profile of the current state
    :type profile: class[argremask.sufficiency.SufficiencyProfile]
    :param candidates: The candidate positions (non-empty)
    :type candidates: list, range
    :param config: The masking configuration (defaults apply when omitted)
    :type config: class[argremask.masking.MaskConfig], None
    :param rng: The random stream (``plan`` sub-stream of seed 0 when omitted)
    :type rng: class[numpy.random.Generator], None
    :returns: The mask plan
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`,
             :py:exc:`argremask.errors.exceptions.PositionError`
    """
    config = config or MaskConfig()
    config.validate()
    rng = rng if rng is not None else core_utils.get_rng(const.DEFAULT_SEED, const.RNG_STREAMS.PLAN)
    candidates = sorted(set(int(_pos) for _pos in candidates))
    if not candidates:
        raise errors.exceptions.InvalidParameterError(param='candidates', message='at least one candidate is required')
    scores = profile.scores
    for _pos in candidates:
        if not 0 <= _pos < len(scores):
            logger.error(f'The sufficiency profile does not cover the candidate position {_pos}')
            raise errors.exceptions.PositionError(position=_pos, message='The sufficiency profile does not cover it.')

    noise = rng.random(len(candidates))
    weights = 1.0 - np.asarray([scores[_pos] for _pos in candidates], dtype=float) + config.lam * noise
    positive = np.clip(weights, 0.0, None)
    if positive.sum() < config.epsilon_converged:
        return MaskPlan(positions=(), weights=tuple(weights), r=config.r, lam=config.lam, converged=True,
                        candidates=tuple(candidates))

    count = _mask_count(config.r, len(candidates))
    if config.selection == _DEFAULTS.SELECTION_TOP_R:
        order = sorted(range(len(candidates)), key=lambda _idx: (-weights[_idx], candidates[_idx]))
        chosen = [candidates[_idx] for _idx in order[:count]]
    else:
        size = min(count, int(np.count_nonzero(positive)))
        picks = rng.choice(len(candidates), size=size, replace=False, p=positive / positive.sum()) if size else ()
        chosen = [candidates[int(_idx)] for _idx in picks]
    return MaskPlan(positions=tuple(chosen), weights=tuple(weights), r=config.r, lam=config.lam,
                    candidates=tuple(candidates))


def sentence_mask_plan(state: denoiser.SummaryState, profile: SufficiencyProfile,
                       config: Optional[MaskConfig] = None) -> MaskPlan:
    """This function masks whole sentences, choosing the ``round(r * k)`` sentences with the lowest mean score.

    Sentences are split over the summary body (the tokens before the first EOS or PAD, or the whole canvas when
    the body is empty); text without a terminator is a single sentence. Ties go to the earlier sentence.

    :param state: The canvas to plan over
    :type state: class[argremask.denoiser.SummaryState]
    :param profile: Its sufficiency profile
    :type profile: class[argremask.sufficiency.SufficiencyProfile]
    :param config: The masking configuration with ``granularity = sentence``
    :type config: class[argremask.masking.MaskConfig], None
    :returns: The mask plan (weights hold ``1 - mean`` per sentence)
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    config = config or MaskConfig(granularity=_DEFAULTS.GRANULARITY_SENTENCE)
    config.validate()
    if config.granularity != _DEFAULTS.GRANULARITY_SENTENCE:
        raise errors.exceptions.InvalidParameterError(param='granularity', value=config.granularity,
                                                      message='sentence plans need sentence granularity')
    if len(profile.scores) != len(state):
        raise errors.exceptions.DataMismatchError(data=('sufficiency profile', 'summary state'))
    end = state.body_length() or len(state)
    spans = corpus.split_sentences(state.surface[:end])
    means = [float(np.mean(profile.scores[_start:_end])) for _start, _end in spans]
    weights = tuple(1.0 - _mean for _mean in means)
    starts = tuple(_start for _start, _ in spans)
    if sum(max(_weight, 0.0) for _weight in weights) < config.epsilon_converged:
        return MaskPlan(positions=(), weights=weights, r=config.r, lam=0.0, converged=True, candidates=starts,
                        granularity=_DEFAULTS.GRANULARITY_SENTENCE)
    count = _mask_count(config.r, len(spans))
    order = sorted(range(len(spans)), key=lambda _idx: (means[_idx], _idx))[:count]
    positions = [_pos for _idx in order for _pos in range(*spans[_idx])]
    return MaskPlan(positions=tuple(positions), weights=weights, r=config.r, lam=0.0, candidates=starts,
                    granularity=_DEFAULTS.GRANULARITY_SENTENCE)


def apply_plan(state: denoiser.SummaryState, plan: MaskPlan) -> denoiser.SummaryState:
    """This function sets every planned position to MASK; converged and empty plans leave the state unchanged.

    :raises: :py:exc:`argremask.errors.exceptions.PositionError`
    """
    for _pos in plan.positions:
        if not 0 <= _pos < len(state):
            raise errors.exceptions.PositionError(position=_pos, message=f'The canvas length is {len(state)}.')
    if plan.converged or not plan.positions:
        return state
    return state.with_masked(plan.positions)
