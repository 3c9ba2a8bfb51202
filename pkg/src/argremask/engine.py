# -*- coding: utf-8 -*-
"""
:Module:            argremask.engine
:Synopsis:          Reverse denoising for initial generation and the sufficiency-guided refinement loop
:Usage:             ``from argremask import engine``
:Example:           ``trace = engine.refine(state, instance, model, scorer, engine.RefineConfig(), rng)``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import constants as const
from . import denoiser, errors, masking
from .corpus import ArgumentInstance
from .denoiser import DenoiserModel, SummaryState
from .masking import MaskConfig, MaskPlan
from .sufficiency import Scorer, SufficiencyProfile
from .utils import core_utils, log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_DEFAULTS = const.ENGINE_DEFAULTS

MetricsFn = Callable[[SummaryState, ArgumentInstance], dict]


@dataclass(frozen=True)
class DiffusionSchedule:
    """Number of denoising steps, the fraction of filled positions kept after each step and the remask policy."""

    steps: int
    keep_fraction_curve: tuple[float, ...]
    policy: str = _DEFAULTS.POLICY_LOW_CONFIDENCE

    def __post_init__(self):
        object.__setattr__(self, 'keep_fraction_curve', tuple(float(_frac) for _frac in self.keep_fraction_curve))
        curve = self.keep_fraction_curve
        if self.steps < 1 or len(curve) != self.steps:
            raise errors.exceptions.InvalidParameterError(param='steps', value=self.steps,
                                                          message='the keep-fraction curve needs one entry per step')
        if abs(curve[-1] - 1.0) > const.FLOAT_TOLERANCE or any(_b < _a for _a, _b in zip(curve, curve[1:])):
            raise errors.exceptions.InvalidParameterError(param='keep_fraction_curve', value=curve,
                                                          message='the curve must rise monotonically to 1.0')
        if any(not 0.0 <= _frac <= 1.0 for _frac in curve):
            raise errors.exceptions.InvalidParameterError(param='keep_fraction_curve', value=curve)
        if self.policy not in _DEFAULTS.REMASK_POLICIES:
            raise errors.exceptions.InvalidParameterError(param='policy', value=self.policy)

    @classmethod
    def linear(cls, steps: int = _DEFAULTS.STEPS, policy: str = _DEFAULTS.POLICY_LOW_CONFIDENCE) -> DiffusionSchedule:
        """Returns the schedule that keeps ``(k + 1) / T`` of the canvas after step ``k``."""
        if steps < 1:
            raise errors.exceptions.InvalidParameterError(param='steps', value=steps)
        return cls(steps=steps, keep_fraction_curve=tuple((_k + 1) / steps for _k in range(steps)), policy=policy)


@dataclass
class RefineConfig:
    """Settings of the refinement loop."""

    iterations: int = _DEFAULTS.ITERATIONS
    mask_config: MaskConfig = field(default_factory=MaskConfig)
    inner_steps: int = _DEFAULTS.INNER_STEPS
    tau: float = _DEFAULTS.TAU
    scorer: str = const.SUFFICIENCY_DEFAULTS.SOURCE_HEURISTIC
    remask_policy: str = _DEFAULTS.POLICY_LOW_CONFIDENCE

    def validate(self) -> None:
        """Checks every field.

        :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
        """
        if self.iterations < 0:
            raise errors.exceptions.InvalidParameterError(param='iterations', value=self.iterations)
        if self.inner_steps < 1:
            raise errors.exceptions.InvalidParameterError(param='inner_steps', value=self.inner_steps)
        if not 0.0 <= self.tau <= 1.0:
            raise errors.exceptions.InvalidParameterError(param='tau', value=self.tau)
        if self.scorer not in const.SUFFICIENCY_DEFAULTS.SCORERS:
            raise errors.exceptions.InvalidParameterError(param='scorer', value=self.scorer)
        if self.remask_policy not in _DEFAULTS.REMASK_POLICIES:
            raise errors.exceptions.InvalidParameterError(param='remask_policy', value=self.remask_policy)
        self.mask_config.validate()

    def echo(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TraceEntry:
    """One refinement iteration; entry 0 records the unrefined input with no plan."""

    iteration: int
    state_before: SummaryState
    profile: SufficiencyProfile
    plan: Optional[MaskPlan]
    state_after: SummaryState
    metrics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'iteration': self.iteration,
            'state_before': self.state_before.to_dict(),
            'profile': self.profile.to_dict(),
            'plan': self.plan.to_dict() if self.plan is not None else None,
            'state_after': self.state_after.to_dict(),
            'metrics': self.metrics,
        }


@dataclass
class RefinementTrace:
    """Every intermediate of a refinement run and the reason it stopped."""

    entries: list[TraceEntry] = field(default_factory=list)
    terminated_by: str = _DEFAULTS.TERMINATED_BUDGET

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def final_state(self) -> SummaryState:
        return self.entries[-1].state_after

    def state_at(self, iteration: int) -> SummaryState:
        """Returns the state after ``iteration`` refinements (the final state when the loop stopped earlier)."""
        return self.entries[min(iteration, len(self.entries) - 1)].state_after

    def to_jsonl(self) -> str:
        """Returns one JSON line per iteration; ``terminated_by`` is set on the last line only."""
        lines = []
        for _idx, _entry in enumerate(self.entries):
            record = _entry.to_dict()
            record['terminated_by'] = self.terminated_by if _idx == len(self.entries) - 1 else None
            lines.append(core_utils.dump_json(record))
        return '\n'.join(lines) + '\n'

    def write_trace(self, path: str) -> None:
        core_utils.write_text(path, self.to_jsonl())
        logger.info(f'Wrote the refinement trace ({len(self.entries)} entries) to {path}')


def has_converged(profile: SufficiencyProfile, tau: float) -> bool:
    """Returns ``True`` when every position of the profile scores at least ``tau``."""
    return profile.min_score() >= tau


def _denoise(
    model: DenoiserModel,
    state: SummaryState,
    instance: ArgumentInstance,
    schedule: DiffusionSchedule,
    rng: Optional[np.random.Generator],
    fill_policy: str,
) -> SummaryState:
    """This function runs the reverse process over the positions that are masked on entry.

    Each step fills every masked position, then keeps just enough of the newly filled positions for the kept
    share of the initially masked set to reach the schedule's fraction. The rest are masked again, choosing
    the least confident fills (ties to the higher index) or random ones depending on the policy.
    """
    initial = len(state.masked_positions())
    for _step, _fraction in enumerate(schedule.keep_fraction_curve):
        if state.is_fully_unmasked():
            break
        filled_positions = state.masked_positions()
        filled = denoiser.fill_masks(model, state, instance, rng, fill_policy)
        kept_before = initial - len(filled_positions)
        keep_new = max(core_utils.round_half_up(_fraction * initial) - kept_before, 0)
        if keep_new >= len(filled_positions):
            state = filled
            continue
        if schedule.policy == _DEFAULTS.POLICY_LOW_CONFIDENCE:
            ranked = sorted(filled_positions, key=lambda _pos: (-filled.confidence[_pos], _pos))
            keep = set(ranked[:keep_new])
        else:
            if rng is None:
                raise errors.exceptions.MissingRequiredDataError(param='rng')
            keep = {int(_pos) for _pos in rng.choice(filled_positions, size=keep_new, replace=False)}
        state = filled.with_masked(_pos for _pos in filled_positions if _pos not in keep)
        logger.debug(f'Denoising step {_step + 1}/{schedule.steps}: {initial - len(state.masked_positions())} of {initial} kept')
    return state


def generate(
    input: ArgumentInstance,
    model: DenoiserModel,
    schedule: Optional[DiffusionSchedule] = None,
    length: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    fill_policy: str = const.DENOISER_DEFAULTS.POLICY_ARGMAX,
) -> SummaryState:
    """This function generates a summary canvas from the all-MASK state.

    :param input: The conditioning instance
    :type input: class[argremask.corpus.ArgumentInstance]
    :param model: The denoiser
    :type model: class[argremask.denoiser.DenoiserModel]
    :param schedule: The diffusion schedule (linear over 8 steps by default)
    :type schedule: class[argremask.engine.DiffusionSchedule], None
    :param length: The canvas length (the model's canvas length by default)
    :type length: int, None
    :param rng: The ``fill`` random stream (needed for sampling and random remasking)
    :type rng: class[numpy.random.Generator], None
    :param fill_policy: ``argmax`` (default) or ``sample``
    :type fill_policy: str
    :returns: The fully unmasked state, with PAD after the first EOS
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    schedule = schedule or DiffusionSchedule.linear()
    length = model.canvas_length if length is None else length
    if length < 1:
        raise errors.exceptions.InvalidParameterError(param='length', value=length)
    state = _denoise(model, SummaryState.fully_masked(length), input, schedule, rng, fill_policy)
    return state.read_out()


def refine(
    state: SummaryState,
    input: ArgumentInstance,
    model: DenoiserModel,
    scorer: Scorer,
    config: Optional[RefineConfig] = None,
    rng: Optional[np.random.Generator] = None,
    metrics_fn: Optional[MetricsFn] = None,
) -> RefinementTrace:
    """This function repeatedly scores, remasks and regenerates the weakest parts of a summary.

    Iteration ``k`` scores the current state, stops when every score reaches ``tau``, plans a remask with
    ``r * r_decay ** (k - 1)`` over the summary body, applies it and re-fills the masked positions with argmax
    denoising over ``inner_steps`` steps. The loop also stops when a plan reports convergence.

    :param state: A fully unmasked summary state
    :type state: class[argremask.denoiser.SummaryState]
    :param input: The conditioning instance
    :type input: class[argremask.corpus.ArgumentInstance]
    :param model: The denoiser
    :type model: class[argremask.denoiser.DenoiserModel]
    :param scorer: The sufficiency scorer
    :type scorer: class[argremask.sufficiency.Scorer]
    :param config: The refinement configuration (defaults apply when omitted)
    :type config: class[argremask.engine.RefineConfig], None
    :param rng: The ``plan`` random stream (seed 0 when omitted)
    :type rng: class[numpy.random.Generator], None
    :param metrics_fn: Optional callable that returns the metrics snapshot of a state
    :type metrics_fn: Callable, None
    :returns: The refinement trace
    :raises: :py:exc:`argremask.errors.exceptions.FeatureNotConfiguredError`,
             :py:exc:`argremask.errors.exceptions.PositionError`
    """
    config = config or RefineConfig()
    config.validate()
    scorer.ensure_configured()
    masked = state.masked_positions()
    if masked:
        raise errors.exceptions.PositionError(position=masked[0], message='Refinement needs a fully unmasked state.')
    rng = rng if rng is not None else core_utils.get_rng(const.DEFAULT_SEED, const.RNG_STREAMS.PLAN)
    mask_config = config.mask_config
    inner = DiffusionSchedule.linear(config.inner_steps, config.remask_policy)

    def _metrics(_state: SummaryState) -> dict:
        return metrics_fn(_state, input) if metrics_fn else {}

    profile = scorer(state, input)
    trace = RefinementTrace(entries=[TraceEntry(0, state, profile, None, state, _metrics(state))])
    current = state
    for _iteration in range(1, config.iterations + 1):
        if _iteration > 1:
            profile = scorer(current, input)
        r = mask_config.r * mask_config.r_decay ** (_iteration - 1)
        if has_converged(profile, config.tau):
            plan = MaskPlan.empty(r=r, lam=mask_config.lam, converged=True)
        elif mask_config.granularity == const.MASK_DEFAULTS.GRANULARITY_SENTENCE:
            plan = masking.sentence_mask_plan(current, profile, mask_config.with_r(r))
        else:
            candidates = range(current.body_length() or len(current))
            plan = masking.sufficiency_mask_plan(profile, candidates, mask_config.with_r(r), rng)
        if plan.converged:
            trace.entries.append(TraceEntry(_iteration, current, profile, plan, current, _metrics(current)))
            trace.terminated_by = _DEFAULTS.TERMINATED_CONVERGED
            logger.debug(f'Refinement converged at iteration {_iteration}')
            break
        remasked = masking.apply_plan(current, plan)
        after = current
        if not remasked.is_fully_unmasked():
            after = _denoise(model, remasked, input, inner, rng, const.DENOISER_DEFAULTS.POLICY_ARGMAX).read_out()
        trace.entries.append(TraceEntry(_iteration, current, profile, plan, after, _metrics(after)))
        logger.debug(f'Refinement iteration {_iteration}: remasked {len(plan)} positions')
        current = after
    return trace
