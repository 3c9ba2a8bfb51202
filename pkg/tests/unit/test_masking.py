# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:         tests.unit.test_masking
:Synopsis:       This module is used by pytest to test corruption and sufficiency-guided remask plans
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

import numpy as np
import pytest

from argremask import constants as const
from argremask import corpus, errors, masking
from argremask.denoiser import SummaryState
from argremask.masking import MaskConfig, MaskPlan
from argremask.sufficiency import SufficiencyProfile
from argremask.utils import core_utils

_DEFAULTS = const.MASK_DEFAULTS
_SENTENCE = _DEFAULTS.GRANULARITY_SENTENCE
_PROPORTIONAL = _DEFAULTS.SELECTION_PROPORTIONAL


def _profile(scores):
    return SufficiencyProfile(scores=tuple(scores), spans=(), summary_hash='test')


def _rng(*keys):
    return core_utils.get_rng(0, const.RNG_STREAMS.PLAN, *keys)


@pytest.mark.parametrize(('ratio', 'expected'), [(0.3, 3), (0.0, 0), (1.0, 10), (0.01, 1), (0.25, 3)])
def test_corrupt_masks_the_rounded_count(ratio, expected):
    """This function tests that corruption masks ``round(ratio * L)`` positions with at least one when positive."""
    reference = corpus.tokenize('a b c d e f g h i j')
    state, plan = masking.corrupt(reference, ratio, _rng('corrupt'))
    assert len(state.masked_positions()) == expected
    assert list(plan.positions) == state.masked_positions()
    assert plan.weights == (1.0,) * 10


@pytest.mark.parametrize('ratio', [-0.1, 1.5])
def test_corrupt_rejects_out_of_range_ratio(ratio):
    """This function tests that ratios outside ``[0, 1]`` are rejected."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        masking.corrupt(corpus.tokenize('a b'), ratio, _rng())


def test_corrupt_is_reproducible_with_a_seed():
    """This function tests that one seed always corrupts the same positions."""
    reference = corpus.tokenize('a b c d e f g h i j')
    first = masking.corrupt(reference, 0.5, core_utils.get_rng(3, const.RNG_STREAMS.CORRUPT))
    second = masking.corrupt(reference, 0.5, core_utils.get_rng(3, const.RNG_STREAMS.CORRUPT))
    assert first == second


def test_corruption_selects_every_position_with_the_ratio():
    """This function tests that each of ten positions is masked in about 30% of 10,000 corruptions at ratio 0.3."""
    reference = corpus.tokenize('a b c d e f g h i j')
    rng = core_utils.get_rng(0, const.RNG_STREAMS.CORRUPT, 'frequency')
    trials = 10000
    counts = np.zeros(len(reference))
    for _ in range(trials):
        state, _ = masking.corrupt(reference, 0.3, rng)
        masked = state.masked_positions()
        assert len(masked) == 3
        counts[masked] += 1
    assert counts / trials == pytest.approx(np.full(len(reference), 0.3), abs=0.02)


@pytest.mark.parametrize('seed', range(100))
def test_plan_masks_the_least_sufficient_position(seed):
    """This function tests the ``[0, 0.5, 1]`` profile with no exploration and ``r = 1/3`` for many seeds."""
    rng = core_utils.get_rng(seed, const.RNG_STREAMS.PLAN)
    plan = masking.sufficiency_mask_plan(_profile([0.0, 0.5, 1.0]), range(3), MaskConfig(lam=0.0, r=1 / 3), rng)
    assert plan.positions == (0,)
    assert plan.weights == pytest.approx((1.0, 0.5, 0.0))
    assert not plan.converged


def test_plan_converges_when_everything_is_sufficient():
    """This function tests that a fully sufficient profile without exploration yields an empty converged plan."""
    plan = masking.sufficiency_mask_plan(_profile([1.0] * 5), range(5), MaskConfig(lam=0.0, r=0.4), _rng())
    assert plan.converged
    assert plan.positions == ()


def test_plan_with_full_ratio_masks_every_candidate():
    """This function tests that ``r = 1`` under top-r selection masks all candidates."""
    plan = masking.sufficiency_mask_plan(_profile([0.0, 0.5, 1.0]), range(3), MaskConfig(lam=0.0, r=1.0), _rng())
    assert plan.positions == (0, 1, 2)


def test_plan_with_zero_ratio_masks_nothing():
    """This function tests that ``r = 0`` produces an empty plan that is not converged."""
    plan = masking.sufficiency_mask_plan(_profile([0.0, 0.5]), range(2), MaskConfig(lam=0.0, r=0.0), _rng())
    assert plan.positions == ()
    assert not plan.converged


def test_top_r_breaks_ties_by_position():
    """This function tests that equal weights select the lower positions first."""
    plan = masking.sufficiency_mask_plan(_profile([0.5] * 4), range(4), MaskConfig(lam=0.0, r=0.5), _rng())
    assert plan.positions == (0, 1)


def test_plan_only_considers_candidates():
    """This function tests that positions outside the candidate set are never masked."""
    plan = masking.sufficiency_mask_plan(_profile([0.0, 0.0, 0.9, 0.8]), [2, 3], MaskConfig(lam=0.0, r=0.5), _rng())
    assert plan.positions == (3,)
    assert plan.candidates == (2, 3)


def test_proportional_selection_skips_zero_weights():
    """This function tests that proportional sampling returns fewer positions when fewer weights are positive."""
    config = MaskConfig(lam=0.0, r=1.0, selection=_PROPORTIONAL)
    plan = masking.sufficiency_mask_plan(_profile([0.0, 0.5, 1.0]), range(3), config, _rng())
    assert plan.positions == (0, 1)


@pytest.mark.parametrize('scores', [[0.0, 0.5], [0.2, 0.6, 0.9], [0.0, 0.0, 0.5, 1.0]])
def test_proportional_selection_follows_the_weights(scores):
    """This function tests that a single draw picks each position with probability ``(1 - s_i) / sum(1 - s_j)``."""
    config = MaskConfig(lam=0.0, r=1 / len(scores), selection=_PROPORTIONAL)
    profile = _profile(scores)
    rng = _rng('law', str(len(scores)))
    trials = 10000
    counts = np.zeros(len(scores))
    for _ in range(trials):
        counts[list(masking.sufficiency_mask_plan(profile, range(len(scores)), config, rng).positions)] += 1
    weights = 1.0 - np.asarray(scores)
    assert counts / trials == pytest.approx(weights / weights.sum(), abs=0.02)


def test_exploration_reaches_sufficient_positions():
    """This function tests that exploration noise can select positions that are already fully sufficient."""
    profile = _profile([1.0] * 4)
    explored = masking.sufficiency_mask_plan(profile, range(4), MaskConfig(lam=0.5, r=0.5, selection=_PROPORTIONAL),
                                             _rng())
    assert not explored.converged
    assert len(explored) == 2
    assert all(0.0 <= _weight < 0.5 for _weight in explored.weights)


def _sufficient_rate(lam, selection, trials=10000):
    profile = _profile([0.0, 1.0])
    rng = _rng('explore', selection, str(lam))
    config = MaskConfig(lam=lam, r=0.5, selection=selection)
    return sum(masking.sufficiency_mask_plan(profile, range(2), config, rng).positions == (1,)
               for _ in range(trials)) / trials


def test_exploration_reaches_a_fully_sufficient_position():
    """This function tests that ``lam = 0.1`` sometimes picks the sufficient position and ``lam = 0`` never does."""
    assert _sufficient_rate(0.1, _PROPORTIONAL) > 0.0
    assert _sufficient_rate(0.0, _PROPORTIONAL) == 0.0


def test_exploration_raises_the_chance_of_sufficient_positions():
    """This function tests that a larger exploration coefficient picks a sufficient position more often."""
    assert _sufficient_rate(1.0, _PROPORTIONAL, trials=2000) > _sufficient_rate(0.1, _PROPORTIONAL, trials=2000)


@pytest.mark.parametrize('lam', [0.0, 0.1])
def test_top_r_never_prefers_small_exploration_over_a_full_gap(lam):
    """This function tests that top-r keeps the unsupported position while the noise cannot close the gap."""
    assert _sufficient_rate(lam, _DEFAULTS.SELECTION_TOP_R, trials=1000) == 0.0


def test_plan_is_deterministic_for_a_seed():
    """This function tests that the same random stream produces the same plan."""
    profile = _profile([0.2, 0.4, 0.6, 0.8, 1.0])
    config = MaskConfig(lam=0.3, r=0.4, selection=_PROPORTIONAL)
    first = masking.sufficiency_mask_plan(profile, range(5), config, _rng('same'))
    second = masking.sufficiency_mask_plan(profile, range(5), config, _rng('same'))
    assert first == second


def test_plan_rejects_empty_candidates():
    """This function tests that an empty candidate set raises an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        masking.sufficiency_mask_plan(_profile([0.5]), [], MaskConfig(), _rng())


def test_plan_rejects_candidates_outside_the_profile():
    """This function tests that a candidate the profile does not cover raises an exception."""
    with pytest.raises(errors.exceptions.PositionError):
        masking.sufficiency_mask_plan(_profile([0.5, 0.5]), [0, 4], MaskConfig(), _rng())


@pytest.mark.parametrize(
    'config',
    [MaskConfig(lam=-0.1), MaskConfig(r=1.2), MaskConfig(r_decay=0.0), MaskConfig(granularity='word'),
     MaskConfig(selection='greedy')],
)
def test_mask_config_validation(config):
    """This function tests that out-of-range settings are rejected."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        config.validate()


def test_mask_config_with_r_clips():
    """This function tests that a derived ratio stays inside ``[0, 1]``."""
    assert MaskConfig().with_r(1.7).r == 1.0
    assert MaskConfig().with_r(-0.2).r == 0.0
    assert MaskConfig(lam=0.4).with_r(0.3).lam == 0.4


def test_sentence_plan_masks_the_weakest_sentence():
    """This function tests that the sentence with the lowest mean score is masked in full."""
    state = SummaryState.from_tokens(corpus.tokenize('a b . c d .'))
    profile = _profile([0.9, 0.9, 0.9, 0.2, 0.2, 0.2])
    plan = masking.sentence_mask_plan(state, profile, MaskConfig(granularity=_SENTENCE, r=0.5))
    assert plan.positions == (3, 4, 5)
    assert plan.candidates == (0, 3)
    assert plan.weights == pytest.approx((0.1, 0.8))


def test_sentence_plan_breaks_ties_toward_the_earlier_sentence():
    """This function tests that two equally weak sentences resolve to the first one."""
    state = SummaryState.from_tokens(corpus.tokenize('a . b . c .'))
    profile = _profile([0.5, 0.5, 0.5, 0.5, 0.9, 0.9])
    plan = masking.sentence_mask_plan(state, profile, MaskConfig(granularity=_SENTENCE, r=1 / 3))
    assert plan.positions == (0, 1)


def test_sentence_plan_requires_sentence_granularity():
    """This function tests that a token-granularity configuration is rejected."""
    state = SummaryState.from_tokens(corpus.tokenize('a b .'))
    with pytest.raises(errors.exceptions.InvalidParameterError):
        masking.sentence_mask_plan(state, _profile([0.5] * 3), MaskConfig())


def test_sentence_plan_rejects_mismatched_profile():
    """This function tests that the profile must cover exactly the canvas."""
    state = SummaryState.from_tokens(corpus.tokenize('a b .'))
    with pytest.raises(errors.exceptions.DataMismatchError):
        masking.sentence_mask_plan(state, _profile([0.5] * 2), MaskConfig(granularity=_SENTENCE))


def test_apply_plan_masks_planned_positions():
    """This function tests that applying a plan masks exactly its positions."""
    state = SummaryState.from_tokens(corpus.tokenize('a b c d e'))
    masked = masking.apply_plan(state, MaskPlan(positions=(3, 1, 3), weights=(), r=0.4, lam=0.0))
    assert masked.masked_positions() == [1, 3]
    assert masked.surface[0] == 'a'


def test_apply_plan_leaves_state_unchanged_for_converged_plan():
    """This function tests that a converged plan is a no-op."""
    state = SummaryState.from_tokens(corpus.tokenize('a b'))
    assert masking.apply_plan(state, MaskPlan.empty(converged=True)) is state


def test_apply_plan_rejects_positions_off_the_canvas():
    """This function tests that a plan position beyond the canvas raises an exception."""
    state = SummaryState.from_tokens(corpus.tokenize('a b'))
    with pytest.raises(errors.exceptions.PositionError):
        masking.apply_plan(state, MaskPlan(positions=(5,), weights=(), r=1.0, lam=0.0))


def test_mask_plan_json_preserves_selection():
    """This function tests that a plan loaded from its JSON form equals the original."""
    plan = masking.sufficiency_mask_plan(_profile([0.1, 0.7, 0.3]), range(3), MaskConfig(lam=0.2, r=0.7), _rng())
    assert MaskPlan.from_json(plan.to_json()).positions == plan.positions
    assert '"lambda":0.2' in plan.to_json().replace(' ', '')
