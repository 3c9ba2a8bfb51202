# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:         tests.unit.test_sufficiency
:Synopsis:       This module is used by pytest to test sufficiency profiles, scorers, perturbations and the CoT judge
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

import math

import pytest

from argremask import constants as const
from argremask import corpus, denoiser, errors, sufficiency
from argremask.denoiser import SummaryState
from argremask.sufficiency import CotClient, SpanScore, SufficiencyProfile
from argremask.utils import core_utils
from tests.unit import resources

_DEFAULTS = const.SUFFICIENCY_DEFAULTS
_ENDPOINT = 'https://llm.example/v1/chat/completions'


def _state(text, length=16):
    return SummaryState.from_tokens(denoiser.fit_to_canvas(corpus.tokenize(text), length))


# -----------------------------
# Profiles
# -----------------------------


def test_broadcast_takes_the_minimum_on_overlap():
    """This function tests that overlapping spans resolve to the lower score."""
    assert sufficiency.broadcast_span_scores([(0, 3, 0.5), (2, 5, 0.2)], 5) == [0.5, 0.5, 0.2, 0.2, 0.2]


def test_broadcast_accepts_span_score_objects():
    """This function tests broadcasting :py:class:`SpanScore` objects."""
    spans = [SpanScore(0, 2, 1.0), SpanScore(2, 3, 0.0)]
    assert sufficiency.broadcast_span_scores(spans, 3) == [1.0, 1.0, 0.0]


def test_broadcast_reports_coverage_gaps():
    """This function tests that uncovered positions raise an exception."""
    with pytest.raises(errors.exceptions.CoverageGapError):
        sufficiency.broadcast_span_scores([(0, 2, 0.5)], 4)


@pytest.mark.parametrize('span', [(0, 3, 1.5), (2, 2, 0.5), (0, 9, 0.5)])
def test_broadcast_rejects_invalid_spans(span):
    """This function tests that out-of-range scores and spans raise an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        sufficiency.broadcast_span_scores([span], 3)


def test_empty_profile_statistics_default_to_one():
    """This function tests the minimum and mean of a profile without positions."""
    profile = SufficiencyProfile(scores=(), spans=(), summary_hash='empty')
    assert profile.min_score() == 1.0
    assert profile.mean_score() == 1.0


# -----------------------------
# Heuristic scoring
# -----------------------------


def test_idf_table_counts_claim_and_evidence_documents(vaccination_instance):
    """This function tests the smoothed IDF over the six claim and evidence texts of the vaccination instance."""
    idf = sufficiency.IdfTable.from_instances([vaccination_instance])
    assert idf.documents == 6
    assert idf.weight('vaccination') == pytest.approx(math.log(7 / 3) + 1.0)
    assert idf.weight('unseen') == idf.max_idf == pytest.approx(math.log(7) + 1.0)


def test_grounded_sentence_scores_one(vaccination_instance):
    """This function tests that a sentence built from claim content is fully sufficient."""
    profile = sufficiency.heuristic_scores(_state('Vaccines may be dangerous.'), vaccination_instance)
    assert profile.scores[:5] == (1.0,) * 5
    assert profile.min_score() == 1.0


def test_ungrounded_sentence_scores_zero(vaccination_instance):
    """This function tests that a sentence with no grounded content scores 0 while the tail stays at 1."""
    state = _state('Vaccines may be dangerous. Xylophones sing loudly.')
    profile = sufficiency.heuristic_scores(state, vaccination_instance)
    assert profile.scores[5:9] == (0.0,) * 4
    assert profile.scores[-1] == 1.0
    assert profile.summary_hash == state.digest()
    assert [(_span.start, _span.end) for _span in profile.spans] == [(0, 5), (5, 9), (9, 16)]


def test_repeated_sentence_is_penalized(vaccination_instance):
    """This function tests that a sentence repeating earlier content is multiplied by the redundancy penalty."""
    profile = sufficiency.heuristic_scores(_state('Vaccines may be dangerous. Vaccines may be dangerous.'),
                                           vaccination_instance)
    assert profile.scores[0] == 1.0
    assert profile.scores[5] == pytest.approx(_DEFAULTS.REDUNDANCY_PENALTY)


def test_short_sentence_reusing_one_earlier_token_is_not_penalized(vaccination_instance):
    """This function tests that redundancy is measured against the earlier sentence's content."""
    surfaces = ('vaccines', 'may', 'be', 'dangerous', 'and', 'harm', 'children', 'badly', '.', 'vaccines', '.')
    scored = sufficiency.sentence_sufficiency(surfaces, vaccination_instance)
    alone = sufficiency.sentence_sufficiency(('vaccines', '.'), vaccination_instance)
    assert [_span for _span, _ in scored] == [(0, 9), (9, 11)]
    assert scored[1][1] == pytest.approx(alone[0][1])
    assert scored[1][1] > 0.0


def test_sentence_covering_an_earlier_sentence_is_penalized(vaccination_instance):
    """This function tests that a longer sentence containing all earlier content is still penalized."""
    surfaces = ('vaccines', 'harm', '.', 'vaccines', 'harm', 'children', 'badly', '.')
    scored = sufficiency.sentence_sufficiency(surfaces, vaccination_instance)
    alone = sufficiency.sentence_sufficiency(surfaces[3:], vaccination_instance)
    assert scored[1][1] == pytest.approx(alone[0][1] * _DEFAULTS.REDUNDANCY_PENALTY)


def test_sentence_without_content_scores_zero(vaccination_instance):
    """This function tests that a sentence of stopwords and punctuation scores 0."""
    scored = sufficiency.sentence_sufficiency(('it', 'is', '.'), vaccination_instance)
    assert scored == [((0, 3), 0.0)]


def test_partially_grounded_sentence_is_idf_weighted(vaccination_instance):
    """This function tests that the score is the IDF-weighted share of grounded content."""
    idf = sufficiency.IdfTable.from_instances([vaccination_instance])
    ((_, score),) = sufficiency.sentence_sufficiency(('vaccines', 'harm', 'zebras', '.'), vaccination_instance, idf)
    expected = idf.weight('vaccines') / (idf.weight('vaccines') + idf.weight('harm') + idf.weight('zebras'))
    assert score == pytest.approx(expected)


def test_heuristic_scores_require_unmasked_state(vaccination_instance):
    """This function tests that a state with masked positions cannot be scored."""
    with pytest.raises(errors.exceptions.PositionError):
        sufficiency.heuristic_scores(_state('Vaccines may be dangerous.').with_masked([1]), vaccination_instance)


def test_synthetic_references_are_fully_sufficient(synthetic_instances, oracle_model):
    """This function tests that every synthetic reference summary scores 1 everywhere."""
    for _instance in synthetic_instances:
        state = SummaryState.from_tokens(denoiser.reference_canvas(_instance, oracle_model.vocab, 32))
        assert sufficiency.heuristic_scores(state, _instance).min_score() == 1.0


# -----------------------------
# Perturbations
# -----------------------------


@pytest.mark.parametrize(
    ('text', 'expected'),
    [
        ('Vaccines may be dangerous', 'vaccines may not be dangerous'),
        ('Vaccines may not be dangerous', 'vaccines may be dangerous'),
        ('The First Amendment protects religious freedom', 'the first amendment violates religious freedom'),
        ('Children play outside', 'it is not the case that children play outside'),
    ],
)
def test_contradict_flips_polarity(text, expected):
    """This function tests each way a statement's polarity is flipped."""
    assert sufficiency.contradict(text) == expected


def test_perturbations_without_other_instances(vaccination_instance):
    """This function tests that hallucinated negatives are unavailable without other instances."""
    generated = sufficiency.generate_perturbations(vaccination_instance, core_utils.get_rng(0, 'perturb'))
    positives = generated.of_type(_DEFAULTS.PERTURB_NONE)
    assert len(positives) == 3
    assert all(_span.label == 1 for _span in positives)
    assert generated.unavailable == (_DEFAULTS.PERTURB_HALLUCINATED,)
    assert 0 < len(generated.of_type(_DEFAULTS.PERTURB_CONTRADICTORY)) <= _DEFAULTS.K_PER_TYPE
    assert 0 < len(generated.of_type(_DEFAULTS.PERTURB_UNSUPPORTED)) <= _DEFAULTS.K_PER_TYPE


def test_perturbations_draw_hallucinations_from_other_instances(synthetic_instances):
    """This function tests that hallucinated spans come from other summaries and are labelled insufficient."""
    instance = synthetic_instances[0]
    generated = sufficiency.generate_perturbations(instance, core_utils.get_rng(0, 'perturb'), others=synthetic_instances)
    assert generated.unavailable == ()
    own = set(corpus.sentence_texts(instance.reference_summary))
    hallucinated = generated.of_type(_DEFAULTS.PERTURB_HALLUCINATED)
    assert len(hallucinated) == _DEFAULTS.K_PER_TYPE
    assert all(_span.span not in own and _span.label == 0 for _span in hallucinated)


def test_perturbations_require_a_reference():
    """This function tests that an instance without a reference summary cannot be perturbed."""
    with pytest.raises(errors.exceptions.MissingReferenceError):
        sufficiency.generate_perturbations(resources.vaccination_instance(with_summary=False), core_utils.get_rng(0, 'p'))


def test_labeled_span_label_must_match_perturbation():
    """This function tests that only unperturbed spans may carry the sufficient label."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        sufficiency.LabeledSpan('span', 'claim', (), 1, _DEFAULTS.PERTURB_CONTRADICTORY)


# -----------------------------
# Classifier
# -----------------------------


def test_untrained_classifier_scores_one_half(synthetic_instances):
    """This function tests that zero epochs leave every span at probability 0.5."""
    data = sufficiency.perturbation_dataset(synthetic_instances[:4])
    model = sufficiency.train_classifier(data, epochs=0)
    assert model.loss_history == pytest.approx((math.log(2),))
    assert sufficiency.classify_span(model, 'anything at all', 'a claim', ['evidence']) == pytest.approx(0.5)


def test_classifier_rejects_single_class_data(synthetic_instances):
    """This function tests that training data with only one label raises an exception."""
    positives = sufficiency.perturbation_dataset(synthetic_instances[:2]).of_type(_DEFAULTS.PERTURB_NONE)
    with pytest.raises(errors.exceptions.SingleClassDataError):
        sufficiency.train_classifier(positives)


def test_classifier_generalizes_to_held_out_instances():
    """This function tests that the classifier separates perturbed spans on instances it was not trained on."""
    instances = corpus.synthetic_corpus(40, seed=1)
    model = sufficiency.train_classifier(sufficiency.perturbation_dataset(instances[:30], seed=1))
    assert model.loss_history[-1] < model.loss_history[0]
    assert sufficiency.evaluate_classifier(model, sufficiency.perturbation_dataset(instances[30:], seed=1)) >= 0.9


def test_classifier_file_preserves_predictions(tmp_path, synthetic_instances):
    """This function tests that a saved classifier loads back with identical predictions."""
    model = sufficiency.train_classifier(sufficiency.perturbation_dataset(synthetic_instances[:4]), epochs=5)
    path = str(tmp_path / 'classifier.json')
    sufficiency.save_classifier(model, path)
    loaded = sufficiency.load_classifier(path)
    claim = synthetic_instances[0].claims[0]
    expected = sufficiency.classify_span(model, 'some span .', claim.claim_text, claim.evidence)
    assert sufficiency.classify_span(loaded, 'some span .', claim.claim_text, claim.evidence) == pytest.approx(expected)


def test_span_features_flag_negation_mismatch():
    """This function tests the negation-mismatch feature of a contradicted span."""
    evidence = ['Vaccines may be dangerous']
    plain = sufficiency.span_features('Vaccines may be dangerous', 'claim', evidence)
    negated = sufficiency.span_features('Vaccines may not be dangerous', 'claim', evidence)
    assert plain[-1] == 0.0
    assert negated[-1] == 1.0
    assert plain[-3] == 1.0


def test_evaluate_classifier_on_no_data():
    """This function tests that accuracy over no spans is zero."""
    assert sufficiency.evaluate_classifier(sufficiency.ClassifierModel(), []) == 0.0


# -----------------------------
# Templates and the CoT judge
# -----------------------------


def test_list_templates():
    """This function tests the packaged prompt templates."""
    assert sufficiency.list_templates() == ['debate_speech', 'sufficiency_cot']


def test_render_template_rejects_unknown_template():
    """This function tests that an unknown template identifier raises an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        sufficiency.render_template('haiku')


def test_instance_prompt_fills_every_placeholder(vaccination_instance):
    """This function tests the debate speech prompt built from the vaccination instance."""
    prompt = sufficiency.instance_prompt(vaccination_instance)
    assert '"Routine child vaccinations should be mandatory"' in prompt
    assert 'oppose side' in prompt
    assert '1. Vaccines or their side effects may be dangerous' in prompt
    assert '- The First Amendment protects religious freedom' in prompt
    assert '{{' not in prompt


@pytest.mark.parametrize(
    ('response', 'category', 'score'),
    [
        ('VERDICT: supported', 'supported', 1.0),
        ('The span repeats the first sentence.\nVERDICT: redundant', 'redundant', 0.25),
        ('verdict: Insufficient', 'insufficient', 0.0),
        ('VERDICT: supported\nOn reflection the evidence is silent.\nVERDICT: insufficient', 'insufficient', 0.0),
    ],
)
def test_parse_verdict_reads_the_last_verdict_line(response, category, score):
    """This function tests verdict parsing and its score mapping."""
    verdict = sufficiency.parse_verdict(response)
    assert verdict.category == category
    assert verdict.score == score


def test_parse_verdict_keeps_the_rationale():
    """This function tests that the text above the verdict line is kept as the rationale."""
    verdict = sufficiency.parse_verdict('The evidence mentions Rotashield.\nVERDICT: supported')
    assert verdict.rationale == 'The evidence mentions Rotashield.'


@pytest.mark.parametrize('response', ['The span looks fine to me.', 'VERDICT: maybe', ''])
def test_parse_verdict_rejects_prose(response):
    """This function tests that a response without a recognized verdict raises an exception."""
    with pytest.raises(errors.exceptions.MalformedVerdictError):
        sufficiency.parse_verdict(response)


def test_cot_judge_requires_an_endpoint(vaccination_instance):
    """This function tests that an unconfigured client raises an exception."""
    with pytest.raises(errors.exceptions.FeatureNotConfiguredError):
        sufficiency.cot_judge(CotClient(), 'Vaccines may be dangerous.', vaccination_instance)


def test_cot_judge_posts_a_chat_completion(monkeypatch, vaccination_instance):
    """This function tests the request sent to the endpoint and the verdict read from its reply."""
    captured = {}

    def _post(url, json=None, headers=None, timeout=None):
        captured.update(url=url, payload=json, headers=headers)
        return resources.MockResponse(resources.chat_completion('Grounded in the first claim.\nVERDICT: supported'))

    monkeypatch.setattr(sufficiency.api.requests, 'post', _post)
    client = CotClient(endpoint=_ENDPOINT, token='secret')
    verdict = sufficiency.cot_judge(client, 'Vaccines may be dangerous.', vaccination_instance)
    assert verdict.score == 1.0
    assert captured['url'] == _ENDPOINT
    assert captured['payload']['model'] == _DEFAULTS.COT_MODEL
    prompt = captured['payload']['messages'][-1]['content']
    assert '"Vaccines may be dangerous."' in prompt
    assert 'Mandatory vaccination violates basic rights' in prompt
    assert captured['headers'][const.HEADERS.AUTHORIZATION] == 'Bearer secret'


def test_cot_judge_rejects_unexpected_response_shape(monkeypatch, vaccination_instance):
    """This function tests that a reply without choices raises the malformed verdict exception."""
    monkeypatch.setattr(sufficiency.api.requests, 'post', lambda *args, **kwargs: resources.MockResponse({'choices': []}))
    with pytest.raises(errors.exceptions.MalformedVerdictError):
        sufficiency.cot_judge(CotClient(endpoint=_ENDPOINT), 'span', vaccination_instance)


def test_cot_judge_retries_server_errors(monkeypatch, vaccination_instance):
    """This function tests that a failing endpoint is retried before the error is raised."""
    calls = []
    failing = resources.mock_error_post(503)

    def _post(*args, **kwargs):
        calls.append(1)
        return failing(*args, **kwargs)

    monkeypatch.setattr(sufficiency.api.requests, 'post', _post)
    client = CotClient(endpoint=_ENDPOINT, max_retries=2, backoff_seconds=0)
    with pytest.raises(errors.exceptions.POSTRequestError):
        sufficiency.cot_judge(client, 'span', vaccination_instance)
    assert len(calls) == 3


# -----------------------------
# Scorers
# -----------------------------


def test_cot_scorer_maps_verdicts_onto_sentences(monkeypatch, vaccination_instance):
    """This function tests that every body sentence takes its verdict score and the tail stays sufficient."""
    monkeypatch.setattr(sufficiency.api.requests, 'post', resources.mock_verdict_post('redundant'))
    scorer = sufficiency.CotScorer(CotClient(endpoint=_ENDPOINT), max_in_flight=2)
    profile = scorer(_state('Vaccines may be dangerous. Rights matter.'), vaccination_instance)
    assert profile.scores[:8] == (0.25,) * 8
    assert profile.scores[8:] == (1.0,) * 8


def test_uniform_scorer_scores_one_half(vaccination_instance):
    """This function tests the scorer used when no diagnosis is made."""
    profile = sufficiency.UniformScorer()(_state('Anything.'), vaccination_instance)
    assert set(profile.scores) == {_DEFAULTS.UNIFORM_SCORE}


def test_classifier_scorer_uses_the_best_claim(vaccination_instance, synthetic_instances):
    """This function tests that an untrained classifier scores each body sentence 0.5."""
    model = sufficiency.train_classifier(sufficiency.perturbation_dataset(synthetic_instances[:2]), epochs=0)
    profile = sufficiency.ClassifierScorer(model)(_state('Vaccines may be dangerous.'), vaccination_instance)
    assert profile.scores[:5] == pytest.approx((0.5,) * 5)
    assert profile.scores[5] == 1.0


def test_combine_scores_blends_profiles():
    """This function tests blending a 0.8 classifier profile with a 0.0 CoT profile at alpha 0.5."""
    classifier = SufficiencyProfile(scores=(0.8, 0.8), spans=(SpanScore(0, 2, 0.8),), summary_hash='h')
    cot = SufficiencyProfile(scores=(0.0, 0.0), spans=(SpanScore(0, 2, 0.0),), summary_hash='h')
    combined = sufficiency.combine_scores(classifier, cot, 0.5)
    assert combined.scores == pytest.approx((0.4, 0.4))
    assert sufficiency.combine_scores(classifier, cot, 1.0) is classifier
    assert sufficiency.combine_scores(classifier, cot, 0.0) is cot


def test_combine_scores_rejects_profiles_of_different_states():
    """This function tests that profiles with different summary hashes cannot be combined."""
    first = SufficiencyProfile(scores=(0.5,), spans=(), summary_hash='a')
    second = SufficiencyProfile(scores=(0.5,), spans=(), summary_hash='b')
    with pytest.raises(errors.exceptions.DataMismatchError):
        sufficiency.combine_scores(first, second)


@pytest.mark.parametrize(
    ('kind', 'scorer_type'),
    [('none', sufficiency.UniformScorer), ('heuristic', sufficiency.HeuristicScorer),
     ('classifier', sufficiency.ClassifierScorer), ('cot', sufficiency.CotScorer),
     ('combined', sufficiency.CombinedScorer)],
)
def test_build_scorer_returns_each_kind(kind, scorer_type):
    """This function tests the scorer built for each scorer kind."""
    assert isinstance(sufficiency.build_scorer(kind), scorer_type)


def test_build_scorer_rejects_unknown_kind():
    """This function tests that an unknown scorer kind raises an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        sufficiency.build_scorer('oracle')


@pytest.mark.parametrize('kind', ['classifier', 'cot', 'combined'])
def test_unconfigured_scorers_report_missing_features(kind):
    """This function tests that scorers without a model or endpoint raise when checked."""
    with pytest.raises(errors.exceptions.FeatureNotConfiguredError):
        sufficiency.build_scorer(kind).ensure_configured()
