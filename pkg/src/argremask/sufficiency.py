# -*- coding: utf-8 -*-
"""
:Module:            argremask.sufficiency
:Synopsis:          Sufficiency diagnosis of summary spans: heuristic, perturbation-trained classifier, CoT judge and fusion
:Usage:             ``from argremask import sufficiency``
:Example:           ``profile = sufficiency.heuristic_scores(state, instance)``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import json
import math
import re
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from . import api, corpus, errors
from . import constants as const
from .corpus import ArgumentInstance
from .denoiser import SummaryState
from .utils import core_utils, log_utils, version

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_DEFAULTS = const.SUFFICIENCY_DEFAULTS
_DENSE_FEATURES = ('span_claim_overlap', 'span_evidence_overlap', 'ungrounded_fraction', 'negation_mismatch')
_VERDICT_PATTERN = re.compile(r'^\W*verdict\s*:\s*\W*(supported|insufficient|redundant)\b', re.IGNORECASE)
_PROMPT_PACKAGE = 'argremask.assets.prompts'


# -----------------------------
# Profiles
# -----------------------------


@dataclass(frozen=True)
class SpanScore:
    """A half-open canvas span ``[start, end)`` with its sufficiency score and the scorer that produced it."""

    start: int
    end: int
    score: float
    source: str = _DEFAULTS.SOURCE_HEURISTIC

    def to_dict(self) -> dict:
        return {'start': self.start, 'end': self.end, 'score': round(self.score, 12), 'source': self.source}


@dataclass(frozen=True)
class SufficiencyProfile:
    """Per-position sufficiency scores of one summary state, with the spans they were broadcast from."""

    scores: tuple[float, ...]
    spans: tuple[SpanScore, ...]
    summary_hash: str

    def __len__(self) -> int:
        return len(self.scores)

    def min_score(self) -> float:
        return min(self.scores) if self.scores else 1.0

    def mean_score(self) -> float:
        return float(np.mean(self.scores)) if self.scores else 1.0

    def to_dict(self) -> dict:
        return {
            'scores': [round(_score, 12) for _score in self.scores],
            'spans': [_span.to_dict() for _span in self.spans],
            'summary_hash': self.summary_hash,
        }


def broadcast_span_scores(spans: Iterable[Union[SpanScore, Sequence]], length: int) -> list[float]:
    """This function turns span-level scores into token-level scores.

    Each token takes the score of its covering span; tokens covered by several spans take the minimum.

    :param spans: ``(start, end, score)`` tuples or :py:class:`SpanScore` objects
    :type spans: list
    :param length: The canvas length
    :type length: int
    :returns: The per-token scores
    :raises: :py:exc:`argremask.errors.exceptions.CoverageGapError`,
             :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    scores: list[Optional[float]] = [None] * length
    for _span in spans:
        start, end, score = (_span.start, _span.end, _span.score) if isinstance(_span, SpanScore) else tuple(_span[:3])
        if not 0 <= start < end <= length:
            raise errors.exceptions.InvalidParameterError(param='span', value=(start, end))
        if not 0.0 <= score <= 1.0:
            raise errors.exceptions.InvalidParameterError(param='span score', value=score)
        for _pos in range(start, end):
            scores[_pos] = score if scores[_pos] is None else min(scores[_pos], score)
    gaps = [_pos for _pos, _score in enumerate(scores) if _score is None]
    if gaps:
        logger.error(f'The spans leave {len(gaps)} canvas positions uncovered')
        raise errors.exceptions.CoverageGapError(positions=gaps)
    return [float(_score) for _score in scores]


def _require_unmasked(_state: SummaryState) -> None:
    masked = _state.masked_positions()
    if masked:
        raise errors.exceptions.PositionError(position=masked[0], message='Sufficiency is scored on unmasked states only.')


def _sentence_spans(_state: SummaryState) -> tuple[list[tuple[int, int]], int]:
    """Returns the body sentence spans and the body end (the first EOS or PAD)."""
    end = _state.body_length()
    return corpus.split_sentences(_state.surface[:end]), end


def _build_profile(_state: SummaryState, _scored: Sequence[tuple[tuple[int, int], float]], _source: str) -> SufficiencyProfile:
    """This function assembles a profile from scored body sentences; the EOS/PAD tail is always sufficient."""
    spans = [SpanScore(_start, _end, float(min(max(_score, 0.0), 1.0)), _source) for (_start, _end), _score in _scored]
    end = _state.body_length()
    if end < len(_state):
        spans.append(SpanScore(end, len(_state), 1.0, _source))
    scores = broadcast_span_scores(spans, len(_state))
    return SufficiencyProfile(scores=tuple(scores), spans=tuple(spans), summary_hash=_state.digest())


# -----------------------------
# Heuristic Scorer
# -----------------------------


@dataclass(frozen=True)
class IdfTable:
    """Smoothed inverse document frequencies, ``ln((1 + N) / (1 + df)) + 1``, over claim and evidence texts.

    Tokens never seen in the pool receive the largest possible weight.
    """

    idf: Mapping[str, float]
    documents: int

    @classmethod
    def from_instances(cls, instances: Iterable[ArgumentInstance]) -> IdfTable:
        frequencies: dict[str, int] = {}
        documents = 0
        for _instance in instances:
            for _text in _instance.grounding_texts():
                documents += 1
                for _token in set(corpus.content_tokens(corpus.tokenize(_text).surface)):
                    frequencies[_token] = frequencies.get(_token, 0) + 1
        idf = {_token: math.log((1 + documents) / (1 + _df)) + 1.0 for _token, _df in frequencies.items()}
        return cls(idf=idf, documents=documents)

    @property
    def max_idf(self) -> float:
        return math.log(1 + self.documents) + 1.0

    def weight(self, token: str) -> float:
        return self.idf.get(token, self.max_idf)


def _unique(_tokens: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(_tokens))


def sentence_sufficiency(surfaces: Sequence[str], input: ArgumentInstance,
                         idf: Optional[IdfTable] = None) -> list[tuple[tuple[int, int], float]]:
    """This function scores each sentence of a surface sequence against the claims and evidence of an instance.

    A sentence scores the IDF-weighted share of its distinct content tokens that occur in the claims or evidence;
    a sentence without content tokens scores 0. A sentence whose content repeats at least 80% of an earlier
    sentence's content is multiplied by 0.25.

    :param surfaces: The token surfaces of the summary body
    :type surfaces: list, tuple
    :param input: The conditioning instance
    :type input: class[argremask.corpus.ArgumentInstance]
    :param idf: The IDF table (computed from the instance alone when omitted)
    :type idf: class[argremask.sufficiency.IdfTable], None
    :returns: ``((start, end), score)`` pairs
    """
    idf = idf or IdfTable.from_instances([input])
    pool = corpus.grounding_content(input)
    earlier: list[set[str]] = []
    scored = []
    for _start, _end in corpus.split_sentences(surfaces):
        content = _unique(corpus.content_tokens(surfaces[_start:_end]))
        if not content:
            scored.append(((_start, _end), 0.0))
            continue
        total = sum(idf.weight(_token) for _token in content)
        score = sum(idf.weight(_token) for _token in content if _token in pool) / total
        current = set(content)
        if any(len(current & _previous) / len(_previous) >= _DEFAULTS.REDUNDANCY_OVERLAP for _previous in earlier if _previous):
            score *= _DEFAULTS.REDUNDANCY_PENALTY
        earlier.append(current)
        scored.append(((_start, _end), score))
    return scored


def heuristic_scores(state: SummaryState, input: ArgumentInstance, idf: Optional[IdfTable] = None) -> SufficiencyProfile:
    """This function computes the heuristic sufficiency profile of a fully unmasked state.

    Stopwords and punctuation inherit their sentence's score; the EOS/PAD tail scores 1.0.

    :raises: :py:exc:`argremask.errors.exceptions.PositionError`
    """
    _require_unmasked(state)
    end = state.body_length()
    return _build_profile(state, sentence_sufficiency(state.surface[:end], input, idf), _DEFAULTS.SOURCE_HEURISTIC)


# -----------------------------
# Perturbations
# -----------------------------


@dataclass(frozen=True)
class LabeledSpan:
    """A summary span paired with a claim and evidence, labelled 1 when sufficient."""

    span: str
    claim: str
    evidence: tuple[str, ...]
    label: int
    perturbation: str = _DEFAULTS.PERTURB_NONE

    def __post_init__(self):
        object.__setattr__(self, 'evidence', tuple(self.evidence))
        if (self.label == 1) != (self.perturbation == _DEFAULTS.PERTURB_NONE):
            raise errors.exceptions.InvalidParameterError(param='label', value=self.label,
                                                          message='only unperturbed spans are sufficient')

    def to_dict(self) -> dict:
        return {'span': self.span, 'claim': self.claim, 'evidence': list(self.evidence), 'label': self.label,
                'perturbation': self.perturbation}


@dataclass(frozen=True)
class PerturbationSet:
    """Labelled spans produced for one or more instances, with the perturbation types that could not be built."""

    spans: tuple[LabeledSpan, ...] = ()
    unavailable: tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.spans)

    def __len__(self) -> int:
        return len(self.spans)

    def __getitem__(self, index):
        return self.spans[index]

    def of_type(self, perturbation: str) -> list[LabeledSpan]:
        return [_span for _span in self.spans if _span.perturbation == perturbation]


def contradict(text: str) -> str:
    """This function flips the polarity of a statement.

    An existing ``not`` after an auxiliary is removed; otherwise ``not`` is inserted after the first auxiliary,
    then a lexicon antonym is swapped in, and as a last resort the statement is prefixed with a negation.
    """
    tokens = list(corpus.tokenize(text).surface)
    for _idx in range(len(tokens) - 1):
        if tokens[_idx] in const.NEGATABLE_AUXILIARIES and tokens[_idx + 1] == 'not':
            return corpus.detokenize(tokens[: _idx + 1] + tokens[_idx + 2:])
    for _idx, _token in enumerate(tokens):
        if _token in const.NEGATABLE_AUXILIARIES:
            return corpus.detokenize(tokens[: _idx + 1] + ['not'] + tokens[_idx + 1:])
    for _idx, _token in enumerate(tokens):
        if _token in const.ANTONYMS:
            return corpus.detokenize(tokens[:_idx] + [const.ANTONYMS[_token]] + tokens[_idx + 1:])
    return corpus.detokenize(['it', 'is', 'not', 'the', 'case', 'that'] + tokens)


def _text_content(_text: str) -> set[str]:
    return set(corpus.content_tokens(corpus.tokenize(_text).surface))


def best_claim_index(span: str, instance: ArgumentInstance) -> int:
    """Returns the index of the claim whose text and evidence share the most content with a span."""
    content = _text_content(span)
    overlaps = [len(content & _text_content(' '.join((_claim.claim_text,) + _claim.evidence))) for _claim in instance.claims]
    return int(np.argmax(overlaps))


def generate_perturbations(
    instance: ArgumentInstance,
    rng: np.random.Generator,
    k_per_type: int = _DEFAULTS.K_PER_TYPE,
    others: Sequence[ArgumentInstance] = (),
) -> PerturbationSet:
    """This function builds labelled classifier spans from an instance's reference summary.

    Every reference sentence is a positive paired with its best-matching claim and that claim's evidence. Up to
    ``k_per_type`` negatives are built per type:

    * ``contradictory``: the sentence with its polarity flipped (see :py:func:`contradict`)
    * ``hallucinated``: a sentence from another instance's summary paired with one of this instance's claims
    * ``unsupported``: the sentence paired with its claim but with the evidence that grounds it withheld

    Types that cannot be built (no other instances, no evidence to withhold) are listed in ``unavailable``.

    :param instance: The instance with a reference summary
    :type instance: class[argremask.corpus.ArgumentInstance]
    :param rng: The random stream
    :type rng: class[numpy.random.Generator]
    :param k_per_type: Negatives per perturbation type
    :type k_per_type: int
    :param others: Instances that hallucinated sentences are drawn from
    :type others: list
    :returns: The labelled spans and the unavailable types
    :raises: :py:exc:`argremask.errors.exceptions.MissingReferenceError`
    """
    if instance.reference_summary is None:
        raise errors.exceptions.MissingReferenceError(identifier=instance.id)
    sentences = corpus.sentence_texts(instance.reference_summary)
    spans, unavailable = [], []
    claims = [instance.claims[best_claim_index(_sentence, instance)] for _sentence in sentences]
    for _sentence, _claim in zip(sentences, claims):
        spans.append(LabeledSpan(_sentence, _claim.claim_text, _claim.evidence, 1))

    order = [int(_idx) for _idx in rng.permutation(len(sentences))]
    contradictory = []
    for _idx in order:
        flipped = contradict(sentences[_idx])
        if flipped != sentences[_idx]:
            contradictory.append(LabeledSpan(flipped, claims[_idx].claim_text, claims[_idx].evidence, 0,
                                             _DEFAULTS.PERTURB_CONTRADICTORY))
    spans.extend(contradictory[:k_per_type])
    if not contradictory:
        unavailable.append(_DEFAULTS.PERTURB_CONTRADICTORY)

    own = set(sentences)
    foreign = [_sentence for _other in others if _other.id != instance.id and _other.reference_summary
               for _sentence in corpus.sentence_texts(_other.reference_summary) if _sentence not in own]
    if foreign:
        picks = rng.choice(len(foreign), size=min(k_per_type, len(foreign)), replace=False)
        for _pick in picks:
            claim = instance.claims[int(rng.integers(0, len(instance.claims)))]
            spans.append(LabeledSpan(foreign[int(_pick)], claim.claim_text, claim.evidence, 0,
                                     _DEFAULTS.PERTURB_HALLUCINATED))
    else:
        unavailable.append(_DEFAULTS.PERTURB_HALLUCINATED)

    unsupported = []
    for _idx in order:
        claim = claims[_idx]
        if not claim.evidence:
            continue
        content = _text_content(sentences[_idx])
        kept = tuple(_text for _text in claim.evidence if not content & _text_content(_text))
        if len(kept) == len(claim.evidence):
            kept = ()
        unsupported.append(LabeledSpan(sentences[_idx], claim.claim_text, kept, 0, _DEFAULTS.PERTURB_UNSUPPORTED))
    spans.extend(unsupported[:k_per_type])
    if not unsupported:
        unavailable.append(_DEFAULTS.PERTURB_UNSUPPORTED)
    if unavailable:
        logger.debug(f"Perturbation types unavailable for '{instance.id}': {', '.join(unavailable)}")
    return PerturbationSet(spans=tuple(spans), unavailable=tuple(unavailable))


def perturbation_dataset(instances: Sequence[ArgumentInstance], seed: int = const.DEFAULT_SEED,
                         k_per_type: int = _DEFAULTS.K_PER_TYPE) -> PerturbationSet:
    """Returns the pooled perturbation spans of a corpus, each instance drawing from its own ``perturb`` stream."""
    spans, unavailable = [], set()
    for _instance in instances:
        rng = core_utils.get_rng(seed, const.RNG_STREAMS.PERTURB, _instance.id)
        generated = generate_perturbations(_instance, rng, k_per_type, others=instances)
        spans.extend(generated.spans)
        unavailable.update(generated.unavailable)
    return PerturbationSet(spans=tuple(spans), unavailable=tuple(sorted(unavailable)))


# -----------------------------
# Classifier
# -----------------------------


@dataclass
class ClassifierModel:
    """Logistic model over segment-tagged hashed n-grams plus four grounding-overlap features."""

    feature_hash_seed: int = _DEFAULTS.FEATURE_HASH_SEED
    dim: int = _DEFAULTS.CLASSIFIER_DIM
    weights: np.ndarray = field(default=None)
    bias: float = 0.0
    loss_history: tuple[float, ...] = ()

    def __post_init__(self):
        size = self.dim + len(_DENSE_FEATURES)
        self.weights = np.zeros(size) if self.weights is None else np.asarray(self.weights, dtype=float)
        if self.weights.shape != (size,):
            raise errors.exceptions.DataMismatchError(data=('classifier weights', 'feature dimension'))

    def probabilities(self, features: np.ndarray) -> np.ndarray:
        return _sigmoid(features @ self.weights + self.bias)


def _sigmoid(_logits):
    return 1.0 / (1.0 + np.exp(-_logits))


def _hash_index(_feature: str, _seed: int, _dim: int) -> int:
    return zlib.crc32(f'{_seed}:{_feature}'.encode('utf-8')) % _dim


def _segment_features(_prefix: str, _surfaces: Sequence[str]) -> set[str]:
    features = {f'{_prefix}:{_token}' for _token in _surfaces}
    features.update(f'{_prefix}:{_left}_{_right}' for _left, _right in zip(_surfaces, _surfaces[1:]))
    return features


def span_features(span: str, claim: str, evidence: Sequence[str], seed: int = _DEFAULTS.FEATURE_HASH_SEED,
                  dim: int = _DEFAULTS.CLASSIFIER_DIM) -> np.ndarray:
    """This function encodes a ``(span, claim, evidence)`` triple as a feature vector.

    The first ``dim`` entries hold the hashed unigrams and bigrams of each segment, tagged ``s:``, ``c:`` and
    ``e:`` and scaled to unit length. The last four entries are the share of span content found in the claim,
    the share found in the evidence, the share found in neither, and whether the span's negation differs from
    that of its best-overlapping grounding text.
    """
    span_surfaces = corpus.tokenize(span).surface
    hashed = set()
    hashed.update(_segment_features('s', span_surfaces))
    hashed.update(_segment_features('c', corpus.tokenize(claim).surface))
    for _text in evidence:
        hashed.update(_segment_features('e', corpus.tokenize(_text).surface))
    vector = np.zeros(dim + len(_DENSE_FEATURES))
    indices = sorted({_hash_index(_feature, seed, dim) for _feature in hashed})
    if indices:
        vector[indices] = 1.0 / math.sqrt(len(indices))

    content = set(corpus.content_tokens(span_surfaces))
    claim_content = _text_content(claim)
    evidence_content = set().union(*(_text_content(_text) for _text in evidence)) if evidence else set()
    if content:
        vector[dim] = len(content & claim_content) / len(content)
        vector[dim + 1] = len(content & evidence_content) / len(content)
        vector[dim + 2] = len(content - claim_content - evidence_content) / len(content)
    grounding = [claim] + list(evidence)
    overlaps = [len(content & _text_content(_text)) for _text in grounding]
    best = grounding[int(np.argmax(overlaps))]
    span_negated = any(_token in const.NEGATION_TOKENS for _token in span_surfaces)
    best_negated = any(_token in const.NEGATION_TOKENS for _token in corpus.tokenize(best).surface)
    vector[dim + 3] = float(span_negated != best_negated)
    return vector


def _bce(_probabilities: np.ndarray, _labels: np.ndarray) -> float:
    clipped = np.clip(_probabilities, 1e-12, 1.0 - 1e-12)
    return float(-np.mean(_labels * np.log(clipped) + (1.0 - _labels) * np.log(1.0 - clipped)))


def train_classifier(
    data: Sequence[LabeledSpan],
    epochs: int = _DEFAULTS.CLASSIFIER_EPOCHS,
    lr: float = _DEFAULTS.CLASSIFIER_LR,
    seed: int = _DEFAULTS.FEATURE_HASH_SEED,
    dim: int = _DEFAULTS.CLASSIFIER_DIM,
) -> ClassifierModel:
    """This function fits the sufficiency classifier by full-batch gradient descent on binary cross-entropy.

    Weights start at zero, so zero epochs yield the model that scores every span 0.5. ``loss_history`` holds the
    initial loss followed by the loss after each epoch.

    :param data: The labelled spans (both labels required)
    :type data: list, class[argremask.sufficiency.PerturbationSet]
    :param epochs: Gradient steps over the full batch
    :type epochs: int
    :param lr: The learning rate
    :type lr: float
    :param seed: The feature hashing seed
    :type seed: int
    :param dim: The hashed feature dimension
    :type dim: int
    :returns: The trained model
    :raises: :py:exc:`argremask.errors.exceptions.SingleClassDataError`,
             :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    data = list(data)
    labels = np.array([float(_span.label) for _span in data])
    present = set(labels.tolist())
    if present != {0.0, 1.0}:
        logger.error('The classifier training data does not contain both labels')
        if present:
            raise errors.exceptions.SingleClassDataError(value=int(present.pop()))
        raise errors.exceptions.SingleClassDataError()
    if epochs < 0 or lr <= 0 or dim < 1:
        raise errors.exceptions.InvalidParameterError('The classifier epochs, learning rate and dimension are out of range.')
    features = np.stack([span_features(_span.span, _span.claim, _span.evidence, seed, dim) for _span in data])
    model = ClassifierModel(feature_hash_seed=seed, dim=dim)
    history = [_bce(model.probabilities(features), labels)]
    for _ in range(epochs):
        residual = model.probabilities(features) - labels
        model.weights = model.weights - lr * (features.T @ residual) / len(data)
        model.bias = model.bias - lr * float(residual.mean())
        history.append(_bce(model.probabilities(features), labels))
    model.loss_history = tuple(history)
    logger.info(f'Trained the sufficiency classifier on {len(data)} spans (loss {history[0]:.4f} -> {history[-1]:.4f})')
    return model


def classify_span(model: ClassifierModel, span: str, claim: str, evidence: Sequence[str]) -> float:
    """This function returns the probability that a span is sufficient given a claim and its evidence."""
    features = span_features(span, claim, evidence, model.feature_hash_seed, model.dim)
    return float(model.probabilities(features))


def evaluate_classifier(model: ClassifierModel, data: Sequence[LabeledSpan]) -> float:
    """Returns the accuracy of the classifier on labelled spans (a probability of 0.5 or more predicts 1)."""
    data = list(data)
    if not data:
        return 0.0
    correct = sum(int(classify_span(model, _span.span, _span.claim, _span.evidence) >= 0.5) == _span.label for _span in data)
    return correct / len(data)


def save_classifier(model: ClassifierModel, path: str) -> None:
    archive = {
        'format': _DEFAULTS.ARCHIVE_TAG,
        'format_version': const.ARCHIVE_FORMAT_VERSION,
        'written_by': version.get_full_version(),
        'feature_hash_seed': model.feature_hash_seed,
        'dim': model.dim,
        'dense_features': list(_DENSE_FEATURES),
        'weights': [float(_weight) for _weight in model.weights],
        'bias': float(model.bias),
        'loss_history': list(model.loss_history),
    }
    core_utils.write_text(path, core_utils.dump_json(archive) + '\n')
    logger.info(f'Saved the sufficiency classifier to {path}')


def load_classifier(path: str) -> ClassifierModel:
    """This function loads a classifier archive written by :py:func:`save_classifier`.

    :raises: :py:exc:`argremask.errors.exceptions.DatasetParseError`
    """
    try:
        archive = json.loads(core_utils.read_text(path))
    except json.JSONDecodeError as exc:
        raise errors.exceptions.DatasetParseError(file=path, line=exc.lineno, message=exc.msg) from exc
    if not isinstance(archive, dict) or archive.get('format') != _DEFAULTS.ARCHIVE_TAG:
        raise errors.exceptions.DatasetParseError(file=path, message='The file is not a classifier archive.')
    version.check_archive_version(archive, path)
    return ClassifierModel(
        feature_hash_seed=int(archive['feature_hash_seed']),
        dim=int(archive['dim']),
        weights=np.asarray(archive['weights'], dtype=float),
        bias=float(archive['bias']),
        loss_history=tuple(archive.get('loss_history', ())),
    )


# -----------------------------
# Chain-of-Thought Judge
# -----------------------------


@dataclass(frozen=True)
class SufficiencyVerdict:
    """The judge's category for a span, its free-text rationale and the mapped score."""

    category: str
    rationale: str
    score: float

    @classmethod
    def from_category(cls, category: str, rationale: str = '') -> SufficiencyVerdict:
        category = category.lower()
        return cls(category=category, rationale=rationale, score=const.VERDICT_SCORES[category])


@dataclass(frozen=True)
class CotClient:
    """Descriptor of a chat-completion endpoint used by the CoT judge."""

    endpoint: Optional[str] = None
    model: str = _DEFAULTS.COT_MODEL
    token: Optional[str] = None
    timeout: Optional[int] = None
    max_retries: Optional[int] = None
    backoff_seconds: Optional[float] = None

    @property
    def configured(self) -> bool:
        return bool(self.endpoint)


def list_templates() -> list[str]:
    """Returns the identifiers of the prompt templates shipped with the package."""
    return sorted(_entry.name[: -len('.txt')] for _entry in resources.files(_PROMPT_PACKAGE).iterdir()
                  if _entry.name.endswith('.txt'))


def render_template(template_id: str, **fields: str) -> str:
    """This function fills the ``{{name}}`` placeholders of a packaged prompt template.

    :param template_id: The template identifier (e.g. ``sufficiency_cot``)
    :type template_id: str
    :returns: The rendered prompt
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if template_id not in list_templates():
        raise errors.exceptions.InvalidParameterError(param='template', value=template_id)
    text = resources.files(_PROMPT_PACKAGE).joinpath(f'{template_id}.txt').read_text(encoding='utf-8')
    for _name, _value in fields.items():
        text = text.replace('{{' + _name + '}}', _value)
    return text


def _context_fields(_instance: ArgumentInstance) -> dict[str, str]:
    claims = '\n'.join(f'{_idx}. {_claim.claim_text}' for _idx, _claim in enumerate(_instance.claims, start=1))
    evidence = '\n'.join(f'- {_text}' for _claim in _instance.claims for _text in _claim.evidence) or '- (none)'
    return {'claims': claims, 'evidence': evidence, 'topic': _instance.topic, 'stance': _instance.stance}


def instance_prompt(instance: ArgumentInstance, template_id: str = _DEFAULTS.DEBATE_TEMPLATE) -> str:
    """Returns a template filled with the topic, stance, claims and evidence of an instance (debate speech by default)."""
    return render_template(template_id, **_context_fields(instance))


def parse_verdict(response: str) -> SufficiencyVerdict:
    """This function reads the last ``VERDICT:`` line of a judge response; the text above it is the rationale.

    :raises: :py:exc:`argremask.errors.exceptions.MalformedVerdictError`
    """
    lines = (response or '').splitlines()
    for _idx in range(len(lines) - 1, -1, -1):
        match = _VERDICT_PATTERN.match(lines[_idx].strip())
        if match:
            return SufficiencyVerdict.from_category(match.group(1), '\n'.join(lines[:_idx]).strip())
    raise errors.exceptions.MalformedVerdictError(raw=response)


def cot_judge(client: CotClient, span: str, context: ArgumentInstance,
              template: str = _DEFAULTS.COT_TEMPLATE) -> SufficiencyVerdict:
    """This function asks a chat-completion endpoint whether a span is supported, insufficient or redundant.

    :param client: The endpoint descriptor
    :type client: class[argremask.sufficiency.CotClient]
    :param span: The summary span to judge
    :type span: str
    :param context: The instance whose claims and evidence ground the span
    :type context: class[argremask.corpus.ArgumentInstance]
    :param template: The prompt template identifier
    :type template: str
    :returns: The parsed verdict
    :raises: :py:exc:`argremask.errors.exceptions.FeatureNotConfiguredError`,
             :py:exc:`argremask.errors.exceptions.MalformedVerdictError`,
             :py:exc:`argremask.errors.exceptions.APIConnectionError`,
             :py:exc:`argremask.errors.exceptions.POSTRequestError`
    """
    if not client.configured:
        raise errors.exceptions.FeatureNotConfiguredError(feature='chain-of-thought endpoint')
    prompt = render_template(template, span=span, **_context_fields(context))
    payload = {
        'model': client.model,
        'messages': [
            {'role': 'system', 'content': _DEFAULTS.COT_SYSTEM_PROMPT},
            {'role': 'user', 'content': prompt},
        ],
    }
    response = api.post_json(client.endpoint, payload, token=client.token, timeout=client.timeout,
                             max_retries=client.max_retries, backoff_seconds=client.backoff_seconds)
    try:
        content = response['choices'][0]['message']['content']
    except (KeyError, IndexError, TypeError) as exc:
        raise errors.exceptions.MalformedVerdictError(raw=json.dumps(response)) from exc
    verdict = parse_verdict(content)
    logger.debug(f'CoT verdict {verdict.category!r} for span {span!r}')
    return verdict


# -----------------------------
# Scorers
# -----------------------------


class Scorer:
    """Base class of the sufficiency scorers; calling a scorer returns the profile of a fully unmasked state."""

    source: str = ''

    def ensure_configured(self) -> None:
        """Raises :py:exc:`argremask.errors.exceptions.FeatureNotConfiguredError` when a dependency is missing."""

    def __call__(self, state: SummaryState, instance: ArgumentInstance) -> SufficiencyProfile:
        raise NotImplementedError


class HeuristicScorer(Scorer):
    source = _DEFAULTS.SOURCE_HEURISTIC

    def __init__(self, idf: Optional[IdfTable] = None):
        self.idf = idf

    def __call__(self, state, instance):
        return heuristic_scores(state, instance, self.idf)


class UniformScorer(Scorer):
    """Scores every position 0.5, leaving remask selection to the exploration noise alone."""

    source = _DEFAULTS.SOURCE_NONE

    def __call__(self, state, instance):
        score = _DEFAULTS.UNIFORM_SCORE
        span = SpanScore(0, len(state), score, self.source)
        return SufficiencyProfile(scores=(score,) * len(state), spans=(span,), summary_hash=state.digest())


class ClassifierScorer(Scorer):
    """Scores each sentence with the best classifier probability over the instance's claims."""

    source = _DEFAULTS.SOURCE_CLASSIFIER

    def __init__(self, model: Optional[ClassifierModel] = None):
        self.model = model

    def ensure_configured(self) -> None:
        if self.model is None:
            raise errors.exceptions.FeatureNotConfiguredError(feature='sufficiency classifier')

    def __call__(self, state, instance):
        self.ensure_configured()
        _require_unmasked(state)
        spans, _ = _sentence_spans(state)
        scored = []
        for _start, _end in spans:
            text = corpus.detokenize(state.surface[_start:_end])
            score = max(classify_span(self.model, text, _claim.claim_text, _claim.evidence) for _claim in instance.claims)
            scored.append(((_start, _end), score))
        return _build_profile(state, scored, self.source)


class CotScorer(Scorer):
    """Judges each sentence through the CoT endpoint with a bounded number of requests in flight."""

    source = _DEFAULTS.SOURCE_COT

    def __init__(self, client: Optional[CotClient] = None, template: str = _DEFAULTS.COT_TEMPLATE,
                 max_in_flight: int = _DEFAULTS.MAX_IN_FLIGHT):
        self.client = client or CotClient()
        self.template = template
        self.max_in_flight = max(1, int(max_in_flight))

    def ensure_configured(self) -> None:
        if not self.client.configured:
            raise errors.exceptions.FeatureNotConfiguredError(feature='chain-of-thought endpoint')

    def __call__(self, state, instance):
        self.ensure_configured()
        _require_unmasked(state)
        spans, _ = _sentence_spans(state)
        texts = [corpus.detokenize(state.surface[_start:_end]) for _start, _end in spans]
        with ThreadPoolExecutor(max_workers=self.max_in_flight) as pool:
            verdicts = list(pool.map(lambda _text: cot_judge(self.client, _text, instance, self.template), texts))
        return _build_profile(state, [(_span, _verdict.score) for _span, _verdict in zip(spans, verdicts)], self.source)


class CombinedScorer(Scorer):
    source = _DEFAULTS.SOURCE_COMBINED

    def __init__(self, classifier: ClassifierScorer, cot: CotScorer, alpha: float = _DEFAULTS.COMBINE_ALPHA):
        self.classifier = classifier
        self.cot = cot
        self.alpha = alpha

    def ensure_configured(self) -> None:
        self.classifier.ensure_configured()
        self.cot.ensure_configured()

    def __call__(self, state, instance):
        return combine_scores(self.classifier(state, instance), self.cot(state, instance), self.alpha)


def combine_scores(classifier_profile: SufficiencyProfile, cot_profile: SufficiencyProfile,
                   alpha: float = _DEFAULTS.COMBINE_ALPHA) -> SufficiencyProfile:
    """This function blends classifier and CoT profiles as ``alpha * s_cls + (1 - alpha) * s_cot``.

    The blended spans are the segments between the boundaries of both profiles; with ``alpha`` equal to 1 or 0
    the corresponding profile is returned unchanged.

    :raises: :py:exc:`argremask.errors.exceptions.DataMismatchError`,
             :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if classifier_profile.summary_hash != cot_profile.summary_hash or len(classifier_profile) != len(cot_profile):
        logger.error('The classifier and CoT profiles belong to different summaries')
        raise errors.exceptions.DataMismatchError(data=('classifier profile', 'CoT profile'))
    if not 0.0 <= alpha <= 1.0:
        raise errors.exceptions.InvalidParameterError(param='alpha', value=alpha)
    if alpha == 1.0:
        return classifier_profile
    if alpha == 0.0:
        return cot_profile
    blended = [alpha * _cls + (1.0 - alpha) * _cot for _cls, _cot in zip(classifier_profile.scores, cot_profile.scores)]
    bounds = sorted({0, len(blended)} | {_edge for _profile in (classifier_profile, cot_profile)
                                         for _span in _profile.spans for _edge in (_span.start, _span.end)})
    spans = tuple(SpanScore(_start, _end, min(blended[_start:_end]), _DEFAULTS.SOURCE_COMBINED)
                  for _start, _end in zip(bounds, bounds[1:]))
    return SufficiencyProfile(scores=tuple(broadcast_span_scores(spans, len(blended))), spans=spans,
                              summary_hash=classifier_profile.summary_hash)


def build_scorer(
    kind: str,
    idf: Optional[IdfTable] = None,
    classifier: Optional[ClassifierModel] = None,
    cot_client: Optional[CotClient] = None,
    alpha: float = _DEFAULTS.COMBINE_ALPHA,
    max_in_flight: int = _DEFAULTS.MAX_IN_FLIGHT,
    template: str = _DEFAULTS.COT_TEMPLATE,
) -> Scorer:
    """This function returns the scorer for a scorer kind (``none``, ``heuristic``, ``classifier``, ``cot`` or ``combined``).

    Missing classifiers and endpoints are reported by :py:meth:`Scorer.ensure_configured`, not here.

    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if kind == _DEFAULTS.SOURCE_NONE:
        return UniformScorer()
    if kind == _DEFAULTS.SOURCE_HEURISTIC:
        return HeuristicScorer(idf)
    if kind == _DEFAULTS.SOURCE_CLASSIFIER:
        return ClassifierScorer(classifier)
    if kind == _DEFAULTS.SOURCE_COT:
        return CotScorer(cot_client, template, max_in_flight)
    if kind == _DEFAULTS.SOURCE_COMBINED:
        return CombinedScorer(ClassifierScorer(classifier), CotScorer(cot_client, template, max_in_flight), alpha)
    raise errors.exceptions.InvalidParameterError(param='scorer', value=kind)
