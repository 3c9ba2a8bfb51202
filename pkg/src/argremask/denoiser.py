# -*- coding: utf-8 -*-
"""
:Module:            argremask.denoiser
:Synopsis:          The reverse-process denoisers, their masked-reconstruction training and persistence
:Usage:             ``from argremask import denoiser``
:Example:           ``model, report = denoiser.train_denoiser(pairs, denoiser.TrainingConfig(seed=7))``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from . import api, corpus, masking
from . import constants as const
from . import errors
from .corpus import ArgumentInstance, TokenSeq, Vocabulary
from .utils import core_utils, log_utils, version

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_RESERVED = const.RESERVED
_DEFAULTS = const.DENOISER_DEFAULTS
_RESERVED_BY_SURFACE = {_surface: _idx for _idx, _surface in enumerate(_RESERVED.ORDERED)}

# Backoff order of the categorical context features
LEVELS: tuple[str, ...] = ('left_right_bucket', 'left_right', 'left', 'right', 'bucket', 'unigram')


# -----------------------------
# Canvas State
# -----------------------------


@dataclass(frozen=True)
class SummaryState:
    """A fixed-length summary canvas with per-position mask flags and fill confidences."""

    tokens: TokenSeq
    masked: tuple[bool, ...]
    confidence: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, 'masked', tuple(bool(_flag) for _flag in self.masked))
        object.__setattr__(self, 'confidence', tuple(float(_conf) for _conf in self.confidence))
        if not len(self.tokens) == len(self.masked) == len(self.confidence):
            raise errors.exceptions.DataMismatchError(data=('tokens', 'mask flags'))
        for _pos, _flag in enumerate(self.masked):
            if _flag and self.tokens.ids[_pos] != _RESERVED.MASK_ID:
                raise errors.exceptions.PositionError(position=_pos, message='A masked position must carry the MASK id.')

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def ids(self) -> tuple[int, ...]:
        return self.tokens.ids

    @property
    def surface(self) -> tuple[str, ...]:
        return self.tokens.surface

    @classmethod
    def from_tokens(cls, seq: TokenSeq) -> SummaryState:
        """Returns a fully unmasked state whose positions count as never filled (confidence 1.0)."""
        return cls(tokens=seq, masked=(False,) * len(seq), confidence=(1.0,) * len(seq))

    @classmethod
    def fully_masked(cls, length: int) -> SummaryState:
        """Returns the all-MASK canvas that generation starts from."""
        if length < 1:
            raise errors.exceptions.InvalidParameterError(param='length', value=length)
        seq = TokenSeq(ids=(_RESERVED.MASK_ID,) * length, surface=(_RESERVED.MASK,) * length)
        return cls(tokens=seq, masked=(True,) * length, confidence=(0.0,) * length)

    def masked_positions(self) -> list[int]:
        return [_pos for _pos, _flag in enumerate(self.masked) if _flag]

    def is_fully_unmasked(self) -> bool:
        return not any(self.masked)

    def with_masked(self, positions: Iterable[int]) -> SummaryState:
        """Returns a copy with the listed positions set to MASK (confidence 0.0)."""
        ids, surface = list(self.ids), list(self.surface)
        masked, confidence = list(self.masked), list(self.confidence)
        for _pos in positions:
            if not 0 <= _pos < len(self):
                raise errors.exceptions.PositionError(position=_pos, message=f'The canvas length is {len(self)}.')
            ids[_pos], surface[_pos], masked[_pos], confidence[_pos] = _RESERVED.MASK_ID, _RESERVED.MASK, True, 0.0
        return SummaryState(TokenSeq(ids=tuple(ids), surface=tuple(surface)), tuple(masked), tuple(confidence))

    def with_fills(self, fills: Mapping[int, tuple[int, float]], vocab: Vocabulary) -> SummaryState:
        """Returns a copy with ``{position: (token id, confidence)}`` written into the canvas."""
        ids, surface = list(self.ids), list(self.surface)
        masked, confidence = list(self.masked), list(self.confidence)
        for _pos, (_token_id, _conf) in fills.items():
            ids[_pos], surface[_pos] = int(_token_id), vocab.token_of(int(_token_id))
            masked[_pos], confidence[_pos] = False, float(_conf)
        return SummaryState(TokenSeq(ids=tuple(ids), surface=tuple(surface)), tuple(masked), tuple(confidence))

    def body_length(self) -> int:
        """Returns the index of the first EOS or PAD (the canvas length when there is none)."""
        for _pos, _token_id in enumerate(self.ids):
            if _token_id in (_RESERVED.EOS_ID, _RESERVED.PAD_ID):
                return _pos
        return len(self)

    def read_out(self) -> SummaryState:
        """Returns a copy with every position after the first EOS (or PAD) forced to PAD."""
        end = self.body_length()
        if end >= len(self) - 1:
            return self
        ids, surface = list(self.ids), list(self.surface)
        masked, confidence = list(self.masked), list(self.confidence)
        for _pos in range(end + 1, len(self)):
            ids[_pos], surface[_pos], masked[_pos] = _RESERVED.PAD_ID, _RESERVED.PAD, False
        return SummaryState(TokenSeq(ids=tuple(ids), surface=tuple(surface)), tuple(masked), tuple(confidence))

    def text(self) -> str:
        """Returns the detokenized summary body (the tokens before the first EOS or PAD)."""
        body = [_surface for _surface, _flag in zip(self.surface[: self.body_length()], self.masked) if not _flag]
        return corpus.detokenize(body)

    def digest(self) -> str:
        """Returns the hash that binds sufficiency profiles to this exact canvas."""
        return core_utils.sha256_hex(core_utils.dump_json({'ids': list(self.ids), 'masked': list(self.masked)}))

    def to_dict(self) -> dict:
        return {
            'tokens': list(self.surface),
            'ids': list(self.ids),
            'masked': list(self.masked),
            'confidence': [round(_conf, 6) for _conf in self.confidence],
            'text': self.text(),
        }


def fit_to_canvas(seq: TokenSeq, length: int) -> TokenSeq:
    """This function truncates a sequence to ``length - 1`` tokens, appends EOS and pads the rest with PAD.

    :param seq: The token sequence
    :type seq: class[argremask.corpus.TokenSeq]
    :param length: The canvas length
    :type length: int
    :returns: A sequence of exactly ``length`` tokens
    """
    if length < 1:
        raise errors.exceptions.InvalidParameterError(param='length', value=length)
    body = min(len(seq), length - 1)
    ids = seq.ids[:body] + (_RESERVED.EOS_ID,) + (_RESERVED.PAD_ID,) * (length - body - 1)
    surface = seq.surface[:body] + (_RESERVED.EOS,) + (_RESERVED.PAD,) * (length - body - 1)
    return TokenSeq(ids=ids, surface=surface)


def reference_canvas(instance: ArgumentInstance, vocab: Vocabulary, length: int) -> TokenSeq:
    """Returns the reference summary of an instance encoded and fitted to the canvas.

    :raises: :py:exc:`argremask.errors.exceptions.MissingReferenceError`
    """
    if instance.reference_summary is None:
        raise errors.exceptions.MissingReferenceError(identifier=instance.id)
    return fit_to_canvas(corpus.tokenize(instance.reference_summary, vocab), length)


def build_training_pairs(instances: Sequence[ArgumentInstance], vocab: Optional[Vocabulary] = None):
    """Returns ``(instance, reference TokenSeq)`` pairs, failing on the first instance without a reference."""
    pairs = []
    for _instance in instances:
        if _instance.reference_summary is None:
            logger.error(f"The instance '{_instance.id}' has no reference summary")
            raise errors.exceptions.MissingReferenceError(identifier=_instance.id)
        pairs.append((_instance, corpus.tokenize(_instance.reference_summary, vocab)))
    return pairs


# -----------------------------
# Denoiser Models
# -----------------------------


class DenoiserModel:
    """Base class for the reverse-process models: predicts token distributions at masked canvas positions."""

    kind: str = ''

    def __init__(self, vocab: Vocabulary, canvas_length: int = _DEFAULTS.CANVAS_LENGTH):
        self.vocab = vocab
        self.canvas_length = int(canvas_length)
        support = np.ones(len(vocab), dtype=bool)
        support[[_RESERVED.MASK_ID, _RESERVED.PAD_ID]] = False
        self._support = support

    def predict_positions(self, state: SummaryState, instance: ArgumentInstance,
                          positions: Sequence[int]) -> dict[int, np.ndarray]:
        """Returns a probability vector over the vocabulary for each requested masked position."""
        raise NotImplementedError

    def parameters(self) -> dict:
        raise NotImplementedError

    def uniform(self) -> np.ndarray:
        """Returns the uniform distribution over the surface support (every id except MASK and PAD).

        PAD is only legal after the first EOS; see :py:meth:`padding_positions`.
        """
        return self._support / self._support.sum()

    def padding(self) -> np.ndarray:
        """Returns the distribution that places all of its mass on PAD."""
        vector = np.zeros(len(self.vocab))
        vector[_RESERVED.PAD_ID] = 1.0
        return vector

    @staticmethod
    def padding_positions(state: SummaryState, positions: Iterable[int]) -> set[int]:
        """Returns the requested positions that lie after a visible (unmasked) EOS on the canvas."""
        eos = next((_pos for _pos, (_id, _flag) in enumerate(zip(state.ids, state.masked))
                    if not _flag and _id == _RESERVED.EOS_ID), None)
        if eos is None:
            return set()
        return {_pos for _pos in positions if _pos > eos}

    def copy_ids(self, instance: ArgumentInstance) -> np.ndarray:
        """Returns the vocabulary ids of the content tokens found in the instance's claims and evidence."""
        ids = {self.vocab.id_of(_surface) for _surface in corpus.grounding_content(instance)}
        ids.discard(_RESERVED.UNK_ID)
        return np.array(sorted(ids), dtype=int)


class OracleDenoiser(DenoiserModel):
    """Memorizes each instance's reference canvas and predicts it with probability 1."""

    kind = _DEFAULTS.KIND_ORACLE

    def __init__(self, vocab: Vocabulary, canvas_length: int = _DEFAULTS.CANVAS_LENGTH,
                 references: Optional[Mapping[str, Sequence[int]]] = None):
        super().__init__(vocab, canvas_length)
        self.references = {str(_key): tuple(int(_id) for _id in _ids) for _key, _ids in (references or {}).items()}

    def _reference_for(self, state: SummaryState, instance: ArgumentInstance) -> tuple[int, ...]:
        reference = self.references.get(instance.id)
        if reference is None:
            reference = reference_canvas(instance, self.vocab, len(state)).ids
        if len(reference) != len(state):
            raise errors.exceptions.DataMismatchError(data=('oracle canvas', 'state canvas'))
        return reference

    def predict_positions(self, state, instance, positions):
        _check_positions(state, positions)
        reference = self._reference_for(state, instance)
        predictions = {}
        for _pos in positions:
            vector = np.zeros(len(self.vocab))
            vector[reference[_pos]] = 1.0
            predictions[_pos] = vector
        return predictions

    def parameters(self) -> dict:
        return {'references': {_key: list(_ids) for _key, _ids in self.references.items()}}


class CategoricalDenoiser(DenoiserModel):
    """Context-conditioned categorical model with add-alpha smoothing, backoff and a copy bias.

    Each masked position is described by its visible left and right neighbours (``-1`` at the canvas edge,
    unobserved when masked) and its position bucket. Predictions back off from the most specific observed
    feature combination to the unigram table and finally to the smoothing-only uniform distribution.
    """

    kind = _DEFAULTS.KIND_CATEGORICAL

    def __init__(
        self,
        vocab: Vocabulary,
        canvas_length: int = _DEFAULTS.CANVAS_LENGTH,
        alpha: float = _DEFAULTS.SMOOTHING_ALPHA,
        copy_bias: float = _DEFAULTS.COPY_BIAS,
        position_buckets: int = _DEFAULTS.POSITION_BUCKETS,
        counts: Optional[Mapping[str, Mapping[tuple, Mapping[int, float]]]] = None,
        refined: Optional[Mapping[str, Mapping[tuple, Sequence[float]]]] = None,
    ):
        super().__init__(vocab, canvas_length)
        if alpha < 0 or copy_bias <= 0 or position_buckets < 1:
            raise errors.exceptions.InvalidParameterError('The smoothing, copy bias and bucket values are out of range.')
        self.alpha = float(alpha)
        self.copy_bias = float(copy_bias)
        self.position_buckets = int(position_buckets)
        self.counts: dict[str, dict[tuple, dict[int, float]]] = {_level: {} for _level in LEVELS}
        for _level, _rows in (counts or {}).items():
            for _key, _row in _rows.items():
                self.counts[_level][tuple(_key)] = {int(_id): float(_count) for _id, _count in _row.items()}
        self.refined: dict[str, dict[tuple, np.ndarray]] = {_level: {} for _level in LEVELS}
        for _level, _rows in (refined or {}).items():
            for _key, _row in _rows.items():
                self.refined[_level][tuple(_key)] = np.asarray(_row, dtype=float)

    def features(self, state: SummaryState, position: int) -> tuple[Optional[int], Optional[int], int]:
        """Returns ``(left, right, bucket)`` for a position; masked neighbours are ``None``."""
        length = len(state)
        left = _RESERVED.EDGE_ID if position == 0 else (None if state.masked[position - 1] else state.ids[position - 1])
        right = (_RESERVED.EDGE_ID if position == length - 1
                 else (None if state.masked[position + 1] else state.ids[position + 1]))
        bucket = position * self.position_buckets // length
        return left, right, bucket

    @staticmethod
    def level_keys(left: Optional[int], right: Optional[int], bucket: int) -> list[tuple[str, tuple]]:
        """Returns the applicable ``(level, key)`` pairs in backoff order."""
        keys = []
        if left is not None and right is not None:
            keys.append(('left_right_bucket', (left, right, bucket)))
            keys.append(('left_right', (left, right)))
        if left is not None:
            keys.append(('left', (left,)))
        if right is not None:
            keys.append(('right', (right,)))
        keys.append(('bucket', (bucket,)))
        keys.append(('unigram', ()))
        return keys

    def observe(self, state: SummaryState, position: int, target: int, weight: float = 1.0) -> None:
        """Counts a target token under every applicable context of a masked position."""
        for _level, _key in self.level_keys(*self.features(state, position)):
            row = self.counts[_level].setdefault(_key, {})
            row[target] = row.get(target, 0.0) + weight

    def _row_distribution(self, level: str, key: tuple, row: Mapping[int, float]) -> np.ndarray:
        if key in self.refined[level]:
            return self.refined[level][key].copy()
        vector = np.where(self._support, self.alpha, 0.0)
        for _token_id, _count in row.items():
            if self._support[_token_id]:
                vector[_token_id] += _count
        return vector / vector.sum()

    def distribution(self, state: SummaryState, position: int, copy_ids: np.ndarray) -> np.ndarray:
        """Returns the smoothed, copy-biased distribution at one position."""
        for _level, _key in self.level_keys(*self.features(state, position)):
            row = self.counts[_level].get(_key)
            if row and sum(row.values()) > 0:
                vector = self._row_distribution(_level, _key, row)
                if len(copy_ids) and self.copy_bias != 1.0:
                    vector[copy_ids] *= self.copy_bias
                    vector /= vector.sum()
                return vector
        return self.uniform()

    def predict_positions(self, state, instance, positions):
        _check_positions(state, positions)
        copy_ids = self.copy_ids(instance)
        padded = self.padding_positions(state, positions)
        return {_pos: self.padding() if _pos in padded else self.distribution(state, _pos, copy_ids) for _pos in positions}

    def refine_rows(self, epochs: int, step: float = _DEFAULTS.GRADIENT_STEP) -> None:
        """Runs full-batch gradient descent on the per-row masked-reconstruction loss.

        Every observed row starts from its smoothed distribution; the logits move against the gradient
        ``p - c / N`` of the mean negative log-likelihood of the row's counted targets.
        """
        for _level in LEVELS:
            for _key, _row in self.counts[_level].items():
                total = sum(_row.values())
                if total <= 0:
                    continue
                target = np.zeros(len(self.vocab))
                for _token_id, _count in _row.items():
                    target[_token_id] += _count
                target /= total
                probabilities = self._row_distribution(_level, _key, _row)
                with np.errstate(divide='ignore'):
                    logits = np.where(self._support, np.log(probabilities), -np.inf)
                for _ in range(epochs):
                    probabilities = _softmax(logits)
                    logits = np.where(self._support, logits - step * (probabilities - target), -np.inf)
                self.refined[_level][_key] = _softmax(logits)

    def parameters(self) -> dict:
        return {
            'alpha': self.alpha,
            'copy_bias': self.copy_bias,
            'position_buckets': self.position_buckets,
            'counts': {
                _level: {_encode_key(_key): {str(_id): _count for _id, _count in sorted(_row.items())}
                         for _key, _row in self.counts[_level].items()}
                for _level in LEVELS
            },
            'refined': {
                _level: {_encode_key(_key): [round(float(_p), 12) for _p in _row] for _key, _row in self.refined[_level].items()}
                for _level in LEVELS if self.refined[_level]
            },
        }


class RemoteDenoiser(DenoiserModel):
    """Client for a served denoiser; a whole canvas is sent in one request and every masked position is answered."""

    kind = _DEFAULTS.KIND_REMOTE

    def __init__(self, vocab: Vocabulary, canvas_length: int = _DEFAULTS.CANVAS_LENGTH, endpoint: Optional[str] = None,
                 top_k: int = _DEFAULTS.TOP_K, token: Optional[str] = None, timeout: Optional[int] = None,
                 max_retries: Optional[int] = None):
        super().__init__(vocab, canvas_length)
        if not endpoint:
            raise errors.exceptions.FeatureNotConfiguredError(feature='remote denoiser endpoint')
        self.endpoint = endpoint
        self.top_k = int(top_k)
        self.token = token
        self.timeout = timeout
        self.max_retries = max_retries

    def request_payload(self, state: SummaryState, instance: ArgumentInstance) -> dict:
        return {
            'tokens': [None if _flag else _surface for _surface, _flag in zip(state.surface, state.masked)],
            'context': {
                'topic': instance.topic,
                'claims': [{'claim': _claim.claim_text, 'evidence': list(_claim.evidence)} for _claim in instance.claims],
            },
            'top_k': self.top_k,
        }

    def predict_positions(self, state, instance, positions):
        _check_positions(state, positions)
        padded = self.padding_positions(state, positions)
        response = api.post_json(self.endpoint, self.request_payload(state, instance), token=self.token,
                                 timeout=self.timeout, max_retries=self.max_retries)
        answered = {}
        for _entry in (response or {}).get('positions', []):
            answered[int(_entry['index'])] = _entry.get('candidates', [])
        predictions = {}
        for _pos in positions:
            if _pos not in answered:
                logger.error(f'The remote denoiser response is missing position {_pos}')
                raise errors.exceptions.PositionError(position=_pos, message='It is missing from the remote response.')
            vector = np.zeros(len(self.vocab))
            for _candidate in answered[_pos]:
                token_id = _RESERVED_BY_SURFACE.get(_candidate['token'], self.vocab.id_of(_candidate['token']))
                if token_id != _RESERVED.MASK_ID and (token_id != _RESERVED.PAD_ID or _pos in padded):
                    vector[token_id] += max(float(_candidate['p']), 0.0)
            if vector.sum() <= 0:
                raise errors.exceptions.DataMismatchError(f'The remote response for position {_pos} carries no probability mass.')
            predictions[_pos] = vector / vector.sum()
        return predictions

    def parameters(self) -> dict:
        return {'endpoint': self.endpoint, 'top_k': self.top_k}


def _check_positions(_state: SummaryState, _positions: Iterable[int]) -> None:
    """This function verifies that every requested position lies on the canvas and is masked."""
    for _pos in _positions:
        if not 0 <= _pos < len(_state):
            raise errors.exceptions.PositionError(position=_pos, message=f'The canvas length is {len(_state)}.')
        if not _state.masked[_pos]:
            raise errors.exceptions.PositionError(position=_pos, message='The position is not masked.')


def _softmax(_logits: np.ndarray) -> np.ndarray:
    finite = _logits[np.isfinite(_logits)]
    shifted = np.exp(_logits - finite.max())
    return shifted / shifted.sum()


def _encode_key(_key: tuple) -> str:
    return '|'.join(str(_part) for _part in _key)


def _decode_key(_key: str) -> tuple:
    return tuple(int(_part) for _part in _key.split('|')) if _key else ()


# -----------------------------
# Operations
# -----------------------------


def predict_distribution(model: DenoiserModel, state: SummaryState, input: ArgumentInstance, position: int) -> np.ndarray:
    """This function returns the model's probability vector over the vocabulary at one masked position.

    MASK never receives mass. PAD receives mass only at positions after a visible EOS: the categorical model
    predicts PAD with probability 1 there, and remote PAD candidates at any other position are dropped.

    :raises: :py:exc:`argremask.errors.exceptions.PositionError`
    """
    return model.predict_positions(state, input, [position])[position]


def fill_masks(
    model: DenoiserModel,
    state: SummaryState,
    input: ArgumentInstance,
    rng: Optional[np.random.Generator] = None,
    policy: str = _DEFAULTS.POLICY_ARGMAX,
) -> SummaryState:
    """This function fills every masked position in parallel from the model's predictions.

    ``argmax`` picks the most probable id (lowest id on ties) and ignores the random stream; ``sample``
    draws from the distribution with ``rng``. The confidence of a filled position is the probability of the
    chosen token.

    :param model: The denoiser
    :type model: class[argremask.denoiser.DenoiserModel]
    :param state: The canvas with at least one masked position
    :type state: class[argremask.denoiser.SummaryState]
    :param input: The conditioning instance
    :type input: class[argremask.corpus.ArgumentInstance]
    :param rng: The random stream (required for ``sample``)
    :type rng: class[numpy.random.Generator], None
    :param policy: ``argmax`` (default) or ``sample``
    :type policy: str
    :returns: The filled state
    :raises: :py:exc:`argremask.errors.exceptions.NothingToFillError`,
             :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if policy not in _DEFAULTS.FILL_POLICIES:
        raise errors.exceptions.InvalidParameterError(param='policy', value=policy)
    positions = state.masked_positions()
    if not positions:
        raise errors.exceptions.NothingToFillError()
    if policy == _DEFAULTS.POLICY_SAMPLE and rng is None:
        raise errors.exceptions.MissingRequiredDataError(param='rng')
    predictions = model.predict_positions(state, input, positions)
    fills = {}
    for _pos in positions:
        vector = predictions[_pos]
        if policy == _DEFAULTS.POLICY_ARGMAX:
            choice = int(np.argmax(vector))
        else:
            choice = int(rng.choice(len(vector), p=vector / vector.sum()))
        fills[_pos] = (choice, float(vector[choice]))
    return state.with_fills(fills, model.vocab)


def _nll_terms(model: DenoiserModel, reference: TokenSeq, mask: Iterable[int], input: ArgumentInstance) -> tuple[float, int]:
    """This function returns the summed negative log-likelihood and the number of scored positions.

    Positions after the reference's first EOS are deterministic padding and are not scored.
    """
    mask = sorted(set(mask))
    if not mask:
        raise errors.exceptions.InvalidParameterError(param='mask', message='the mask must not be empty')
    for _pos in mask:
        if not 0 <= _pos < len(reference):
            raise errors.exceptions.PositionError(position=_pos, message=f'The reference length is {len(reference)}.')
    eos = reference.ids.index(_RESERVED.EOS_ID) if _RESERVED.EOS_ID in reference.ids else len(reference)
    scored = [_pos for _pos in mask if _pos <= eos]
    if not scored:
        return 0.0, 0
    state = SummaryState.from_tokens(reference).with_masked(mask)
    predictions = model.predict_positions(state, input, scored)
    total = 0.0
    for _pos in scored:
        probability = float(predictions[_pos][reference.ids[_pos]])
        total += math.inf if probability <= 0.0 else -math.log(probability)
    return total, len(scored)


def masked_nll(model: DenoiserModel, reference: TokenSeq, mask: Iterable[int], input: ArgumentInstance) -> float:
    """This function returns the masked-reconstruction loss in nats.

    It is the negative log-likelihood of the reference tokens at the masked positions given the visible rest of
    the reference and the conditioning instance. Masked positions after the reference's first EOS hold
    deterministic padding and add nothing to the loss, so a mask that only covers the padding tail scores ``0.0``.

    :param model: The denoiser
    :param reference: The reference sequence
    :param mask: The masked positions (non-empty)
    :param input: The conditioning instance
    :returns: The loss in nats (``>= 0``)
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`,
             :py:exc:`argremask.errors.exceptions.PositionError`
    """
    return _nll_terms(model, reference, mask, input)[0]


# -----------------------------
# Training
# -----------------------------


@dataclass
class TrainingConfig:
    """Settings for :py:func:`train_denoiser`."""

    mask_ratio: float = _DEFAULTS.MASK_RATIO
    epochs: int = _DEFAULTS.EPOCHS
    seed: int = const.DEFAULT_SEED
    model_kind: str = _DEFAULTS.KIND_CATEGORICAL
    canvas_length: int = _DEFAULTS.CANVAS_LENGTH
    smoothing_alpha: float = _DEFAULTS.SMOOTHING_ALPHA
    copy_bias: float = _DEFAULTS.COPY_BIAS
    position_buckets: int = _DEFAULTS.POSITION_BUCKETS
    gradient_refine: bool = False
    gradient_step: float = _DEFAULTS.GRADIENT_STEP
    remote_endpoint: Optional[str] = None
    remote_top_k: int = _DEFAULTS.TOP_K

    def validate(self) -> None:
        """Checks the preconditions of training.

        :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
        """
        if not 0.0 < self.mask_ratio <= 1.0:
            raise errors.exceptions.InvalidParameterError(param='mask_ratio', value=self.mask_ratio)
        if self.epochs < 0:
            raise errors.exceptions.InvalidParameterError(param='epochs', value=self.epochs)
        if self.model_kind not in _DEFAULTS.KINDS:
            raise errors.exceptions.InvalidParameterError(param='model_kind', value=self.model_kind)
        if self.canvas_length < 1:
            raise errors.exceptions.InvalidParameterError(param='canvas_length', value=self.canvas_length)

    def echo(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TrainingReport:
    """Outcome of a training run; ``loss_curve`` holds ``(epoch, mean masked NLL per token)`` pairs."""

    epochs: int
    loss_curve: tuple[tuple[int, float], ...]
    final_loss: Optional[float]
    config_echo: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'epochs': self.epochs,
            'loss_curve': [[_step, _loss] for _step, _loss in self.loss_curve],
            'final_loss': self.final_loss,
            'config': self.config_echo,
        }


def train_denoiser(
    corpus_pairs: Sequence[tuple[ArgumentInstance, Optional[TokenSeq]]],
    config: Optional[TrainingConfig] = None,
    vocab: Optional[Vocabulary] = None,
) -> tuple[DenoiserModel, TrainingReport]:
    """This function trains a denoiser with the masked-reconstruction objective.

    Every epoch corrupts each reference canvas at ``mask_ratio`` (``train`` stream) and, for the categorical
    kind, counts the reference token at each masked position under all of its visible contexts. After every
    epoch the mean per-token masked NLL is measured on a fixed set of corruptions drawn once from the
    ``corrupt`` stream. The oracle kind memorizes the reference canvases.

    :param corpus_pairs: ``(instance, reference TokenSeq)`` pairs
    :type corpus_pairs: list
    :param config: The training configuration (defaults apply when omitted)
    :type config: class[argremask.denoiser.TrainingConfig], None
    :param vocab: The vocabulary (built from the instances when omitted)
    :type vocab: class[argremask.corpus.Vocabulary], None
    :returns: The trained model and its training report
    :raises: :py:exc:`argremask.errors.exceptions.EmptyDatasetError`,
             :py:exc:`argremask.errors.exceptions.MissingReferenceError`,
             :py:exc:`argremask.errors.exceptions.DuplicateInstanceError`,
             :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    config = config or TrainingConfig()
    config.validate()
    if not corpus_pairs:
        logger.error('The training corpus is empty')
        raise errors.exceptions.EmptyDatasetError()
    for _instance, _reference in corpus_pairs:
        if _reference is None:
            logger.error(f"The instance '{_instance.id}' has no reference summary")
            raise errors.exceptions.MissingReferenceError(identifier=_instance.id)
    if vocab is None:
        vocab = corpus.build_vocabulary(corpus.corpus_texts(_instance for _instance, _ in corpus_pairs))
    length = config.canvas_length

    if config.model_kind == _DEFAULTS.KIND_REMOTE:
        model = RemoteDenoiser(vocab, length, endpoint=config.remote_endpoint, top_k=config.remote_top_k)
        return model, TrainingReport(epochs=0, loss_curve=(), final_loss=None, config_echo=config.echo())

    canvases = []
    seen = set()
    for _instance, _reference in corpus_pairs:
        if _instance.id in seen:
            raise errors.exceptions.DuplicateInstanceError(identifier=_instance.id)
        seen.add(_instance.id)
        encoded = TokenSeq(ids=tuple(vocab.encode(_reference.surface)), surface=_reference.surface)
        canvases.append((_instance, fit_to_canvas(encoded, length)))

    eval_rng = core_utils.get_rng(config.seed, const.RNG_STREAMS.CORRUPT)
    eval_masks = [masking.corrupt(_canvas, config.mask_ratio, eval_rng)[1].positions for _, _canvas in canvases]

    def _mean_loss(_model: DenoiserModel) -> float:
        total, count = 0.0, 0
        for (_instance, _canvas), _mask in zip(canvases, eval_masks):
            _sum, _count = _nll_terms(_model, _canvas, _mask, _instance)
            total += _sum
            count += _count
        return total / count if count else 0.0

    if config.model_kind == _DEFAULTS.KIND_ORACLE:
        model = OracleDenoiser(vocab, length, {_instance.id: _canvas.ids for _instance, _canvas in canvases})
        curve = tuple((_epoch, _mean_loss(model)) for _epoch in range(1, config.epochs + 1))
        final = curve[-1][1] if curve else _mean_loss(model)
        logger.info(f'Memorized {len(canvases)} reference canvases in the oracle denoiser')
        return model, TrainingReport(epochs=config.epochs, loss_curve=curve, final_loss=final, config_echo=config.echo())

    model = CategoricalDenoiser(vocab, length, alpha=config.smoothing_alpha, copy_bias=config.copy_bias,
                                position_buckets=config.position_buckets)
    train_rng = core_utils.get_rng(config.seed, const.RNG_STREAMS.TRAIN)
    curve = []
    for _epoch in range(1, config.epochs + 1):
        for _instance, _canvas in canvases:
            state, plan = masking.corrupt(_canvas, config.mask_ratio, train_rng)
            eos = _canvas.ids.index(_RESERVED.EOS_ID)
            for _pos in plan.positions:
                if _pos <= eos:
                    model.observe(state, _pos, _canvas.ids[_pos])
        curve.append((_epoch, _mean_loss(model)))
        logger.debug(f'Epoch {_epoch}: masked NLL {curve[-1][1]:.6f} nats per token')
    if config.gradient_refine and config.epochs > 0:
        model.refine_rows(config.epochs, config.gradient_step)
    final = _mean_loss(model)
    logger.info(f'Trained a categorical denoiser over {len(canvases)} references (final loss {final:.4f} nats)')
    return model, TrainingReport(epochs=config.epochs, loss_curve=tuple(curve), final_loss=final, config_echo=config.echo())


# -----------------------------
# Persistence
# -----------------------------


def model_archive(model: DenoiserModel, config_echo: Optional[dict] = None) -> dict:
    """Returns the self-describing archive of a model (kind tag, embedded vocabulary and its hash, parameters)."""
    return {
        'format': _DEFAULTS.ARCHIVE_TAG,
        'format_version': const.ARCHIVE_FORMAT_VERSION,
        'written_by': version.get_full_version(),
        'kind': model.kind,
        'canvas_length': model.canvas_length,
        'vocabulary': model.vocab.to_dict(),
        'vocabulary_hash': model.vocab.digest(),
        'parameters': model.parameters(),
        'config': config_echo or {},
    }


def save_model(model: DenoiserModel, path: str, config_echo: Optional[dict] = None) -> None:
    """This function writes a model archive as deterministic JSON (byte-identical for identical models)."""
    core_utils.write_text(path, core_utils.dump_json(model_archive(model, config_echo)) + '\n')
    logger.info(f'Saved the {model.kind} denoiser to {path}')


def load_model(path: str, vocab: Optional[Vocabulary] = None, token: Optional[str] = None) -> DenoiserModel:
    """This function loads a model archive and verifies its vocabulary hash.

    :param path: The archive path
    :type path: str
    :param vocab: A vocabulary that must match the archived one (optional)
    :type vocab: class[argremask.corpus.Vocabulary], None
    :param token: Bearer token for remote denoisers (optional)
    :type token: str, None
    :returns: The model
    :raises: :py:exc:`argremask.errors.exceptions.DatasetParseError`,
             :py:exc:`argremask.errors.exceptions.DataMismatchError`
    """
    try:
        archive = json.loads(core_utils.read_text(path))
    except json.JSONDecodeError as exc:
        raise errors.exceptions.DatasetParseError(file=path, line=exc.lineno, message=exc.msg) from exc
    if not isinstance(archive, dict) or archive.get('format') != _DEFAULTS.ARCHIVE_TAG:
        raise errors.exceptions.DatasetParseError(file=path, message='The file is not a denoiser archive.')
    version.check_archive_version(archive, path)
    archived_vocab = Vocabulary.from_dict(archive['vocabulary'])
    if archived_vocab.digest() != archive.get('vocabulary_hash'):
        logger.error(f'The vocabulary embedded in {path} does not match its recorded hash')
        raise errors.exceptions.DataMismatchError(data=('embedded vocabulary', 'vocabulary hash'))
    if vocab is not None and vocab.digest() != archive.get('vocabulary_hash'):
        logger.error(f'The supplied vocabulary does not match the vocabulary of {path}')
        raise errors.exceptions.DataMismatchError(data=('supplied vocabulary', 'model vocabulary'))
    kind, length, params = archive.get('kind'), int(archive['canvas_length']), archive.get('parameters', {})
    if kind == _DEFAULTS.KIND_ORACLE:
        return OracleDenoiser(archived_vocab, length, params.get('references', {}))
    if kind == _DEFAULTS.KIND_CATEGORICAL:
        return CategoricalDenoiser(
            archived_vocab,
            length,
            alpha=params['alpha'],
            copy_bias=params['copy_bias'],
            position_buckets=params['position_buckets'],
            counts={_level: {_decode_key(_key): _row for _key, _row in _rows.items()}
                    for _level, _rows in params.get('counts', {}).items()},
            refined={_level: {_decode_key(_key): _row for _key, _row in _rows.items()}
                     for _level, _rows in params.get('refined', {}).items()},
        )
    if kind == _DEFAULTS.KIND_REMOTE:
        return RemoteDenoiser(archived_vocab, length, endpoint=params.get('endpoint'), top_k=params.get('top_k', _DEFAULTS.TOP_K),
                              token=token)
    raise errors.exceptions.DatasetParseError(file=path, message=f"Unknown denoiser kind '{kind}'.")
