# -*- coding: utf-8 -*-
"""
:Module:            argremask.corpus
:Synopsis:          Data ingestion, tokenization and vocabulary management for claim-evidence instances
:Usage:             ``from argremask import corpus``
:Example:           ``instances = corpus.load_dataset('data.jsonl', 'claims_json')``
:Created By:        Jeff Shurtliff
:Last Modified:     Jeff Shurtliff
:Modified Date:     18 Oct 2026
"""

from __future__ import annotations

import csv
import io
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import constants as const
from . import errors
from .utils import core_utils, log_utils

# Initialize logging
logger = log_utils.initialize_logging(__name__)

_TOKEN_PATTERN = re.compile(r"\w+(?:[-']\w+)*|[^\w\s]")
_NO_SPACE_BEFORE = frozenset({'.', ',', '!', '?', ';', ':', ')', ']', '%'})
_NO_SPACE_AFTER = frozenset({'(', '['})
_RESERVED_SURFACES = frozenset(const.RESERVED.ORDERED)


# -----------------------------
# Domain Types
# -----------------------------


@dataclass(frozen=True)
class TokenSeq:
    """Aligned vocabulary ids and normalized surface strings."""

    ids: tuple[int, ...] = ()
    surface: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'ids', tuple(int(_id) for _id in self.ids))
        object.__setattr__(self, 'surface', tuple(self.surface))
        if len(self.ids) != len(self.surface):
            raise errors.exceptions.DataMismatchError(data=('ids', 'surface'))

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class ClaimUnit:
    """A claim together with the evidence texts that support it."""

    claim_text: str
    evidence: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.claim_text, str) or not self.claim_text.strip():
            raise errors.exceptions.InvalidParameterError(param='claim_text', message='claim text must be non-empty')
        object.__setattr__(self, 'evidence', tuple(self.evidence))


@dataclass(frozen=True)
class ArgumentInstance:
    """One summarization input: a topic and stance with its claims, evidence and optional reference summary."""

    id: str
    topic: str
    stance: str
    claims: tuple[ClaimUnit, ...]
    reference_summary: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'id', str(self.id))
        object.__setattr__(self, 'claims', tuple(self.claims))
        object.__setattr__(self, 'stance', normalize_stance(self.stance))
        if not self.claims:
            raise errors.exceptions.InvalidParameterError(param='claims', message='at least one claim is required')

    def grounding_texts(self) -> list[str]:
        """Returns every claim and evidence text in input order."""
        texts = []
        for _claim in self.claims:
            texts.append(_claim.claim_text)
            texts.extend(_claim.evidence)
        return texts

    def texts(self) -> list[str]:
        """Returns all texts carried by the instance (topic, claims, evidence and reference summary)."""
        texts = [self.topic] + self.grounding_texts()
        if self.reference_summary:
            texts.append(self.reference_summary)
        return texts

    def to_record(self) -> dict:
        """Returns the ``claims_json`` record for the instance."""
        record = {
            const.DATASET_FORMATS.ID: self.id,
            const.DATASET_FORMATS.TOPIC: self.topic,
            const.DATASET_FORMATS.STANCE: self.stance,
            const.DATASET_FORMATS.CLAIMS: [
                {const.DATASET_FORMATS.CLAIM: _claim.claim_text, const.DATASET_FORMATS.EVIDENCE: list(_claim.evidence)}
                for _claim in self.claims
            ],
        }
        if self.reference_summary is not None:
            record[const.DATASET_FORMATS.SUMMARY] = self.reference_summary
        return record


@dataclass(frozen=True)
class Vocabulary:
    """Ordered surface tokens with corpus counts; the reserved tokens occupy indices 0-3."""

    tokens: tuple[str, ...]
    counts: tuple[int, ...]
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'tokens', tuple(self.tokens))
        object.__setattr__(self, 'counts', tuple(int(_count) for _count in self.counts))
        if len(self.tokens) != len(self.counts):
            raise errors.exceptions.DataMismatchError(data=('tokens', 'counts'))
        if self.tokens[: len(const.RESERVED.ORDERED)] != const.RESERVED.ORDERED:
            raise errors.exceptions.InvalidParameterError(param='tokens', message='reserved tokens must lead the vocabulary')
        index = {_token: _idx for _idx, _token in enumerate(self.tokens)}
        if len(index) != len(self.tokens):
            raise errors.exceptions.InvalidParameterError(param='tokens', message='vocabulary tokens must be unique')
        self._index.update(index)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, surface: str) -> bool:
        return surface in self._index and surface not in _RESERVED_SURFACES

    def id_of(self, surface: str) -> int:
        """Returns the id of a surface token (``UNK`` when out of vocabulary or reserved)."""
        if surface in _RESERVED_SURFACES:
            return const.RESERVED.UNK_ID
        return self._index.get(surface, const.RESERVED.UNK_ID)

    def token_of(self, token_id: int) -> str:
        """Returns the surface string of an id."""
        return self.tokens[token_id]

    def encode(self, surfaces: Iterable[str]) -> list[int]:
        return [self.id_of(_surface) for _surface in surfaces]

    def decode(self, ids: Iterable[int]) -> list[str]:
        return [self.tokens[_id] for _id in ids]

    def serialize(self) -> str:
        """Returns the newline-delimited ``token<TAB>count`` form, reserved header included."""
        return ''.join(f'{_token}\t{_count}\n' for _token, _count in zip(self.tokens, self.counts))

    def digest(self) -> str:
        """Returns the SHA-256 hash of the serialized vocabulary."""
        return core_utils.sha256_hex(self.serialize())

    def to_dict(self) -> dict:
        return {'tokens': list(self.tokens), 'counts': list(self.counts)}

    @classmethod
    def from_dict(cls, data: dict) -> Vocabulary:
        return cls(tokens=tuple(data['tokens']), counts=tuple(data['counts']))


# -----------------------------
# Tokenization
# -----------------------------


def tokenize(text: Optional[str], vocab: Optional[Vocabulary] = None) -> TokenSeq:
    """This function lowercases text and splits it into word and punctuation tokens.

    Hyphenated words and contractions stay whole (``guillain-barré``, ``don't``); every other punctuation
    character becomes its own token. Without a vocabulary every id is ``UNK``.

    :param text: The text to tokenize (``None`` or empty text yields an empty sequence)
    :type text: str, None
    :param vocab: The vocabulary used to map surfaces to ids (optional)
    :type vocab: class[argremask.corpus.Vocabulary], None
    :returns: The tokenized sequence
    """
    if not text:
        return TokenSeq()
    surfaces = tuple(_TOKEN_PATTERN.findall(text.lower()))
    if vocab is None:
        return TokenSeq(ids=(const.RESERVED.UNK_ID,) * len(surfaces), surface=surfaces)
    return TokenSeq(ids=tuple(vocab.encode(surfaces)), surface=surfaces)


def detokenize(surfaces: Iterable[str]) -> str:
    """This function joins surface tokens into readable text, attaching punctuation to its neighbours."""
    text = ''
    previous = None
    for _surface in surfaces:
        if not text or _surface in _NO_SPACE_BEFORE or previous in _NO_SPACE_AFTER:
            text += _surface
        else:
            text += f' {_surface}'
        previous = _surface
    return text


def is_punctuation(surface: str) -> bool:
    return not any(_char.isalnum() or _char == '_' for _char in surface)


def is_content(surface: str) -> bool:
    """Returns ``True`` for tokens that are neither stopwords, punctuation nor reserved symbols."""
    return surface not in const.STOPWORDS and surface not in _RESERVED_SURFACES and not is_punctuation(surface)


def content_tokens(surfaces: Iterable[str]) -> list[str]:
    """This function drops stopwords, punctuation and reserved symbols from a surface sequence."""
    return [_surface for _surface in surfaces if is_content(_surface)]


def split_sentences(surfaces: Sequence[str]) -> list[tuple[int, int]]:
    """This function splits a surface sequence into half-open sentence spans.

    A sentence ends at (and includes) a ``.``, ``!`` or ``?`` token; trailing tokens without a terminator form
    a final sentence. An empty sequence yields no spans.

    :param surfaces: The token surfaces
    :type surfaces: list, tuple
    :returns: A list of ``(start, end)`` tuples
    """
    spans = []
    start = 0
    for _idx, _surface in enumerate(surfaces):
        if _surface in const.SENTENCE_TERMINATORS:
            spans.append((start, _idx + 1))
            start = _idx + 1
    if start < len(surfaces):
        spans.append((start, len(surfaces)))
    return spans


def sentence_texts(text: Optional[str]) -> list[str]:
    """Returns the detokenized sentences of a text."""
    seq = tokenize(text)
    return [detokenize(seq.surface[_start:_end]) for _start, _end in split_sentences(seq.surface)]


def grounding_content(instance: ArgumentInstance) -> set[str]:
    """Returns the content tokens found in the claims and evidence of an instance."""
    pool = set()
    for _text in instance.grounding_texts():
        pool.update(content_tokens(tokenize(_text).surface))
    return pool


# -----------------------------
# Vocabulary
# -----------------------------


def build_vocabulary(corpus: Iterable[str], min_count: int = 1) -> Vocabulary:
    """This function builds a vocabulary from a text corpus.

    Tokens with a frequency of at least ``min_count`` are sorted by descending frequency and then by surface,
    after the four reserved tokens.

    :param corpus: The texts to count
    :type corpus: list
    :param min_count: The minimum frequency for inclusion (``1`` by default)
    :type min_count: int
    :returns: The vocabulary
    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if isinstance(min_count, bool) or not isinstance(min_count, int) or min_count < 1:
        raise errors.exceptions.InvalidParameterError(param='min_count', value=min_count)
    counter = Counter()
    for _text in corpus:
        counter.update(tokenize(_text).surface)
    kept = sorted(((_surface, _count) for _surface, _count in counter.items() if _count >= min_count),
                  key=lambda _item: (-_item[1], _item[0]))
    tokens = const.RESERVED.ORDERED + tuple(_surface for _surface, _ in kept)
    counts = (0,) * len(const.RESERVED.ORDERED) + tuple(_count for _, _count in kept)
    logger.debug(f'Built a vocabulary of {len(tokens)} tokens (min_count={min_count})')
    return Vocabulary(tokens=tokens, counts=counts)


def corpus_texts(instances: Iterable[ArgumentInstance]) -> list[str]:
    """Returns every text carried by the instances, for vocabulary building."""
    texts = []
    for _instance in instances:
        texts.extend(_instance.texts())
    return texts


def save_vocabulary(vocab: Vocabulary, path: str) -> None:
    """This function writes a vocabulary as ``token<TAB>count`` lines with the four reserved lines first."""
    core_utils.write_text(path, vocab.serialize())
    logger.info(f'Saved a vocabulary of {len(vocab)} tokens to {path}')


def load_vocabulary(path: str) -> Vocabulary:
    """This function loads a vocabulary written by :py:func:`save_vocabulary`.

    :raises: :py:exc:`FileNotFoundError`,
             :py:exc:`argremask.errors.exceptions.DatasetParseError`
    """
    tokens, counts = [], []
    for _line_no, _line in enumerate(core_utils.read_text(path).splitlines(), start=1):
        parts = _line.split('\t')
        if len(parts) != 2 or not parts[1].lstrip('-').isdigit():
            raise errors.exceptions.DatasetParseError(file=path, line=_line_no, message='Expected token<TAB>count.')
        if _line_no <= len(const.RESERVED.ORDERED) and parts[0] != const.RESERVED.ORDERED[_line_no - 1]:
            raise errors.exceptions.DatasetParseError(
                file=path, line=_line_no, message=f"Expected the reserved token '{const.RESERVED.ORDERED[_line_no - 1]}'."
            )
        tokens.append(parts[0])
        counts.append(int(parts[1]))
    if len(tokens) < len(const.RESERVED.ORDERED):
        raise errors.exceptions.DatasetParseError(file=path, message='The reserved header is incomplete.')
    return Vocabulary(tokens=tuple(tokens), counts=tuple(counts))


# -----------------------------
# Dataset Loading
# -----------------------------


def normalize_stance(stance: Union[str, int, None]) -> str:
    """This function maps stance spellings (``pro``/``con``, ``1``/``-1``/``0``) onto support, oppose or neutral.

    :raises: :py:exc:`argremask.errors.exceptions.InvalidParameterError`
    """
    if stance is None:
        return 'neutral'
    key = str(stance).strip().lower()
    if key not in const.STANCE_ALIASES:
        raise errors.exceptions.InvalidParameterError(param='stance', value=stance)
    return const.STANCE_ALIASES[key]


def load_dataset(path: str, format: str = const.DATASET_FORMATS.CLAIMS_JSON) -> list[ArgumentInstance]:
    """This function loads argument instances from a ``claims_json`` or ``pairs_csv`` file.

    ``claims_json`` accepts a single JSON document (one object or an array of objects) or JSON-lines.
    ``pairs_csv`` rows are grouped by ``(topic, stance)`` into one instance each, every distinct key point
    becoming a claim whose evidence is the list of its arguments.

    :param path: The dataset file path
    :type path: str
    :param format: ``claims_json`` (default) or ``pairs_csv``
    :type format: str
    :returns: The instances in file order
    :raises: :py:exc:`FileNotFoundError`,
             :py:exc:`argremask.errors.exceptions.InvalidParameterError`,
             :py:exc:`argremask.errors.exceptions.DatasetParseError`,
             :py:exc:`argremask.errors.exceptions.DuplicateInstanceError`,
             :py:exc:`argremask.errors.exceptions.EmptyDatasetError`
    """
    if format not in const.DATASET_FORMATS.VALID:
        raise errors.exceptions.InvalidParameterError(param='format', value=format)
    text = core_utils.read_text(path)
    if format == const.DATASET_FORMATS.CLAIMS_JSON:
        instances = _parse_claims_json(text, path)
    else:
        instances = _parse_pairs_csv(text, path)
    if not instances:
        logger.error(f'The dataset {path} contains no records')
        raise errors.exceptions.EmptyDatasetError(file=path)
    seen = set()
    for _instance in instances:
        if _instance.id in seen:
            logger.error(f"Duplicate instance id '{_instance.id}' in {path}")
            raise errors.exceptions.DuplicateInstanceError(identifier=_instance.id)
        seen.add(_instance.id)
    logger.info(f'Loaded {len(instances)} instances from {path}')
    return instances


def _parse_claims_json(_text: str, _path: str) -> list[ArgumentInstance]:
    """This function parses ``claims_json`` content as one document or as JSON-lines."""
    if not _text.strip():
        return []
    try:
        document = json.loads(_text)
    except json.JSONDecodeError as exc:
        lines = [_line for _line in _text.splitlines() if _line.strip()]
        if len(lines) <= 1:
            raise errors.exceptions.DatasetParseError(file=_path, line=exc.lineno, message=exc.msg) from exc
        records = []
        for _line_no, _line in enumerate(_text.splitlines(), start=1):
            if not _line.strip():
                continue
            try:
                records.append((_line_no, json.loads(_line)))
            except json.JSONDecodeError as line_exc:
                raise errors.exceptions.DatasetParseError(file=_path, line=_line_no, message=line_exc.msg) from line_exc
        return [_record_to_instance(_record, _path, _number, use_line=True) for _number, _record in records]
    if isinstance(document, dict):
        document = [document]
    if not isinstance(document, list):
        raise errors.exceptions.DatasetParseError(file=_path, record=1, message='Expected an object or an array of objects.')
    return [_record_to_instance(_record, _path, _number) for _number, _record in enumerate(document, start=1)]


def _record_to_instance(_record, _path: str, _number: int, use_line: bool = False) -> ArgumentInstance:
    """This function converts one ``claims_json`` record into an :py:class:`ArgumentInstance`."""
    fields = const.DATASET_FORMATS
    location = {'line': _number} if use_line else {'record': _number}
    if not isinstance(_record, dict):
        raise errors.exceptions.DatasetParseError(file=_path, message='Expected a JSON object.', **location)
    raw_claims = _record.get(fields.CLAIMS)
    if not isinstance(raw_claims, list) or not raw_claims:
        raise errors.exceptions.DatasetParseError(file=_path, message="The 'claims' list is missing or empty.", **location)
    try:
        claims = []
        for _raw in raw_claims:
            if not isinstance(_raw, dict):
                raise errors.exceptions.InvalidParameterError(param='claims', message='each claim must be an object')
            evidence = _raw.get(fields.EVIDENCE) or []
            if not isinstance(evidence, list) or not all(isinstance(_item, str) for _item in evidence):
                raise errors.exceptions.InvalidParameterError(param='evidence', message='evidence must be a list of strings')
            claims.append(ClaimUnit(claim_text=_raw.get(fields.CLAIM, _raw.get('claim_text', '')), evidence=tuple(evidence)))
        summary = _record.get(fields.SUMMARY, _record.get('reference_summary'))
        return ArgumentInstance(
            id=str(_record.get(fields.ID, _number)),
            topic=str(_record.get(fields.TOPIC, '')),
            stance=_record.get(fields.STANCE),
            claims=tuple(claims),
            reference_summary=summary if summary is None else str(summary),
        )
    except errors.exceptions.InvalidParameterError as exc:
        raise errors.exceptions.DatasetParseError(file=_path, message=str(exc), **location) from exc


def _parse_pairs_csv(_text: str, _path: str) -> list[ArgumentInstance]:
    """This function groups ``topic,stance,key_point,argument`` rows into instances."""
    fields = const.DATASET_FORMATS
    reader = csv.DictReader(io.StringIO(_text))
    if reader.fieldnames is None:
        return []
    missing = [_name for _name in fields.CSV_HEADER if _name not in reader.fieldnames]
    if missing:
        raise errors.exceptions.DatasetParseError(file=_path, line=1, message=f'Missing header column(s): {", ".join(missing)}')
    groups: dict[tuple[str, str], dict[str, list[str]]] = {}
    for _row in reader:
        line_no = reader.line_num
        if any(_row.get(_name) is None for _name in fields.CSV_HEADER):
            raise errors.exceptions.DatasetParseError(file=_path, line=line_no, message='The row has too few columns.')
        try:
            stance = normalize_stance(_row[fields.STANCE])
        except errors.exceptions.InvalidParameterError as exc:
            raise errors.exceptions.DatasetParseError(file=_path, line=line_no, message=str(exc)) from exc
        key_point = _row[fields.KEY_POINT].strip()
        if not key_point:
            raise errors.exceptions.DatasetParseError(file=_path, line=line_no, message='The key point is empty.')
        claims = groups.setdefault((_row[fields.TOPIC].strip(), stance), {})
        evidence = claims.setdefault(key_point, [])
        if _row[fields.ARGUMENT].strip():
            evidence.append(_row[fields.ARGUMENT].strip())
    return [
        ArgumentInstance(
            id=pair_instance_id(_topic, _stance),
            topic=_topic,
            stance=_stance,
            claims=tuple(ClaimUnit(claim_text=_kp, evidence=tuple(_ev)) for _kp, _ev in _claims.items()),
        )
        for (_topic, _stance), _claims in groups.items()
    ]


def pair_instance_id(topic: str, stance: str) -> str:
    """Returns the stable identifier given to a ``(topic, stance)`` group of pair rows."""
    return core_utils.sha256_hex(f'{topic}\t{stance}')[:12]


def dump_dataset(instances: Sequence[ArgumentInstance], path: str, format: str = const.DATASET_FORMATS.CLAIMS_JSON) -> None:
    """This function writes instances as ``claims_json`` (JSON-lines) or ``pairs_csv``.

    .. note:: The ``pairs_csv`` format cannot carry reference summaries; a claim without evidence is written as a
              row with an empty argument.
    """
    if format not in const.DATASET_FORMATS.VALID:
        raise errors.exceptions.InvalidParameterError(param='format', value=format)
    if format == const.DATASET_FORMATS.CLAIMS_JSON:
        content = ''.join(f'{core_utils.dump_json(_instance.to_record())}\n' for _instance in instances)
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(const.DATASET_FORMATS.CSV_HEADER)
        for _instance in instances:
            for _claim in _instance.claims:
                for _argument in _claim.evidence or ('',):
                    writer.writerow((_instance.topic, _instance.stance, _claim.claim_text, _argument))
        content = buffer.getvalue()
    core_utils.write_text(path, content)
    logger.info(f'Wrote {len(instances)} instances to {path}')


def split_by_topic_hash(
    instances: Sequence[ArgumentInstance],
    test_fraction: float = const.DEFAULT_TOPIC_TEST_FRACTION,
    salt: str = '',
) -> tuple[list[ArgumentInstance], list[ArgumentInstance]]:
    """This function splits instances into train and test sets, keeping every topic on one side.

    Topics are ordered by the SHA-256 of ``salt + topic`` and the first ``round(test_fraction * topics)`` go to
    the test side (at least one when both sides can be non-empty). Instance order is preserved within each side.

    :param instances: The instances to split
    :type instances: list
    :param test_fraction: The fraction of topics held out (``3/31`` by default)
    :type test_fraction: float
    :param salt: A salt that reshuffles the assignment
    :type salt: str
    :returns: The ``(train, test)`` instance lists
    """
    if not 0.0 <= test_fraction <= 1.0:
        raise errors.exceptions.InvalidParameterError(param='test_fraction', value=test_fraction)
    topics = sorted({_instance.topic for _instance in instances}, key=lambda _topic: core_utils.sha256_hex(f'{salt}{_topic}'))
    n_test = core_utils.round_half_up(test_fraction * len(topics))
    if 0.0 < test_fraction < 1.0 and len(topics) >= 2:
        n_test = min(max(n_test, 1), len(topics) - 1)
    test_topics = set(topics[:n_test])
    train = [_instance for _instance in instances if _instance.topic not in test_topics]
    test = [_instance for _instance in instances if _instance.topic in test_topics]
    return train, test


# -----------------------------
# Synthetic Corpus
# -----------------------------

_ONSETS = ('b', 'd', 'f', 'g', 'k', 'l', 'm', 'n', 'p', 'r', 's', 't', 'v', 'z', 'sh')
_NUCLEI = ('a', 'e', 'i', 'o', 'u')


class _WordSource:
    """Draws pronounceable pseudo-words that never repeat within one source."""

    def __init__(self, rng: np.random.Generator):
        self._rng = rng
        self._used: set[str] = set()

    def draw(self, count: int = 1) -> list[str]:
        words = []
        while len(words) < count:
            syllables = self._rng.integers(0, len(_ONSETS), size=3), self._rng.integers(0, len(_NUCLEI), size=3)
            word = ''.join(_ONSETS[_on] + _NUCLEI[_nu] for _on, _nu in zip(*syllables))
            if word in self._used or word in const.STOPWORDS:
                continue
            self._used.add(word)
            words.append(word)
        return words


def _statement(_words: Sequence[str]) -> str:
    return f'{_words[0]} {_words[1]} is {" ".join(_words[2:])}'


def synthetic_corpus(
    n: int,
    seed: int = const.DEFAULT_SEED,
    claims_per_instance: int = 2,
    evidence_per_claim: int = 2,
) -> list[ArgumentInstance]:
    """This function builds seeded toy argument instances whose summaries are grounded in their evidence.

    Every instance draws its own pseudo-words, so sentences from one instance share no content with another.
    Each summary sentence is assembled from one claim's evidence words (never its claim words) and no content
    token repeats within a summary.

    :param n: The number of instances
    :type n: int
    :param seed: The run seed (the ``synthetic`` sub-stream is used)
    :type seed: int
    :param claims_per_instance: Claims (and summary sentences) per instance
    :type claims_per_instance: int
    :param evidence_per_claim: Evidence texts per claim
    :type evidence_per_claim: int
    :returns: The synthetic instances
    """
    if n < 0 or claims_per_instance < 1 or evidence_per_claim < 1:
        raise errors.exceptions.InvalidParameterError('The synthetic corpus sizes must be positive.')
    rng = core_utils.get_rng(seed, const.RNG_STREAMS.SYNTHETIC)
    words = _WordSource(rng)
    stances = ('support', 'oppose', 'neutral')
    instances = []
    for _idx in range(n):
        claims, sentences = [], []
        for _ in range(claims_per_instance):
            evidence_words = [words.draw(4) for _ in range(evidence_per_claim)]
            claims.append(ClaimUnit(claim_text=_statement(words.draw(3)),
                                    evidence=tuple(f'{_statement(_ev)} .' for _ev in evidence_words)))
            pool = [_word for _ev in evidence_words for _word in _ev]
            chosen = rng.choice(len(pool), size=3, replace=False)
            sentences.append(f'{_statement([pool[_pos] for _pos in chosen])} .')
        instances.append(
            ArgumentInstance(
                id=f'syn-{_idx:04d}',
                topic=f'topic {" ".join(words.draw(2))}',
                stance=stances[int(rng.integers(0, len(stances)))],
                claims=tuple(claims),
                reference_summary=' '.join(sentences),
            )
        )
    logger.debug(f'Built a synthetic corpus of {n} instances (seed={seed})')
    return instances


def inject_off_topic(instance: ArgumentInstance, rng: np.random.Generator, length: int = 3) -> str:
    """This function returns the reference summary with one off-topic sentence appended.

    The off-topic sentence is built from pseudo-words that are vanishingly unlikely to occur in any instance
    (a ``x``-prefixed alphabet), so its content has no overlap with the claims and evidence.

    :param instance: The instance whose reference summary is extended
    :type instance: class[argremask.corpus.ArgumentInstance]
    :param rng: The random stream used to draw the off-topic words
    :type rng: class[numpy.random.Generator]
    :param length: Number of content words in the off-topic sentence (``3`` by default)
    :type length: int
    :returns: The summary text with the off-topic sentence
    :raises: :py:exc:`argremask.errors.exceptions.MissingReferenceError`
    """
    if instance.reference_summary is None:
        raise errors.exceptions.MissingReferenceError(identifier=instance.id)
    grounded = grounding_content(instance) | set(content_tokens(tokenize(instance.reference_summary).surface))
    length = max(length, 3)
    off_topic = [f'x{_word}' for _word in _WordSource(rng).draw(length + 1)]
    off_topic = [_word for _word in off_topic if _word not in grounded][:length]
    return f'{instance.reference_summary.rstrip()} {_statement(off_topic)} .'
