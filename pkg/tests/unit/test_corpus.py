# -*- coding: utf-8 -*-
# bandit: skip=B101
"""
:Module:         tests.unit.test_corpus
:Synopsis:       This module is used by pytest to test tokenization, vocabularies and dataset loading
:Created By:     Jeff Shurtliff
:Last Modified:  Jeff Shurtliff
:Modified Date:  18 Oct 2026
"""

import json

import pytest

from argremask import constants as const
from argremask import corpus, errors
from argremask.utils import core_utils
from tests.unit import resources


def test_tokenize_splits_words_and_punctuation():
    """This function tests that text is lowercased and split into word and punctuation tokens."""
    seq = corpus.tokenize('Vaccines are safe.')
    assert seq.surface == ('vaccines', 'are', 'safe', '.')
    assert seq.ids == (const.RESERVED.UNK_ID,) * 4


def test_tokenize_keeps_hyphenated_words_and_contractions():
    """This function tests that hyphenated words and contractions stay whole."""
    seq = corpus.tokenize("Guillain-Barré Syndrome doesn't spread (rarely).")
    assert seq.surface == ('guillain-barré', 'syndrome', "doesn't", 'spread', '(', 'rarely', ')', '.')


@pytest.mark.parametrize('text', ['', None])
def test_tokenize_empty_text_yields_empty_sequence(text):
    """This function tests that empty input produces an empty token sequence."""
    assert len(corpus.tokenize(text)) == 0


def test_tokenize_maps_surfaces_through_vocabulary():
    """This function tests that known surfaces receive their ids and unknown ones the UNK id."""
    vocab = corpus.build_vocabulary(['vaccines are safe'])
    seq = corpus.tokenize('Vaccines are dangerous', vocab)
    assert seq.ids[:2] == (vocab.id_of('vaccines'), vocab.id_of('are'))
    assert seq.ids[2] == const.RESERVED.UNK_ID


def test_detokenize_attaches_punctuation():
    """This function tests that punctuation is attached to its neighbours when joining tokens."""
    assert corpus.detokenize(['risks', '(', 'rare', ')', ',', 'mostly', '.']) == 'risks (rare), mostly.'


def test_build_vocabulary_orders_reserved_then_frequency():
    """This function tests the vocabulary layout for the corpus ``a a b``."""
    vocab = corpus.build_vocabulary(['a a b'])
    assert vocab.tokens == const.RESERVED.ORDERED + ('a', 'b')
    assert vocab.counts == (0, 0, 0, 0, 2, 1)


def test_build_vocabulary_applies_min_count():
    """This function tests that tokens below the minimum frequency are dropped."""
    vocab = corpus.build_vocabulary(['a a b'], min_count=2)
    assert vocab.tokens == const.RESERVED.ORDERED + ('a',)
    assert vocab.id_of('b') == const.RESERVED.UNK_ID


@pytest.mark.parametrize('min_count', [0, -1, True])
def test_build_vocabulary_rejects_invalid_min_count(min_count):
    """This function tests that a minimum count below one is rejected."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        corpus.build_vocabulary(['a a b'], min_count=min_count)


def test_vocabulary_treats_reserved_surfaces_as_unknown():
    """This function tests that a literal reserved surface in text never maps to its reserved id."""
    vocab = corpus.build_vocabulary(['a b'])
    assert vocab.id_of(const.RESERVED.MASK) == const.RESERVED.UNK_ID
    assert const.RESERVED.EOS not in vocab
    assert 'a' in vocab


def test_vocabulary_file_preserves_digest(tmp_path):
    """This function tests that a saved vocabulary loads back with the same hash."""
    vocab = corpus.build_vocabulary([resources.VACCINATION_SUMMARY])
    path = tmp_path / 'vocab.tsv'
    corpus.save_vocabulary(vocab, str(path))
    assert path.read_text(encoding='utf-8').splitlines()[0] == f'{const.RESERVED.MASK}\t0'
    assert corpus.load_vocabulary(str(path)).digest() == vocab.digest()


def test_load_vocabulary_rejects_missing_reserved_header(tmp_path):
    """This function tests that a vocabulary file must start with the reserved tokens."""
    path = tmp_path / 'vocab.tsv'
    path.write_text('a\t2\nb\t1\n', encoding='utf-8')
    with pytest.raises(errors.exceptions.DatasetParseError, match='line 1'):
        corpus.load_vocabulary(str(path))


def test_split_sentences_includes_terminators_and_trailing_text():
    """This function tests sentence spans with a terminated sentence followed by unterminated text."""
    surfaces = ('a', 'b', '.', 'c', 'd')
    assert corpus.split_sentences(surfaces) == [(0, 3), (3, 5)]
    assert corpus.split_sentences(()) == []


def test_content_tokens_drop_stopwords_and_punctuation():
    """This function tests that content tokens exclude stopwords, punctuation and reserved symbols."""
    surfaces = ('the', 'vaccine', 'is', 'not', 'safe', '.', const.RESERVED.EOS)
    assert corpus.content_tokens(surfaces) == ['vaccine', 'safe']


@pytest.mark.parametrize(
    ('raw', 'expected'),
    [('pro', 'support'), ('CON', 'oppose'), ('-1', 'oppose'), (1, 'support'), ('0', 'neutral'), (None, 'neutral')],
)
def test_normalize_stance_accepts_aliases(raw, expected):
    """This function tests the stance spellings accepted by the loader."""
    assert corpus.normalize_stance(raw) == expected


def test_normalize_stance_rejects_unknown_value():
    """This function tests that an unknown stance raises an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        corpus.normalize_stance('maybe')


def test_argument_instance_requires_claims():
    """This function tests that an instance without claims is rejected."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        corpus.ArgumentInstance(id='x', topic='t', stance='support', claims=())


def test_load_dataset_reads_claims_json_document(tmp_path):
    """This function tests loading a single ``claims_json`` object."""
    path = tmp_path / 'one.json'
    path.write_text(json.dumps(resources.vaccination_record()), encoding='utf-8')
    (instance,) = corpus.load_dataset(str(path))
    assert instance == resources.vaccination_instance()
    assert len(instance.claims) == 2
    assert instance.claims[1].evidence[0] == 'The First Amendment protects religious freedom'


def test_load_dataset_reads_json_lines(tmp_path):
    """This function tests loading ``claims_json`` as JSON-lines."""
    second = dict(resources.vaccination_record(), id='second')
    path = resources.write_jsonl(tmp_path / 'many.jsonl', [resources.vaccination_record(), second])
    instances = corpus.load_dataset(path)
    assert [_instance.id for _instance in instances] == ['vaccination-oppose', 'second']


def test_load_dataset_reports_the_failing_line(tmp_path):
    """This function tests that a malformed JSON-lines record names its line number."""
    path = tmp_path / 'bad.jsonl'
    path.write_text(json.dumps(resources.vaccination_record()) + '\n{"id": \n', encoding='utf-8')
    with pytest.raises(errors.exceptions.DatasetParseError, match='line 2'):
        corpus.load_dataset(str(path))


def test_load_dataset_rejects_record_without_claims(tmp_path):
    """This function tests that a record with an empty claims list raises a parse error."""
    path = tmp_path / 'no_claims.json'
    path.write_text(json.dumps({'id': 'x', 'topic': 't', 'stance': 'pro', 'claims': []}), encoding='utf-8')
    with pytest.raises(errors.exceptions.DatasetParseError, match='record 1'):
        corpus.load_dataset(str(path))


def test_load_dataset_rejects_duplicate_ids(tmp_path):
    """This function tests that two records with one identifier are rejected."""
    path = resources.write_jsonl(tmp_path / 'dupes.jsonl', [resources.vaccination_record()] * 2)
    with pytest.raises(errors.exceptions.DuplicateInstanceError):
        corpus.load_dataset(path)


def test_load_dataset_rejects_empty_file(tmp_path):
    """This function tests that an empty dataset raises the empty dataset exception."""
    path = tmp_path / 'empty.json'
    path.write_text('', encoding='utf-8')
    with pytest.raises(errors.exceptions.EmptyDatasetError, match='empty dataset'):
        corpus.load_dataset(str(path))


def test_load_dataset_groups_pairs_csv_rows(tmp_path):
    """This function tests that three pair rows of one topic and stance become one instance with three claims."""
    path = tmp_path / 'pairs.csv'
    path.write_text(
        'topic,stance,key_point,argument\n'
        'Cities should ban cars,1,Cars pollute,Exhaust harms lungs\n'
        'Cities should ban cars,1,Cars are loud,Traffic noise disturbs sleep\n'
        'Cities should ban cars,1,Cars are dangerous,Crashes injure pedestrians\n',
        encoding='utf-8',
    )
    (instance,) = corpus.load_dataset(str(path), const.DATASET_FORMATS.PAIRS_CSV)
    assert instance.stance == 'support'
    assert [_claim.claim_text for _claim in instance.claims] == ['Cars pollute', 'Cars are loud', 'Cars are dangerous']
    assert instance.claims[0].evidence == ('Exhaust harms lungs',)
    assert instance.id == corpus.pair_instance_id('Cities should ban cars', 'support')


def test_load_dataset_rejects_pairs_csv_without_header(tmp_path):
    """This function tests that a pairs file missing a header column raises a parse error."""
    path = tmp_path / 'pairs.csv'
    path.write_text('topic,stance,argument\nt,1,a\n', encoding='utf-8')
    with pytest.raises(errors.exceptions.DatasetParseError, match='key_point'):
        corpus.load_dataset(str(path), const.DATASET_FORMATS.PAIRS_CSV)


def test_load_dataset_rejects_unknown_format(tmp_path):
    """This function tests that an unsupported format name raises an exception."""
    with pytest.raises(errors.exceptions.InvalidParameterError):
        corpus.load_dataset(str(tmp_path / 'any.json'), 'xml')


def test_dump_dataset_writes_loadable_claims_json(tmp_path):
    """This function tests that dumped instances load back unchanged."""
    path = tmp_path / 'dump.jsonl'
    corpus.dump_dataset([resources.vaccination_instance()], str(path))
    assert corpus.load_dataset(str(path)) == [resources.vaccination_instance()]


def test_split_by_topic_hash_keeps_topics_together(synthetic_instances):
    """This function tests that the topic split is deterministic and never divides a topic."""
    train, test = corpus.split_by_topic_hash(synthetic_instances, test_fraction=0.25)
    assert len(train) + len(test) == len(synthetic_instances)
    assert test
    assert not {_i.topic for _i in train} & {_i.topic for _i in test}
    assert corpus.split_by_topic_hash(synthetic_instances, test_fraction=0.25) == (train, test)


def test_synthetic_corpus_is_seeded_and_grounded():
    """This function tests that synthetic summaries reuse evidence words and depend only on the seed."""
    first = corpus.synthetic_corpus(5, seed=3)
    assert first == corpus.synthetic_corpus(5, seed=3)
    assert first != corpus.synthetic_corpus(5, seed=4)
    for _instance in first:
        summary_content = set(corpus.content_tokens(corpus.tokenize(_instance.reference_summary).surface))
        assert summary_content <= corpus.grounding_content(_instance)


def test_inject_off_topic_appends_ungrounded_sentence(synthetic_instances):
    """This function tests that the appended sentence shares no content with the instance."""
    instance = synthetic_instances[0]
    noisy = corpus.inject_off_topic(instance, core_utils.get_rng(0, 'synthetic', 'test'))
    assert noisy.startswith(instance.reference_summary)
    extra = corpus.tokenize(noisy[len(instance.reference_summary):]).surface
    assert corpus.content_tokens(extra)
    assert not set(corpus.content_tokens(extra)) & corpus.grounding_content(instance)
