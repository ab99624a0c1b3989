import json

import pytest

from mlplib.error import CorpusError
from mlplib.nlp import FORMULA, LINK, PUNCTUATION, WORD, SentenceToken
from mlplib.patterns import PatternRelation
from mlplib.ranking import DefinitionCandidate
from mlplib.records import (RelationRecord, format_tagged, from_candidate,
    from_pattern, parse_tagged, read_records, read_tagged, write_records)


def test_mlp_record_json():
    c = DefinitionCandidate('E', 'energy', 1, 2, tf=0.5,
        score=0.95238095238, doc_id='Mass', sentence_index=3)
    r = from_candidate(c)
    assert r.method == 'mlp'
    assert not r.is_pattern
    assert r.pattern_id is None
    assert r.to_json() == (
        '{"doc_id": "Mass", "identifier": "E", "description": "energy", '
        '"method": "mlp", "score": 0.952381, "sentence_index": 3, '
        '"delta": 1, "n": 2}')


def test_pattern_record_json():
    p = PatternRelation('Wave', u'λ', 'wavelength', 5, 7, 2)
    r = from_pattern(p)
    assert r.method == 'pattern:5'
    assert r.is_pattern
    assert r.pattern_id == 5
    line = r.to_json()
    assert u'"λ"' in line
    assert list(json.loads(line)) == ['doc_id', 'identifier', 'description',
        'method', 'sentence_index']


def test_read_write(tmp_path):
    records = [
        RelationRecord('d', 'x', 'position', 'mlp', 0, 0.5, 1, 1),
        RelationRecord('d', 'x', 'position', 'pattern:1', 0),
        RelationRecord('e', u'ρ', u'density', 'mlp', 4, 0.25, 3, 2),
    ]
    fn = tmp_path / 'rel.jsonl'
    with open(fn, 'w', encoding='utf-8') as f:
        write_records(records, f)
    assert read_records(fn) == records


def test_read_errors(tmp_path):
    with pytest.raises(CorpusError):
        read_records(tmp_path / 'missing.jsonl')

    fn = tmp_path / 'bad.jsonl'
    fn.write_text('{"doc_id": "d"}\n', encoding='utf-8')
    with pytest.raises(CorpusError) as excinfo:
        read_records(fn)
    assert 'line 1' in str(excinfo.value)

    fn.write_text('\n{nope\n', encoding='utf-8')
    with pytest.raises(CorpusError) as excinfo:
        read_records(fn)
    assert 'line 2' in str(excinfo.value)


tokens = [
    SentenceToken('The', 'DT', WORD),
    SentenceToken('speed of light', 'NN', LINK),
    SentenceToken(u'⟨MATH:2⟩', 'SYM', FORMULA, math_index=2),
    SentenceToken('a|b', 'NN', WORD),
    SentenceToken('back\\slash', 'NN', WORD),
    SentenceToken('.', 'PUNCT', PUNCTUATION),
]


def test_tagged_line():
    line = format_tagged('Doc', 4, tokens)
    assert line == (u'Doc\t4\tThe|DT|word speed\\ of\\ light|NN|link '
        u'⟨MATH:2⟩|SYM|formula_placeholder a\\|b|NN|word '
        u'back\\\\slash|NN|word .|PUNCT|punctuation')
    assert parse_tagged(line) == ('Doc', 4, tokens)


def test_tagged_errors():
    with pytest.raises(CorpusError):
        parse_tagged('no tabs here')
    with pytest.raises(CorpusError):
        parse_tagged('d\tx\ta|DT|word')
    with pytest.raises(CorpusError):
        parse_tagged('d\t0\ta|DT|verb')
    with pytest.raises(CorpusError):
        parse_tagged('d\t0\tx|SYM|formula_placeholder')


def test_read_tagged(tmp_path):
    fn = tmp_path / 'tagged.tsv'
    with open(fn, 'w', encoding='utf-8') as f:
        f.write(format_tagged('b', 1, tokens[3:]) + '\n')
        f.write(format_tagged('b', 0, tokens[:3]) + '\n')
        f.write('\n')
        f.write(format_tagged('a', 0, tokens) + '\n')
    assert read_tagged(fn) == {'a': [tokens], 'b': [tokens[:3], tokens[3:]]}

    with pytest.raises(CorpusError):
        read_tagged(tmp_path / 'missing.tsv')
